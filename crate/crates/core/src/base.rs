//! Finite base monoids `M`, the zero-adjoined monoid `M₀`, tuples over `M₀`
//! and the action of partial bijections on them.
//!
//! Elements of `M` are indices `0..size`. Elements of `M₀` are indices
//! `0..=size` where `0` is the adjoined zero and `k >= 1` stands for the base
//! element `k - 1`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pperm::PartialBijection;

/// A monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMonoid")]
pub struct FiniteMonoid {
    size: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawMonoid {
    size: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawMonoid> for FiniteMonoid {
    type Error = Error;

    fn try_from(raw: RawMonoid) -> Result<Self> {
        FiniteMonoid::from_table(raw.size, raw.identity, raw.table)
    }
}

impl FiniteMonoid {
    /// Validates shape, identity laws and associativity.
    pub fn from_table(size: usize, identity: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidMonoid("a monoid has at least one element".into()));
        }
        if identity >= size {
            return Err(Error::InvalidMonoid(format!("identity {identity} out of range")));
        }
        if table.len() != size || table.iter().any(|row| row.len() != size) {
            return Err(Error::InvalidMonoid(format!("table is not {size}x{size}")));
        }
        if table.iter().flatten().any(|&x| x >= size) {
            return Err(Error::InvalidMonoid("table entry out of range".into()));
        }
        for a in 0..size {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::InvalidMonoid(format!(
                    "identity law fails at element {a}"
                )));
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab = table[a][b];
                for c in 0..size {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidMonoid(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            size,
            identity,
            table,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The cyclic group `C_k`, element `i` standing for `g^i`.
    pub fn cyclic(k: usize) -> Self {
        let table = (0..k)
            .map(|a| (0..k).map(|b| (a + b) % k).collect())
            .collect();
        Self {
            size: k,
            identity: 0,
            table,
        }
    }

    /// The two-element semilattice `{1, e}` with `e² = e`; `1` is index 0.
    pub fn semilattice() -> Self {
        Self {
            size: 2,
            identity: 0,
            table: vec![vec![0, 1], vec![1, 1]],
        }
    }

    /// The full transformation monoid on `k` points, composing left to right.
    pub fn transformations(k: usize) -> Self {
        let maps: Vec<Vec<usize>> = all_functions(k);
        let index: HashMap<Vec<usize>, usize> =
            maps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let identity = index[&(0..k).collect::<Vec<_>>()];
        let table = maps
            .iter()
            .map(|f| {
                maps.iter()
                    .map(|g| index[&f.iter().map(|&x| g[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self {
            size: maps.len(),
            identity,
            table,
        }
    }

    /// The symmetric group on 3 points, elements in lexicographic order of
    /// their image lists (identity first), composing left to right.
    pub fn symmetric3() -> Self {
        let perms: Vec<Vec<usize>> = all_functions(3)
            .into_iter()
            .filter(|f| {
                let mut g = f.clone();
                g.sort_unstable();
                g == vec![0, 1, 2]
            })
            .collect();
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let table = perms
            .iter()
            .map(|f| {
                perms
                    .iter()
                    .map(|g| index[&f.iter().map(|&x| g[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self {
            size: 6,
            identity: 0,
            table,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

fn all_functions(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k).map(move |x| {
                    let mut f = prefix.clone();
                    f.push(x);
                    f
                })
            })
            .collect();
    }
    out
}

/// `M₀`: `M` with a new multiplicative zero at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroExtended {
    base: FiniteMonoid,
}

pub const ZERO: u16 = 0;

impl ZeroExtended {
    pub fn base(&self) -> &FiniteMonoid {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size + 1
    }

    /// Index of the identity of `M₀`.
    pub fn one(&self) -> u16 {
        self.lift(self.base.identity)
    }

    /// Index in `M₀` of the base element `a`.
    pub fn lift(&self, a: usize) -> u16 {
        (a + 1) as u16
    }

    /// Base element behind a nonzero index.
    pub fn lower(&self, x: u16) -> Option<usize> {
        (x != ZERO).then(|| x as usize - 1)
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == ZERO || b == ZERO {
            ZERO
        } else {
            self.lift(self.base.mul(a as usize - 1, b as usize - 1))
        }
    }

    /// The full multiplication table of `M₀`.
    pub fn table(&self) -> Vec<Vec<u16>> {
        (0..self.size() as u16)
            .map(|a| (0..self.size() as u16).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// `M₀` as a plain finite monoid.
    pub fn as_monoid(&self) -> FiniteMonoid {
        let table = self
            .table()
            .into_iter()
            .map(|row| row.into_iter().map(usize::from).collect())
            .collect();
        FiniteMonoid {
            size: self.size(),
            identity: self.one() as usize,
            table,
        }
    }
}

pub fn adjoin_zero(monoid: &FiniteMonoid) -> ZeroExtended {
    ZeroExtended {
        base: monoid.clone(),
    }
}

/// An `n`-tuple over `M₀`; entry `0` is the zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MTuple {
    entries: Vec<u16>,
}

impl MTuple {
    pub fn new(entries: Vec<u16>) -> Self {
        Self { entries }
    }

    pub fn empty() -> Self {
        Self { entries: vec![] }
    }

    /// `𝟙_n`.
    pub fn ones(m0: &ZeroExtended, n: usize) -> Self {
        Self {
            entries: vec![m0.one(); n],
        }
    }

    /// `𝟙_A`: the tuple over `{0, 1}` with support `A`.
    pub fn ones_on(m0: &ZeroExtended, n: usize, support: &[usize]) -> Result<Self> {
        let mut entries = vec![ZERO; n];
        for &i in support {
            if i == 0 || i > n {
                return Err(Error::InvalidParams(format!("position {i} outside 1..{n}")));
            }
            entries[i - 1] = m0.one();
        }
        Ok(Self { entries })
    }

    /// `a^{(i)}`: `a` at position `i`, `1` elsewhere.
    pub fn single(m0: &ZeroExtended, n: usize, i: usize, a: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidParams(format!("position {i} outside 1..{n}")));
        }
        check_element(m0, a)?;
        let mut entries = vec![m0.one(); n];
        entries[i - 1] = m0.lift(a);
        Ok(Self { entries })
    }

    /// `a^{(i;j)}`: `a` at `i`, `0` at `j`, `1` elsewhere.
    pub fn single_with_zero(
        m0: &ZeroExtended,
        n: usize,
        i: usize,
        j: usize,
        a: usize,
    ) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidParams(format!(
                "a^({i};{j}) needs distinct positions in 1..{n}"
            )));
        }
        check_element(m0, a)?;
        let mut entries = vec![m0.one(); n];
        entries[i - 1] = m0.lift(a);
        entries[j - 1] = ZERO;
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at the 1-based position `i`.
    pub fn get(&self, i: usize) -> u16 {
        self.entries[i - 1]
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    /// 1-based positions holding nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != ZERO)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Componentwise product in `M₀`.
    pub fn mul(&self, other: &MTuple, m0: &ZeroExtended) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| m0.mul(a, b))
                .collect(),
        })
    }

    /// Concatenation `self ⊕ other`.
    pub fn tensor(&self, other: &MTuple) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self { entries }
    }
}

fn check_element(m0: &ZeroExtended, a: usize) -> Result<()> {
    if a >= m0.base().size() {
        return Err(Error::InvalidParams(format!("monoid element {a} out of range")));
    }
    Ok(())
}

pub fn tuple_mul(a: &MTuple, b: &MTuple, m0: &ZeroExtended) -> Result<MTuple> {
    a.mul(b, m0)
}

pub fn tuple_tensor(a: &MTuple, b: &MTuple) -> MTuple {
    a.tensor(b)
}

/// `ᵅa`: slides the entries of `a` up the edges of `α`, zero off the domain.
pub fn act(alpha: &PartialBijection, a: &MTuple) -> Result<MTuple> {
    if a.len() != alpha.target_size() {
        return Err(Error::LengthMismatch {
            left: alpha.target_size(),
            right: a.len(),
        });
    }
    let entries = alpha
        .images()
        .map(|j| if j == 0 { ZERO } else { a.entries[j - 1] })
        .collect();
    Ok(MTuple { entries })
}

/// A monoid presentation `⟨X_M | R_M⟩`, optionally with letter values in a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePresentation {
    alphabet: Vec<String>,
    relations: Vec<(Vec<u16>, Vec<u16>)>,
    evaluation: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    alphabet: Vec<String>,
    relations: Vec<(Vec<String>, Vec<String>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    evaluation: Option<Vec<usize>>,
}

impl Serialize for BasePresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let name = |w: &Vec<u16>| w.iter().map(|&x| self.alphabet[x as usize].clone()).collect();
        RawPresentation {
            alphabet: self.alphabet.clone(),
            relations: self.relations.iter().map(|(u, v)| (name(u), name(v))).collect(),
            evaluation: self.evaluation.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasePresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPresentation::deserialize(d)?;
        let lookup = |names: &[String]| -> Result<Vec<u16>> {
            names
                .iter()
                .map(|s| {
                    raw.alphabet
                        .iter()
                        .position(|a| a == s)
                        .map(|i| i as u16)
                        .ok_or_else(|| {
                            Error::InvalidPresentation(format!("unknown letter {s:?}"))
                        })
                })
                .collect()
        };
        let relations = raw
            .relations
            .iter()
            .map(|(u, v)| Ok((lookup(u)?, lookup(v)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        BasePresentation::new(raw.alphabet.clone(), relations, raw.evaluation.clone())
            .map_err(serde::de::Error::custom)
    }
}

/// Whether `name` may be used as a base letter without clashing with the
/// generator syntax.
pub fn is_valid_letter_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !first.is_ascii_lowercase()
        || !name
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
    {
        return false;
    }
    if matches!(name, "e" | "o" | "p") {
        return false;
    }
    let digit_after = |prefix: &str| {
        name.strip_prefix(prefix)
            .is_some_and(|rest| rest.starts_with(|c: char| c.is_ascii_digit()))
    };
    !["s", "e", "i", "f", "lam", "rho"]
        .iter()
        .any(|p| digit_after(p))
}

impl BasePresentation {
    pub fn new(
        alphabet: Vec<String>,
        relations: Vec<(Vec<u16>, Vec<u16>)>,
        evaluation: Option<Vec<usize>>,
    ) -> Result<Self> {
        for (i, name) in alphabet.iter().enumerate() {
            if !is_valid_letter_name(name) {
                return Err(Error::InvalidPresentation(format!(
                    "letter name {name:?} is not allowed"
                )));
            }
            if alphabet[..i].contains(name) {
                return Err(Error::InvalidPresentation(format!("duplicate letter {name:?}")));
            }
        }
        let k = alphabet.len() as u16;
        if relations.iter().flat_map(|(u, v)| u.iter().chain(v)).any(|&x| x >= k) {
            return Err(Error::InvalidPresentation("relation uses an unknown letter".into()));
        }
        if let Some(ev) = &evaluation {
            if ev.len() != alphabet.len() {
                return Err(Error::InvalidPresentation(
                    "evaluation must give one element per letter".into(),
                ));
            }
        }
        Ok(Self {
            alphabet,
            relations,
            evaluation,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letter_name(&self, x: u16) -> &str {
        &self.alphabet[x as usize]
    }

    pub fn letter_index(&self, name: &str) -> Option<u16> {
        self.alphabet.iter().position(|a| a == name).map(|i| i as u16)
    }

    pub fn relations(&self) -> &[(Vec<u16>, Vec<u16>)] {
        &self.relations
    }

    pub fn evaluation(&self) -> Option<&[usize]> {
        self.evaluation.as_deref()
    }

    /// Value of a word in `monoid`, given the evaluation.
    pub fn evaluate(&self, monoid: &FiniteMonoid, word: &[u16]) -> Result<usize> {
        let ev = self
            .evaluation
            .as_ref()
            .ok_or_else(|| Error::NoEvaluation("presentation".into()))?;
        Ok(word
            .iter()
            .fold(monoid.identity(), |acc, &x| monoid.mul(acc, ev[x as usize])))
    }

    /// Index of the first relation whose sides differ in `monoid`.
    pub fn first_unsound_relation(&self, monoid: &FiniteMonoid) -> Result<Option<usize>> {
        for (i, (u, v)) in self.relations.iter().enumerate() {
            if self.evaluate(monoid, u)? != self.evaluate(monoid, v)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// A base monoid as used by the rest of the library: a presentation, and
/// (for finite `M`) the multiplication table the presentation evaluates into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseMonoid {
    name: String,
    presentation: BasePresentation,
    monoid: Option<FiniteMonoid>,
}

impl BaseMonoid {
    /// Checks that the presentation has an evaluation and that it is sound.
    pub fn new(
        name: impl Into<String>,
        presentation: BasePresentation,
        monoid: Option<FiniteMonoid>,
    ) -> Result<Self> {
        let name = name.into();
        if let Some(m) = &monoid {
            let ev = presentation.evaluation().ok_or_else(|| {
                Error::InvalidPresentation("a table was given without an evaluation".into())
            })?;
            if ev.iter().any(|&x| x >= m.size()) {
                return Err(Error::InvalidPresentation("evaluation out of range".into()));
            }
            if let Some(i) = presentation.first_unsound_relation(m)? {
                return Err(Error::InvalidPresentation(format!(
                    "relation {i} does not hold in the monoid"
                )));
            }
        }
        Ok(Self {
            name,
            presentation,
            monoid,
        })
    }

    /// The Cayley-table presentation: one letter per non-identity element and
    /// one relation `xy = z` per pair.
    pub fn from_table(name: impl Into<String>, monoid: FiniteMonoid) -> Result<Self> {
        let elements: Vec<usize> = (0..monoid.size()).filter(|&a| a != monoid.identity()).collect();
        let letter_of: HashMap<usize, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i as u16))
            .collect();
        let alphabet = elements.iter().map(|a| format!("m{a}")).collect();
        let word = |a: usize| -> Vec<u16> { letter_of.get(&a).map(|&x| vec![x]).unwrap_or_default() };
        let mut relations = Vec::new();
        for &a in &elements {
            for &b in &elements {
                relations.push((vec![letter_of[&a], letter_of[&b]], word(monoid.mul(a, b))));
            }
        }
        let presentation = BasePresentation::new(alphabet, relations, Some(elements.clone()))?;
        Self::new(name, presentation, Some(monoid))
    }

    /// One of the stock monoids: `trivial`, `c2`, `c3`, `semilattice`, `s3`, `bicyclic`.
    pub fn builtin(name: &str) -> Result<Self> {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        match name {
            "trivial" => Self::new(
                name,
                BasePresentation::new(vec![], vec![], Some(vec![]))?,
                Some(FiniteMonoid::trivial()),
            ),
            "c2" => Self::new(
                name,
                BasePresentation::new(s(&["x"]), vec![(vec![0, 0], vec![])], Some(vec![1]))?,
                Some(FiniteMonoid::cyclic(2)),
            ),
            "c3" => Self::new(
                name,
                BasePresentation::new(s(&["x"]), vec![(vec![0, 0, 0], vec![])], Some(vec![1]))?,
                Some(FiniteMonoid::cyclic(3)),
            ),
            "semilattice" => Self::new(
                name,
                BasePresentation::new(s(&["z"]), vec![(vec![0, 0], vec![0])], Some(vec![1]))?,
                Some(FiniteMonoid::semilattice()),
            ),
            "s3" => {
                let table = FiniteMonoid::symmetric3();
                // a = (1 2) -> [1,0,2], b = (1 2 3) -> [1,2,0]
                let perms: Vec<Vec<usize>> = all_functions(3)
                    .into_iter()
                    .filter(|f| {
                        let mut g = f.clone();
                        g.sort_unstable();
                        g == vec![0, 1, 2]
                    })
                    .collect();
                let a = perms.iter().position(|p| p == &[1, 0, 2]).unwrap();
                let b = perms.iter().position(|p| p == &[1, 2, 0]).unwrap();
                Self::new(
                    name,
                    BasePresentation::new(
                        s(&["a", "b"]),
                        vec![
                            (vec![0, 0], vec![]),
                            (vec![1, 1, 1], vec![]),
                            (vec![0, 1, 0, 1], vec![]),
                        ],
                        Some(vec![a, b]),
                    )?,
                    Some(table),
                )
            }
            "bicyclic" => Self::new(
                name,
                BasePresentation::new(s(&["a", "b"]), vec![(vec![0, 1], vec![])], None)?,
                None,
            ),
            other => Err(Error::InvalidParams(format!("unknown built-in monoid {other:?}"))),
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 6] =
        ["trivial", "c2", "c3", "semilattice", "s3", "bicyclic"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &BasePresentation {
        &self.presentation
    }

    pub fn monoid(&self) -> Option<&FiniteMonoid> {
        self.monoid.as_ref()
    }

    /// `M₀`, or a "no evaluation" error for presentation-only monoids.
    pub fn zero_extended(&self) -> Result<ZeroExtended> {
        self.monoid
            .as_ref()
            .map(adjoin_zero)
            .ok_or_else(|| Error::NoEvaluation(self.name.clone()))
    }

    /// Base element denoted by letter `x`.
    pub fn letter_value(&self, x: u16) -> Result<usize> {
        self.presentation
            .evaluation()
            .and_then(|ev| ev.get(x as usize).copied())
            .ok_or_else(|| Error::NoEvaluation(self.name.clone()))
    }

    /// A shortlex-least word for every element of `M`.
    pub fn element_words(&self) -> Result<Vec<Vec<u16>>> {
        let m = self
            .monoid
            .as_ref()
            .ok_or_else(|| Error::NoEvaluation(self.name.clone()))?;
        let ev = self.presentation.evaluation().expect("checked on construction");
        let mut words: Vec<Option<Vec<u16>>> = vec![None; m.size()];
        words[m.identity()] = Some(vec![]);
        let mut queue = VecDeque::from([m.identity()]);
        while let Some(a) = queue.pop_front() {
            for (x, &value) in ev.iter().enumerate() {
                let b = m.mul(a, value);
                if words[b].is_none() {
                    let mut w = words[a].clone().unwrap();
                    w.push(x as u16);
                    words[b] = Some(w);
                    queue.push_back(b);
                }
            }
        }
        words
            .into_iter()
            .enumerate()
            .map(|(a, w)| {
                w.ok_or_else(|| {
                    Error::InvalidPresentation(format!(
                        "element {a} of {} is not generated by the letters",
                        self.name
                    ))
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoin_zero_to_trivial() {
        let m0 = adjoin_zero(&FiniteMonoid::trivial());
        assert_eq!(m0.table(), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(m0.as_monoid().identity(), 1);
    }

    #[test]
    fn adjoin_zero_to_c2() {
        let m0 = adjoin_zero(&FiniteMonoid::cyclic(2));
        assert_eq!(
            m0.table(),
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]
        );
    }

    #[test]
    fn zero_product_iff_a_factor_is_zero() {
        let monoids = [
            FiniteMonoid::trivial(),
            FiniteMonoid::cyclic(2),
            FiniteMonoid::cyclic(3),
            FiniteMonoid::semilattice(),
            FiniteMonoid::cyclic(4),
        ];
        for m in &monoids {
            let m0 = adjoin_zero(m);
            for a in 0..m0.size() as u16 {
                for b in 0..m0.size() as u16 {
                    assert_eq!(m0.mul(a, b) == ZERO, a == ZERO || b == ZERO);
                }
            }
            // validation accepts the extension itself
            let ext = m0.as_monoid();
            FiniteMonoid::from_table(ext.size(), ext.identity(), ext.table().to_vec()).unwrap();
        }
    }

    #[test]
    fn table_validation() {
        assert!(FiniteMonoid::from_table(2, 0, vec![vec![0, 1], vec![1, 1]]).is_ok());
        assert!(FiniteMonoid::from_table(2, 1, vec![vec![0, 1], vec![1, 1]]).is_err());
        // x*y = y is associative but has no two-sided identity
        assert!(FiniteMonoid::from_table(2, 0, vec![vec![0, 1], vec![0, 1]]).is_err());
        // not associative: a table that is a quasigroup without identity structure
        assert!(FiniteMonoid::from_table(3, 0, vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 0]]).is_err());
        assert!(FiniteMonoid::transformations(2).size() == 4);
        assert_eq!(FiniteMonoid::transformations(3).size(), 27);
    }

    #[test]
    fn tuple_products_and_supports() {
        let m0 = adjoin_zero(&FiniteMonoid::cyclic(2));
        let a = MTuple::new(vec![2, 0, 1]);
        let ones = MTuple::ones(&m0, 3);
        assert_eq!(a.mul(&ones, &m0).unwrap(), a);
        let left = MTuple::new(vec![1, 0]);
        let right = MTuple::new(vec![0, 1]);
        assert!(left.mul(&right, &m0).unwrap().support().is_empty());
        assert!(a.mul(&left, &m0).is_err());
    }

    #[test]
    fn special_tuples() {
        let m0 = adjoin_zero(&FiniteMonoid::cyclic(2));
        assert_eq!(MTuple::ones(&m0, 3).entries(), &[1, 1, 1]);
        // x^{(1;3)} with x the generator of C2 (base index 1, M₀ index 2)
        assert_eq!(
            MTuple::single_with_zero(&m0, 3, 1, 3, 1).unwrap().entries(),
            &[2, 1, 0]
        );
        assert_eq!(MTuple::single(&m0, 3, 2, 1).unwrap().entries(), &[1, 2, 1]);
        assert!(MTuple::single_with_zero(&m0, 3, 2, 2, 1).is_err());
        assert!(MTuple::single(&m0, 3, 4, 1).is_err());
        assert!(MTuple::single(&m0, 3, 1, 5).is_err());
    }

    #[test]
    fn action_on_tuple() {
        let alpha = PartialBijection::from_pairs(6, 8, &[(3, 4), (4, 1), (6, 7)]).unwrap();
        let a = MTuple::new((11..=18).collect());
        assert_eq!(act(&alpha, &a).unwrap().entries(), &[0, 0, 14, 11, 0, 17]);
        let m0 = adjoin_zero(&FiniteMonoid::cyclic(3));
        let ones = MTuple::ones(&m0, 8);
        assert_eq!(
            act(&alpha, &ones).unwrap(),
            MTuple::ones_on(&m0, 6, &alpha.domain()).unwrap()
        );
        assert!(act(&alpha, &MTuple::ones(&m0, 6)).is_err());
    }

    #[test]
    fn tensor_concatenates() {
        let a = MTuple::new(vec![1, 0]);
        assert_eq!(a.tensor(&MTuple::empty()), a);
        assert_eq!(a.tensor(&MTuple::new(vec![3])).entries(), &[1, 0, 3]);
    }

    #[test]
    fn builtins_are_sound_and_generated() {
        for name in BaseMonoid::BUILTIN_NAMES {
            let base = BaseMonoid::builtin(name).unwrap();
            if let Some(m) = base.monoid() {
                assert_eq!(base.presentation().first_unsound_relation(m).unwrap(), None);
                assert_eq!(base.element_words().unwrap().len(), m.size());
            } else {
                assert_eq!(name, "bicyclic");
                assert!(matches!(base.zero_extended(), Err(Error::NoEvaluation(_))));
            }
        }
        let s3 = BaseMonoid::builtin("s3").unwrap();
        let words = s3.element_words().unwrap();
        assert_eq!(words[0], Vec::<u16>::new());
        assert!(BaseMonoid::builtin("nope").is_err());
    }

    #[test]
    fn cayley_table_presentation() {
        let base = BaseMonoid::from_table("t2", FiniteMonoid::transformations(2)).unwrap();
        assert_eq!(base.presentation().letter_count(), 3);
        assert_eq!(base.presentation().relations().len(), 9);
        assert_eq!(base.element_words().unwrap().len(), 4);
    }

    #[test]
    fn letter_names() {
        for ok in ["a", "g", "x1", "m3", "lam", "rho", "ee", "s", "i", "f"] {
            assert!(is_valid_letter_name(ok), "{ok}");
        }
        for bad in ["e", "o", "p", "s1", "e2", "i3", "lam0", "rho2", "f12", "s1x", "X", "", "a@1", "1a"] {
            assert!(!is_valid_letter_name(bad), "{bad}");
        }
    }

    #[test]
    fn presentation_json() {
        let text = r#"{"alphabet":["a","b"],"relations":[[["a","b"],[]]]}"#;
        let p: BasePresentation = serde_json::from_str(text).unwrap();
        assert_eq!(p.relations(), &[(vec![0, 1], vec![])]);
        assert_eq!(serde_json::to_string(&p).unwrap(), text);
        assert!(serde_json::from_str::<BasePresentation>(
            r#"{"alphabet":["a"],"relations":[[["c"],[]]]}"#
        )
        .is_err());
    }
}
