//! Canonical words, the separation procedure and the normal forms for
//! `M ≀ I_n` and `Sing(M₀ⁿ)`.
//!
//! Normal forms are computed by evaluating and then factoring the value.

use std::collections::HashMap;

use super::{tag_level_word, tag_word, tag_zero_word, Evaluator, Path, Symbol, Word};
use crate::base::{BaseMonoid, MTuple, ZERO};
use crate::error::{Error, Result};
use crate::pperm::PartialBijection;
use crate::wreath::WreathElement;

/// A shortlex-least base word for every element of `M`.
pub fn base_words(base: &BaseMonoid) -> Result<Vec<Vec<u16>>> {
    base.element_words()
}

/// A word over `{s_i}` for a permutation, by peeling off descents:
/// `π = s_i · (s_i π)` whenever `iπ > (i+1)π`.
pub fn canonical_permutation_word(pi: &PartialBijection) -> Result<Vec<usize>> {
    if !pi.is_permutation() {
        return Err(Error::InvalidParams(format!("{pi} is not a permutation")));
    }
    let mut images: Vec<usize> = pi.images().collect();
    let mut out = Vec::new();
    while let Some(i) = (1..images.len()).find(|&i| images[i - 1] > images[i]) {
        out.push(i);
        images.swap(i - 1, i);
    }
    Ok(out)
}

/// The positions outside `dom(α)` and a permutation extending `α`.
fn idempotents_and_extension(alpha: &PartialBijection) -> (Vec<usize>, PartialBijection) {
    let n = alpha.source_size();
    let missing: Vec<usize> = (1..=n).filter(|&i| !alpha.in_domain(i)).collect();
    let image = alpha.image_set();
    let free: Vec<usize> = (1..=n).filter(|j| !image.contains(j)).collect();
    let mut images: Vec<usize> = alpha.images().collect();
    for (&i, &j) in missing.iter().zip(&free) {
        images[i - 1] = j;
    }
    let pi = PartialBijection::from_images(n, &images).expect("extension is a permutation");
    (missing, pi)
}

fn endomorphism_level(p: &WreathElement) -> Result<usize> {
    if p.source() != p.target() {
        return Err(Error::NotInTarget(format!(
            "expected an endomorphism, got {} -> {}",
            p.source(),
            p.target()
        )));
    }
    Ok(p.source())
}

fn entry_word<'a>(words: &'a [Vec<u16>], tuple: &MTuple, i: usize) -> &'a [u16] {
    match tuple.get(i) {
        ZERO => &[],
        x => &words[x as usize - 1],
    }
}

/// `b_1^{(1)} ⋯ b_n^{(n)} · w(α)` over `{s_i, e_i, x^{(i)}}`, where `w(α)` lists
/// `e_i` for `i ∉ dom(α)` and then a permutation word.
pub fn canonical_monoid_word(p: &WreathElement, words: &[Vec<u16>]) -> Result<Word> {
    let n = endomorphism_level(p)?;
    let mut out = Vec::new();
    for i in 1..=n {
        out.extend(tag_word(entry_word(words, p.tuple(), i), i));
    }
    let (missing, pi) = idempotents_and_extension(p.map());
    out.extend(missing.into_iter().map(Symbol::E));
    out.extend(canonical_permutation_word(&pi)?.into_iter().map(Symbol::S));
    Ok(out)
}

/// `e_j (j ∉ A) · w_1^{(a_1;z)} ⋯ w_q^{(a_q;z)}` for a singular tuple with
/// support `A = {a_1 < … < a_q}`, where `z` is the largest position outside `A`.
pub fn canonical_tuple_word(p: &WreathElement, words: &[Vec<u16>]) -> Result<Word> {
    Ok(tuple_form(p, words)?.word())
}

/// `λ_m ⋯ λ_{k-1} · w_k · ρ_{k-1} ⋯ ρ_n` with `k = max(m, n)` and `w_k` the
/// level-`k` canonical word of `p` padded with zeros.
pub fn canonical_category_path(p: &WreathElement, words: &[Vec<u16>]) -> Result<Path> {
    let (m, n) = (p.source(), p.target());
    let k = m.max(n);
    let mut entries = p.tuple().entries().to_vec();
    entries.resize(k, ZERO);
    let padded = MTuple::new(entries);
    let images: Vec<usize> = (1..=k).map(|i| p.map().image(i).unwrap_or(0)).collect();
    let alpha = PartialBijection::from_images(k, &images)?;
    let mut edges: Vec<Symbol> = (m..k).map(Symbol::Lambda).collect();
    for i in 1..=k {
        edges.extend(
            tag_level_word(entry_word(words, &padded, i), i, k)
                .edges()
                .iter()
                .copied(),
        );
    }
    let (missing, pi) = idempotents_and_extension(&alpha);
    edges.extend(missing.into_iter().map(|i| Symbol::LevelE { i, n: k }));
    edges.extend(
        canonical_permutation_word(&pi)?
            .into_iter()
            .map(|i| Symbol::LevelS { i, n: k }),
    );
    edges.extend((n..k).rev().map(Symbol::Rho));
    Path::new(m, edges)
}

/// `w ~ w_1^{(1)} ⋯ w_n^{(n)} · w'` with `w_i = ι` off `dom(w̄')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MInNormalForm {
    pub parts: Vec<Vec<u16>>,
    pub map_word: Word,
}

impl MInNormalForm {
    pub fn word(&self) -> Word {
        let mut out: Word = self
            .parts
            .iter()
            .enumerate()
            .flat_map(|(k, w)| tag_word(w, k + 1))
            .collect();
        out.extend_from_slice(&self.map_word);
        out
    }
}

pub fn normal_form_min(
    word: &[Symbol],
    n: usize,
    evaluator: &Evaluator,
    words: &[Vec<u16>],
) -> Result<MInNormalForm> {
    let p = evaluator.word(word, n)?;
    let parts = (1..=n)
        .map(|i| entry_word(words, p.tuple(), i).to_vec())
        .collect();
    let (missing, pi) = idempotents_and_extension(p.map());
    let mut map_word: Word = missing.into_iter().map(Symbol::E).collect();
    map_word.extend(canonical_permutation_word(&pi)?.into_iter().map(Symbol::S));
    Ok(MInNormalForm { parts, map_word })
}

/// `w ~ e_{q+1} ⋯ e_n · w_1^{(1;n)} ⋯ w_q^{(q;n)}` after renaming positions:
/// position `k ≤ q` stands for `support[k-1]` and `n` for `anchor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingTupleNormalForm {
    pub n: usize,
    pub q: usize,
    pub support: Vec<usize>,
    pub anchor: usize,
    pub parts: Vec<Vec<u16>>,
}

impl SingTupleNormalForm {
    pub fn word(&self) -> Word {
        let mut out: Word = (1..=self.n)
            .filter(|j| !self.support.contains(j))
            .map(Symbol::E)
            .collect();
        for (w, &i) in self.parts.iter().zip(&self.support) {
            out.extend(tag_zero_word(w, i, self.anchor));
        }
        out
    }
}

fn tuple_form(p: &WreathElement, words: &[Vec<u16>]) -> Result<SingTupleNormalForm> {
    let n = endomorphism_level(p)?;
    if !p.is_singular_tuple() {
        return Err(Error::NotInTarget(format!(
            "{} is not a singular tuple",
            p.map()
        )));
    }
    let support = p.tuple().support();
    let anchor = (1..=n).rev().find(|j| !support.contains(j)).expect("a zero entry exists");
    let parts = support
        .iter()
        .map(|&i| entry_word(words, p.tuple(), i).to_vec())
        .collect();
    Ok(SingTupleNormalForm {
        n,
        q: support.len(),
        support,
        anchor,
        parts,
    })
}

pub fn normal_form_sing_tuple(
    word: &[Symbol],
    n: usize,
    evaluator: &Evaluator,
    words: &[Vec<u16>],
) -> Result<SingTupleNormalForm> {
    tuple_form(&evaluator.word(word, n)?, words)
}

/// Which length bound the separation rules satisfy: `ℓ(u) ≤ 1` or `ℓ(v) ≤ 1`
/// in every rule `yx → uv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationCondition {
    ShortLeft,
    ShortRight,
}

/// Rules `yx → uv` with `x ∈ X`, `y ∈ Y`, `u ∈ X*`, `v ∈ Y*`.
#[derive(Clone, Debug)]
pub struct SeparationRules {
    rules: HashMap<(Symbol, Symbol), (Word, Word)>,
    condition: SeparationCondition,
}

impl SeparationRules {
    pub fn new(
        rules: HashMap<(Symbol, Symbol), (Word, Word)>,
        condition: SeparationCondition,
    ) -> Result<Self> {
        let left = rules.values().all(|(u, _)| u.len() <= 1);
        let right = rules.values().all(|(_, v)| v.len() <= 1);
        let holds = match condition {
            SeparationCondition::ShortLeft => left,
            SeparationCondition::ShortRight => right,
        };
        if !holds {
            return Err(Error::SeparationRules(format!(
                "stated {condition:?} fails (short left: {left}, short right: {right})"
            )));
        }
        Ok(Self { rules, condition })
    }

    /// Picks whichever condition holds, preferring `ShortLeft`.
    pub fn infer(rules: HashMap<(Symbol, Symbol), (Word, Word)>) -> Result<Self> {
        if rules.values().all(|(u, _)| u.len() <= 1) {
            Self::new(rules, SeparationCondition::ShortLeft)
        } else if rules.values().all(|(_, v)| v.len() <= 1) {
            Self::new(rules, SeparationCondition::ShortRight)
        } else {
            Err(Error::SeparationRules(
                "some rule has a long left part and some rule a long right part".into(),
            ))
        }
    }

    pub fn condition(&self) -> SeparationCondition {
        self.condition
    }

    fn apply(&self, y: Symbol, x: Symbol) -> Result<&(Word, Word)> {
        self.rules
            .get(&(y, x))
            .ok_or_else(|| Error::SeparationRules(format!("no rule for {y:?} {x:?}")))
    }
}

/// Rewrites `w` to `uv` with `u ∈ X*`, `v ∈ Y*`, where `is_x` tells the two
/// alphabets apart.
pub fn separate(
    word: &[Symbol],
    is_x: impl Fn(&Symbol) -> bool,
    rules: &SeparationRules,
) -> Result<(Word, Word)> {
    let mut u: Word = Vec::new();
    let mut v: Word = Vec::new();
    match rules.condition {
        SeparationCondition::ShortLeft => {
            for &z in word {
                if !is_x(&z) {
                    v.push(z);
                    continue;
                }
                let mut suffix: Word = Vec::new();
                let mut carry = Some(z);
                while let Some(x) = carry {
                    match v.pop() {
                        None => {
                            u.push(x);
                            carry = None;
                        }
                        Some(y) => {
                            let (u1, v1) = rules.apply(y, x)?;
                            suffix.splice(0..0, v1.iter().copied());
                            carry = u1.first().copied();
                        }
                    }
                }
                v.extend(suffix);
            }
        }
        SeparationCondition::ShortRight => {
            for &z in word.iter().rev() {
                if is_x(&z) {
                    u.insert(0, z);
                    continue;
                }
                let mut prefix: Word = Vec::new();
                let mut carry = Some(z);
                while let Some(y) = carry {
                    if u.is_empty() {
                        v.insert(0, y);
                        carry = None;
                    } else {
                        let x = u.remove(0);
                        let (u1, v1) = rules.apply(y, x)?;
                        prefix.extend(u1.iter().copied());
                        carry = v1.first().copied();
                    }
                }
                u.splice(0..0, prefix);
            }
        }
    }
    Ok((u, v))
}

/// The rules for moving tuple letters `x^{(j)}` left past `s_i` and `e_i` in
/// `M ≀ I_n`.
pub fn min_separation_rules(n: usize, letters: usize) -> SeparationRules {
    let mut rules = HashMap::new();
    for letter in 0..letters as u16 {
        for j in 1..=n {
            let x = Symbol::Tagged { letter, i: j };
            for i in 1..n {
                let moved = if j == i {
                    j + 1
                } else if j == i + 1 {
                    i
                } else {
                    j
                };
                rules.insert(
                    (Symbol::S(i), x),
                    (vec![Symbol::Tagged { letter, i: moved }], vec![Symbol::S(i)]),
                );
            }
            for i in 1..=n {
                let u = if i == j { vec![] } else { vec![x] };
                rules.insert((Symbol::E(i), x), (u, vec![Symbol::E(i)]));
            }
        }
    }
    SeparationRules::new(rules, SeparationCondition::ShortLeft).expect("rules are short on the left")
}
