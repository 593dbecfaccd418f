//! Elements of `M ≀ I`: pairs `(a, α)` with `supp(a) = dom(α)`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::base::{act, MTuple, ZeroExtended, ZERO};
use crate::error::{Error, Result};
use crate::pperm::{enumerate_partial_bijections, PartialBijection, DEFAULT_SIZE_CAP};

/// A morphism `m -> n` of `M ≀ I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct WreathElement {
    tuple: MTuple,
    map: PartialBijection,
}

#[derive(Deserialize)]
struct RawElement {
    tuple: MTuple,
    map: PartialBijection,
}

impl TryFrom<RawElement> for WreathElement {
    type Error = Error;

    fn try_from(raw: RawElement) -> Result<Self> {
        WreathElement::new(raw.tuple, raw.map)
    }
}

impl Ord for WreathElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.map, &self.tuple).cmp(&(&other.map, &other.tuple))
    }
}

impl PartialOrd for WreathElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl WreathElement {
    pub fn new(tuple: MTuple, map: PartialBijection) -> Result<Self> {
        if tuple.len() != map.source_size() {
            return Err(Error::InvalidElement(format!(
                "tuple has length {} but the map starts at {}",
                tuple.len(),
                map.source_size()
            )));
        }
        if tuple.support() != map.domain() {
            return Err(Error::InvalidElement(format!(
                "support {:?} differs from domain {:?}",
                tuple.support(),
                map.domain()
            )));
        }
        Ok(Self { tuple, map })
    }

    /// `ι_n`.
    pub fn identity(m0: &ZeroExtended, n: usize) -> Self {
        Self {
            tuple: MTuple::ones(m0, n),
            map: PartialBijection::identity(n),
        }
    }

    /// `a ≡ (a, id_supp(a))`.
    pub fn embed_tuple(tuple: &MTuple) -> Self {
        let n = tuple.len();
        let map = PartialBijection::restriction(n, &tuple.support())
            .expect("support lies in 1..n");
        Self {
            tuple: tuple.clone(),
            map,
        }
    }

    /// `α ≡ (𝟙_dom(α), α)`.
    pub fn embed_map(m0: &ZeroExtended, map: &PartialBijection) -> Self {
        let tuple = MTuple::ones_on(m0, map.source_size(), &map.domain())
            .expect("domain lies in 1..m");
        Self {
            tuple,
            map: map.clone(),
        }
    }

    pub fn tuple(&self) -> &MTuple {
        &self.tuple
    }

    pub fn map(&self) -> &PartialBijection {
        &self.map
    }

    /// The domain object `d(a, α)`.
    pub fn source(&self) -> usize {
        self.map.source_size()
    }

    /// The codomain object `r(a, α)`.
    pub fn target(&self) -> usize {
        self.map.target_size()
    }

    /// `(a, α) ∘ (b, β) = (a · ᵅb, αβ)`.
    pub fn compose(&self, other: &WreathElement, m0: &ZeroExtended) -> Result<Self> {
        let map = self.map.compose(&other.map)?;
        let tuple = self.tuple.mul(&act(&self.map, &other.tuple)?, m0)?;
        assert_eq!(
            tuple.support(),
            map.domain(),
            "composition broke the support/domain invariant"
        );
        Ok(Self { tuple, map })
    }

    pub fn tensor(&self, other: &WreathElement) -> Self {
        Self {
            tuple: self.tuple.tensor(&other.tuple),
            map: self.map.tensor(&other.map),
        }
    }

    /// Whether the map is a total permutation. Only defined for endomorphisms.
    pub fn is_unit(&self) -> Result<bool> {
        if self.source() != self.target() {
            return Err(Error::InvalidElement(format!(
                "is_unit needs an endomorphism, got {} -> {}",
                self.source(),
                self.target()
            )));
        }
        Ok(self.map.is_permutation())
    }

    /// Whether this element lies in `Sing(M₀ⁿ)`, embedded as `(a, id_supp(a))`.
    pub fn is_singular_tuple(&self) -> bool {
        let n = self.source();
        self.target() == n
            && self.map == PartialBijection::restriction(n, &self.tuple.support()).unwrap()
            && self.tuple.entries().contains(&ZERO)
    }
}

/// Which subset of `M ≀ I_{m,n}` to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// The whole hom-set `M ≀ I_{m,n}`.
    Full,
    /// `M ≀ Sing(I_n)`: the non-units of `M ≀ I_n`.
    SingularMonoid,
    /// `Sing(M₀ⁿ) = M₀ⁿ \ Mⁿ`.
    SingularTuples,
}

/// Size limits for brute-force enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest level when `|M| = 1`.
    pub trivial_level: usize,
    /// Largest level otherwise.
    pub level: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            trivial_level: 4,
            level: 3,
        }
    }
}

impl Caps {
    pub fn for_monoid_size(&self, size: usize) -> usize {
        if size == 1 {
            self.trivial_level
        } else {
            self.level
        }
    }
}

/// All elements of the chosen variant, sorted by `(map, tuple)`.
pub fn enumerate_wreath(
    m0: &ZeroExtended,
    m: usize,
    n: usize,
    variant: Variant,
    caps: Caps,
) -> Result<Vec<WreathElement>> {
    let cap = caps.for_monoid_size(m0.base().size());
    let requested = m.max(n);
    if requested > cap {
        return Err(Error::CapExceeded { requested, cap });
    }
    if variant != Variant::Full && m != n {
        return Err(Error::InvalidParams(format!(
            "{variant:?} needs m = n, got {m} and {n}"
        )));
    }
    let mut out = Vec::new();
    match variant {
        Variant::Full | Variant::SingularMonoid => {
            for map in enumerate_partial_bijections(m, n, DEFAULT_SIZE_CAP)? {
                if variant == Variant::SingularMonoid && map.is_permutation() {
                    continue;
                }
                let domain = map.domain();
                for_each_assignment(m0, domain.len(), |values| {
                    let mut entries = vec![ZERO; m];
                    for (&i, &v) in domain.iter().zip(values) {
                        entries[i - 1] = v;
                    }
                    out.push(WreathElement {
                        tuple: MTuple::new(entries),
                        map: map.clone(),
                    });
                });
            }
        }
        Variant::SingularTuples => {
            let size = m0.size() as u16;
            let mut entries = vec![0u16; n];
            loop {
                if entries.contains(&ZERO) {
                    out.push(WreathElement::embed_tuple(&MTuple::new(entries.clone())));
                }
                let mut pos = 0;
                while pos < n && entries[pos] + 1 == size {
                    entries[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
                entries[pos] += 1;
            }
        }
    }
    out.sort();
    Ok(out)
}

fn for_each_assignment(m0: &ZeroExtended, k: usize, mut f: impl FnMut(&[u16])) {
    let size = m0.base().size();
    let mut values = vec![0usize; k];
    loop {
        let lifted: Vec<u16> = values.iter().map(|&v| m0.lift(v)).collect();
        f(&lifted);
        let mut pos = 0;
        while pos < k && values[pos] + 1 == size {
            values[pos] = 0;
            pos += 1;
        }
        if pos == k {
            return;
        }
        values[pos] += 1;
    }
}

/// `Σ_k C(m,k) C(n,k) k! |M|^k`.
pub fn count_wreath(monoid_size: usize, m: usize, n: usize) -> u128 {
    use crate::pperm::{binomial, factorial};
    (0..=m.min(n))
        .map(|k| {
            binomial(m, k) * binomial(n, k) * factorial(k) * (monoid_size as u128).pow(k as u32)
        })
        .sum()
}

/// Size of the chosen variant at level `n`.
pub fn count_variant(monoid_size: usize, n: usize, variant: Variant) -> u128 {
    let k = monoid_size as u128;
    match variant {
        Variant::Full => count_wreath(monoid_size, n, n),
        Variant::SingularMonoid => {
            count_wreath(monoid_size, n, n) - crate::pperm::factorial(n) * k.pow(n as u32)
        }
        Variant::SingularTuples => (k + 1).pow(n as u32) - k.pow(n as u32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{adjoin_zero, FiniteMonoid};

    fn c2() -> ZeroExtended {
        adjoin_zero(&FiniteMonoid::cyclic(2))
    }

    #[test]
    fn composition_of_mixed_elements() {
        let m0 = adjoin_zero(&FiniteMonoid::cyclic(20));
        let alpha = PartialBijection::from_pairs(6, 8, &[(3, 4), (4, 1), (6, 7)]).unwrap();
        let beta = PartialBijection::from_pairs(8, 7, &[(1, 2), (3, 1), (5, 5), (7, 4)]).unwrap();
        // a_i = base element i (M₀ index i+1), b_j = base element 10 + j
        let a = MTuple::new(vec![0, 0, 4, 5, 0, 7]);
        let b = MTuple::new(vec![12, 0, 14, 0, 16, 0, 18, 0]);
        let p = WreathElement::new(a, alpha).unwrap();
        let q = WreathElement::new(b, beta).unwrap();
        let r = p.compose(&q, &m0).unwrap();
        assert_eq!(
            r.map(),
            &PartialBijection::from_pairs(6, 7, &[(4, 2), (6, 4)]).unwrap()
        );
        let expected4 = m0.mul(5, 12);
        let expected6 = m0.mul(7, 18);
        assert_eq!(r.tuple().entries(), &[0, 0, 0, expected4, 0, expected6]);
    }

    #[test]
    fn identities_and_embeddings() {
        let m0 = c2();
        let alpha = PartialBijection::from_pairs(3, 3, &[(1, 2), (3, 3)]).unwrap();
        let p = WreathElement::new(MTuple::new(vec![2, 0, 1]), alpha.clone()).unwrap();
        assert_eq!(p.compose(&WreathElement::identity(&m0, 3), &m0).unwrap(), p);
        assert_eq!(WreathElement::identity(&m0, 3).compose(&p, &m0).unwrap(), p);
        assert_eq!(
            WreathElement::embed_tuple(&MTuple::ones(&m0, 3)),
            WreathElement::identity(&m0, 3)
        );
        let a = WreathElement::embed_tuple(p.tuple());
        let b = WreathElement::embed_map(&m0, &alpha);
        assert_eq!(a.compose(&b, &m0).unwrap(), p);
    }

    #[test]
    fn remark_on_general_products() {
        // a · α with supp(a) ≠ dom(α)
        let m0 = c2();
        let a = WreathElement::embed_tuple(&MTuple::new(vec![2, 2, 0]));
        let alpha = PartialBijection::from_pairs(3, 3, &[(2, 1), (3, 2)]).unwrap();
        let r = a.compose(&WreathElement::embed_map(&m0, &alpha), &m0).unwrap();
        assert_eq!(r.tuple().entries(), &[0, 2, 0]);
        assert_eq!(
            r.map(),
            &PartialBijection::from_pairs(3, 3, &[(2, 1)]).unwrap()
        );
    }

    #[test]
    fn invalid_elements() {
        let alpha = PartialBijection::from_pairs(2, 2, &[(1, 1)]).unwrap();
        assert!(WreathElement::new(MTuple::new(vec![1, 1]), alpha.clone()).is_err());
        assert!(WreathElement::new(MTuple::new(vec![1]), alpha).is_err());
        let m0 = c2();
        let p = WreathElement::identity(&m0, 2);
        let q = WreathElement::identity(&m0, 3);
        assert!(matches!(
            p.compose(&q, &m0),
            Err(Error::CompositionMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let trivial = adjoin_zero(&FiniteMonoid::trivial());
        let caps = Caps::default();
        assert_eq!(enumerate_wreath(&trivial, 3, 3, Variant::Full, caps).unwrap().len(), 34);
        let m0 = c2();
        assert_eq!(enumerate_wreath(&m0, 2, 2, Variant::Full, caps).unwrap().len(), 17);
        assert_eq!(
            enumerate_wreath(&m0, 2, 2, Variant::SingularMonoid, caps).unwrap().len(),
            9
        );
        assert_eq!(
            enumerate_wreath(&m0, 2, 2, Variant::SingularTuples, caps).unwrap().len(),
            5
        );
        assert_eq!(
            enumerate_wreath(&m0, 3, 3, Variant::SingularTuples, caps).unwrap().len(),
            19
        );
        assert_eq!(enumerate_wreath(&m0, 1, 2, Variant::Full, caps).unwrap().len(), 5);
        let units = enumerate_wreath(&m0, 2, 2, Variant::Full, caps)
            .unwrap()
            .iter()
            .filter(|p| p.is_unit().unwrap())
            .count();
        assert_eq!(units, 8);
        assert!(matches!(
            enumerate_wreath(&m0, 4, 4, Variant::Full, caps),
            Err(Error::CapExceeded { .. })
        ));
        for n in 0..=3 {
            for v in [Variant::Full, Variant::SingularMonoid, Variant::SingularTuples] {
                assert_eq!(
                    enumerate_wreath(&m0, n, n, v, caps).unwrap().len() as u128,
                    count_variant(2, n, v),
                    "{v:?} {n}"
                );
            }
        }
    }

    #[test]
    fn small_levels() {
        let m0 = c2();
        let caps = Caps::default();
        assert_eq!(enumerate_wreath(&m0, 0, 0, Variant::Full, caps).unwrap().len(), 1);
        let sing1 = enumerate_wreath(&m0, 1, 1, Variant::SingularMonoid, caps).unwrap();
        assert_eq!(sing1.len(), 1);
        assert!(sing1[0].map().domain().is_empty());
    }

    #[test]
    fn singular_ideal_is_closed() {
        let m0 = c2();
        let caps = Caps::default();
        for n in 2..=3 {
            let sing = enumerate_wreath(&m0, n, n, Variant::SingularMonoid, caps).unwrap();
            for p in &sing {
                for q in &sing {
                    assert!(!p.compose(q, &m0).unwrap().is_unit().unwrap());
                }
            }
        }
    }

    #[test]
    fn json_form() {
        let m0 = c2();
        let p = WreathElement::identity(&m0, 1);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"tuple":[1],"map":{"m":1,"n":1,"images":[1]}}"#);
        assert_eq!(serde_json::from_str::<WreathElement>(&text).unwrap(), p);
        assert!(serde_json::from_str::<WreathElement>(
            r#"{"tuple":[0],"map":{"m":1,"n":1,"images":[1]}}"#
        )
        .is_err());
    }
}
