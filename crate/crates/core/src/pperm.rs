//! Partial bijections between finite chains `{1..m} -> {1..n}`: the morphisms
//! of the symmetric inverse category.
//!
//! Positions and images are 1-based throughout the public API. Internally an
//! image of `0` means "undefined", which is also the JSON encoding.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `m` and `n` for exhaustive enumeration.
pub const DEFAULT_SIZE_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPartialBijection")]
pub struct PartialBijection {
    m: usize,
    n: usize,
    images: Vec<u16>,
}

#[derive(Deserialize)]
struct RawPartialBijection {
    m: usize,
    n: usize,
    images: Vec<u16>,
}

impl TryFrom<RawPartialBijection> for PartialBijection {
    type Error = Error;

    fn try_from(raw: RawPartialBijection) -> Result<Self> {
        if raw.images.len() != raw.m {
            return Err(Error::InvalidPartialBijection(format!(
                "images has length {} but m = {}",
                raw.images.len(),
                raw.m
            )));
        }
        let images: Vec<usize> = raw.images.iter().map(|&x| x as usize).collect();
        PartialBijection::from_images(raw.n, &images)
    }
}

impl PartialBijection {
    /// Builds `{1..images.len()} -> {1..n}` from 1-based images, `0` meaning undefined.
    pub fn from_images(n: usize, images: &[usize]) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut stored = Vec::with_capacity(images.len());
        for (pos, &j) in images.iter().enumerate() {
            if j > n {
                return Err(Error::InvalidPartialBijection(format!(
                    "image {j} of {} lies outside 1..{n}",
                    pos + 1
                )));
            }
            if j != 0 {
                if seen[j] {
                    return Err(Error::InvalidPartialBijection(format!(
                        "image {j} is hit twice"
                    )));
                }
                seen[j] = true;
            }
            stored.push(j as u16);
        }
        Ok(Self {
            m: images.len(),
            n,
            images: stored,
        })
    }

    /// Builds a map from explicit `(i, j)` pairs meaning `i -> j`.
    pub fn from_pairs(m: usize, n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut images = vec![0; m];
        for &(i, j) in pairs {
            if i == 0 || i > m {
                return Err(Error::InvalidPartialBijection(format!(
                    "source point {i} lies outside 1..{m}"
                )));
            }
            if j == 0 {
                return Err(Error::InvalidPartialBijection("image 0".into()));
            }
            if images[i - 1] != 0 {
                return Err(Error::InvalidPartialBijection(format!(
                    "point {i} is mapped twice"
                )));
            }
            images[i - 1] = j;
        }
        Self::from_images(n, &images)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: n,
            n,
            images: (1..=n as u16).collect(),
        }
    }

    pub fn empty(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            images: vec![0; m],
        }
    }

    /// The partial identity `id_A` on `A ⊆ {1..n}`.
    pub fn restriction(n: usize, domain: &[usize]) -> Result<Self> {
        let mut images = vec![0; n];
        for &i in domain {
            if i == 0 || i > n {
                return Err(Error::InvalidPartialBijection(format!(
                    "point {i} lies outside 1..{n}"
                )));
            }
            images[i - 1] = i;
        }
        Self::from_images(n, &images)
    }

    pub fn source_size(&self) -> usize {
        self.m
    }

    pub fn target_size(&self) -> usize {
        self.n
    }

    /// Image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> Option<usize> {
        match self.images.get(i.wrapping_sub(1)) {
            Some(&j) if j != 0 => Some(j as usize),
            _ => None,
        }
    }

    /// Raw images, `0` for undefined.
    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&j| j as usize)
    }

    pub fn domain(&self) -> Vec<usize> {
        (1..=self.m).filter(|&i| self.image(i).is_some()).collect()
    }

    pub fn image_set(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.images().filter(|&j| j != 0).collect();
        im.sort_unstable();
        im
    }

    pub fn rank(&self) -> usize {
        self.images.iter().filter(|&&j| j != 0).count()
    }

    pub fn in_domain(&self, i: usize) -> bool {
        self.image(i).is_some()
    }

    /// Defined pairs `(i, iα)` in increasing order of `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.m)
            .filter_map(|i| self.image(i).map(|j| (i, j)))
            .collect()
    }

    /// Total bijection `n -> n`, i.e. a unit of `I_n`.
    pub fn is_permutation(&self) -> bool {
        self.m == self.n && self.rank() == self.n
    }

    /// Left-to-right relational composition `self` then `other`.
    pub fn compose(&self, other: &PartialBijection) -> Result<Self> {
        if self.n != other.m {
            return Err(Error::CompositionMismatch {
                left_target: self.n,
                right_source: other.m,
            });
        }
        let images = self
            .images
            .iter()
            .map(|&j| if j == 0 { 0 } else { other.images[j as usize - 1] })
            .collect();
        Ok(Self {
            m: self.m,
            n: other.n,
            images,
        })
    }

    /// Horizontal stacking `self ⊕ other`.
    pub fn tensor(&self, other: &PartialBijection) -> Self {
        let shift = self.n as u16;
        let mut images = self.images.clone();
        images.extend(
            other
                .images
                .iter()
                .map(|&j| if j == 0 { 0 } else { j + shift }),
        );
        Self {
            m: self.m + other.m,
            n: self.n + other.n,
            images,
        }
    }

    pub fn invert(&self) -> Self {
        let mut images = vec![0u16; self.n];
        for (i, &j) in self.images.iter().enumerate() {
            if j != 0 {
                images[j as usize - 1] = (i + 1) as u16;
            }
        }
        Self {
            m: self.n,
            n: self.m,
            images,
        }
    }

    /// Two-row ASCII picture: upper vertices with their images, then the edge list.
    pub fn render_ascii(&self) -> String {
        let width = self.m.max(self.n).to_string().len().max(1) + 1;
        let mut out = String::new();
        for i in 1..=self.m {
            let _ = write!(out, "{:>width$}", i);
        }
        out.push('\n');
        for i in 1..=self.m {
            match self.image(i) {
                Some(j) => {
                    let _ = write!(out, "{:>width$}", j);
                }
                None => {
                    let _ = write!(out, "{:>width$}", "-");
                }
            }
        }
        out.push('\n');
        let edges: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(i, j)| format!("{i}-{j}"))
            .collect();
        let _ = write!(out, "{} -> {}: {{{}}}", self.m, self.n, edges.join(", "));
        out
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(i, j)| format!("{i}->{j}"))
            .collect();
        write!(f, "[{}->{}]{{{}}}", self.m, self.n, pairs.join(", "))
    }
}

/// Every partial bijection `m -> n`, lexicographic on the image sequence with
/// "undefined" first.
pub fn enumerate_partial_bijections(m: usize, n: usize, cap: usize) -> Result<Vec<PartialBijection>> {
    let requested = m.max(n);
    if requested > cap {
        return Err(Error::CapExceeded { requested, cap });
    }
    let mut out = Vec::new();
    let mut images = vec![0u16; m];
    let mut used = vec![false; n + 1];
    fill(0, m, n, &mut images, &mut used, &mut out);
    Ok(out)
}

fn fill(
    pos: usize,
    m: usize,
    n: usize,
    images: &mut Vec<u16>,
    used: &mut Vec<bool>,
    out: &mut Vec<PartialBijection>,
) {
    if pos == m {
        out.push(PartialBijection {
            m,
            n,
            images: images.clone(),
        });
        return;
    }
    images[pos] = 0;
    fill(pos + 1, m, n, images, used, out);
    for j in 1..=n {
        if !used[j] {
            used[j] = true;
            images[pos] = j as u16;
            fill(pos + 1, m, n, images, used, out);
            used[j] = false;
        }
    }
    images[pos] = 0;
}

/// `Σ_k C(m,k) C(n,k) k!`, the size of `I_{m,n}`.
pub fn count_partial_bijections(m: usize, n: usize) -> u128 {
    (0..=m.min(n))
        .map(|k| binomial(m, k) * binomial(n, k) * factorial(k))
        .sum()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The named generator diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    /// `s̄_i`: the transposition `(i, i+1)` in `I_n`.
    Transposition(usize),
    /// `ē_i`: the identity of `I_n` with `i` removed from the domain.
    Idempotent(usize),
    /// `f̄_{i,j}`: `j -> i`, `i` undefined, all else fixed.
    Shift(usize, usize),
    /// `λ̄_n`: the inclusion `n -> n+1`.
    Inclusion,
    /// `ρ̄_n`: the co-inclusion `n+1 -> n`.
    CoInclusion,
    /// `X`: the swap in `I_2`.
    Swap,
    /// `U`: the unique map `1 -> 0`.
    Cap,
    /// `Ū`: the unique map `0 -> 1`.
    Cup,
    Identity,
    /// `id_A` for `A ⊆ {1..n}`.
    Restriction(Vec<usize>),
}

impl Diagram {
    /// Builds the diagram at level `n` (ignored by the fixed-size tensor generators).
    pub fn build(&self, n: usize) -> Result<PartialBijection> {
        match self {
            Diagram::Transposition(i) => {
                let i = *i;
                if i == 0 || i >= n {
                    return Err(Error::Construction(format!("s{i} needs 1 <= i < n = {n}")));
                }
                let mut images: Vec<usize> = (1..=n).collect();
                images.swap(i - 1, i);
                PartialBijection::from_images(n, &images)
            }
            Diagram::Idempotent(i) => {
                let i = *i;
                if i == 0 || i > n {
                    return Err(Error::Construction(format!("e{i} needs 1 <= i <= n = {n}")));
                }
                let mut images: Vec<usize> = (1..=n).collect();
                images[i - 1] = 0;
                PartialBijection::from_images(n, &images)
            }
            Diagram::Shift(i, j) => {
                let (i, j) = (*i, *j);
                if n < 2 || i == j || i == 0 || j == 0 || i > n || j > n {
                    return Err(Error::Construction(format!(
                        "f{i},{j} needs distinct i, j in 1..n with n = {n} >= 2"
                    )));
                }
                let images: Vec<usize> = (1..=n)
                    .map(|k| {
                        if k == i {
                            0
                        } else if k == j {
                            i
                        } else {
                            k
                        }
                    })
                    .collect();
                PartialBijection::from_images(n, &images)
            }
            Diagram::Inclusion => {
                let images: Vec<usize> = (1..=n).collect();
                PartialBijection::from_images(n + 1, &images)
            }
            Diagram::CoInclusion => {
                let mut images: Vec<usize> = (1..=n).collect();
                images.push(0);
                PartialBijection::from_images(n, &images)
            }
            Diagram::Swap => PartialBijection::from_images(2, &[2, 1]),
            Diagram::Cap => PartialBijection::from_images(0, &[0]),
            Diagram::Cup => PartialBijection::from_images(1, &[]),
            Diagram::Identity => Ok(PartialBijection::identity(n)),
            Diagram::Restriction(domain) => PartialBijection::restriction(n, domain),
        }
    }
}

/// Convenience wrapper over [`Diagram::build`].
pub fn make_generator(kind: &Diagram, n: usize) -> Result<PartialBijection> {
    kind.build(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pb(m: usize, n: usize, pairs: &[(usize, usize)]) -> PartialBijection {
        PartialBijection::from_pairs(m, n, pairs).unwrap()
    }

    #[test]
    fn composition_drops_unmatched_strands() {
        let alpha = pb(6, 8, &[(3, 4), (4, 1), (6, 7)]);
        let beta = pb(8, 7, &[(1, 2), (3, 1), (5, 5), (7, 4)]);
        assert_eq!(alpha.compose(&beta).unwrap(), pb(6, 7, &[(4, 2), (6, 4)]));
    }

    #[test]
    fn tensor_shifts_second_factor() {
        let alpha = pb(6, 8, &[(3, 4), (4, 1), (6, 7)]);
        let beta = pb(7, 6, &[(1, 2), (3, 1), (5, 5), (7, 4)]);
        let expected = pb(
            13,
            14,
            &[(3, 4), (4, 1), (6, 7), (7, 10), (9, 9), (11, 13), (13, 12)],
        );
        assert_eq!(alpha.tensor(&beta), expected);
        assert_eq!(alpha.tensor(&PartialBijection::identity(0)), alpha);
    }

    #[test]
    fn composition_size_mismatch() {
        let a = PartialBijection::identity(2);
        let b = PartialBijection::identity(3);
        assert_eq!(
            a.compose(&b),
            Err(Error::CompositionMismatch {
                left_target: 2,
                right_source: 3
            })
        );
    }

    #[test]
    fn invalid_constructions() {
        assert!(PartialBijection::from_images(2, &[3]).is_err());
        assert!(PartialBijection::from_images(2, &[1, 1]).is_err());
        assert!(Diagram::Transposition(3).build(3).is_err());
        assert!(Diagram::Shift(1, 1).build(3).is_err());
        assert!(Diagram::Shift(1, 2).build(1).is_err());
        assert!(Diagram::Idempotent(0).build(3).is_err());
    }

    #[test]
    fn shift_generator_picture() {
        assert_eq!(
            Diagram::Shift(1, 2).build(3).unwrap(),
            pb(3, 3, &[(2, 1), (3, 3)])
        );
        let f = Diagram::Shift(2, 3).build(4).unwrap();
        assert_eq!(f.domain(), vec![1, 3, 4]);
        assert_eq!(f.image_set(), vec![1, 2, 4]);
    }

    #[test]
    fn idempotents_and_inclusions() {
        for n in 0..=4 {
            for i in 1..=n {
                let e = Diagram::Idempotent(i).build(n).unwrap();
                assert_eq!(e.compose(&e).unwrap(), e);
            }
            let lam = Diagram::Inclusion.build(n).unwrap();
            let rho = Diagram::CoInclusion.build(n).unwrap();
            assert_eq!(lam.compose(&rho).unwrap(), PartialBijection::identity(n));
            // ρλ is e_{n+1} at level n+1
            assert_eq!(
                rho.compose(&lam).unwrap(),
                Diagram::Idempotent(n + 1).build(n + 1).unwrap()
            );
        }
    }

    #[test]
    fn inverse_transposes_the_graph() {
        let alpha = pb(6, 8, &[(3, 4), (4, 1), (6, 7)]);
        assert_eq!(alpha.invert(), pb(8, 6, &[(4, 3), (1, 4), (7, 6)]));
        assert_eq!(
            PartialBijection::identity(4).invert(),
            PartialBijection::identity(4)
        );
        let restricted = PartialBijection::restriction(6, &alpha.domain()).unwrap();
        assert_eq!(alpha.compose(&alpha.invert()).unwrap(), restricted);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partial_bijections(0, 0, 6).unwrap().len(), 1);
        assert_eq!(enumerate_partial_bijections(3, 3, 6).unwrap().len(), 34);
        assert_eq!(enumerate_partial_bijections(4, 4, 6).unwrap().len(), 209);
        assert_eq!(count_partial_bijections(4, 4), 209);
        assert_eq!(
            enumerate_partial_bijections(7, 2, 6),
            Err(Error::CapExceeded {
                requested: 7,
                cap: 6
            })
        );
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all = enumerate_partial_bijections(3, 4, 6).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], PartialBijection::empty(3, 4));
        assert_eq!(all.len() as u128, count_partial_bijections(3, 4));
    }

    #[test]
    fn json_uses_zero_for_undefined() {
        let alpha = pb(3, 2, &[(2, 1)]);
        let text = serde_json::to_string(&alpha).unwrap();
        assert_eq!(text, r#"{"m":3,"n":2,"images":[0,1,0]}"#);
        let back: PartialBijection = serde_json::from_str(&text).unwrap();
        assert_eq!(back, alpha);
        assert!(serde_json::from_str::<PartialBijection>(r#"{"m":2,"n":2,"images":[1,1]}"#).is_err());
        assert!(serde_json::from_str::<PartialBijection>(r#"{"m":3,"n":2,"images":[1]}"#).is_err());
    }
}
