//! Words over generator alphabets, typed paths, tensor terms, their
//! evaluation into `M ≀ I`, canonical words and the translation maps between
//! alphabets.

mod eval;
mod normal;
mod syntax;
mod term;
mod translate;

pub use eval::{Context, Evaluator};
pub use normal::{
    base_words, canonical_category_path, canonical_monoid_word, canonical_permutation_word,
    canonical_tuple_word, min_separation_rules, normal_form_min, normal_form_sing_tuple,
    separate, MInNormalForm, SeparationCondition, SeparationRules, SingTupleNormalForm,
};
pub use syntax::{format_path, format_symbol, format_term, format_word, parse_path, parse_term, parse_word};
pub use term::TensorTerm;
pub use translate::{hat, hat_symbol, plus, psi1, psi2, reverse, x_mn_decompose};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator from one of the alphabets. Base letters are stored as indices
/// into the alphabet of the attached base presentation; all positions and
/// levels are 1-based where the notation is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    /// `s_i`
    S(usize),
    /// `e_i`
    E(usize),
    /// The single idempotent `e` of the small alphabet
    SingleE,
    /// A bare base letter `x`: `x^{(1)}` in a monoid, the edge `x: 1 -> 1` in a category.
    Letter(u16),
    /// `x^{(i)}`
    Tagged { letter: u16, i: usize },
    /// `f_{i,j}`
    F(usize, usize),
    /// `x^{(i;j)}` with a zero at `j`
    TaggedZero { letter: u16, i: usize, j: usize },
    /// `s_{i;n}`
    LevelS { i: usize, n: usize },
    /// `e_{i;n}`
    LevelE { i: usize, n: usize },
    /// `x^{(i;n)}`
    LevelTagged { letter: u16, i: usize, n: usize },
    /// `λ_n: n -> n+1`
    Lambda(usize),
    /// `ρ_n: n+1 -> n`
    Rho(usize),
    /// `X: 2 -> 2`
    Swap,
    /// `U: 1 -> 0`
    Cap,
    /// `Ū: 0 -> 1`
    Cup,
}

impl Symbol {
    /// Source and target objects for edges of the category and tensor digraphs.
    pub fn typing(&self) -> Option<(usize, usize)> {
        match *self {
            Symbol::LevelS { n, .. } | Symbol::LevelE { n, .. } | Symbol::LevelTagged { n, .. } => {
                Some((n, n))
            }
            Symbol::Lambda(n) => Some((n, n + 1)),
            Symbol::Rho(n) => Some((n + 1, n)),
            Symbol::Swap => Some((2, 2)),
            Symbol::Cap => Some((1, 0)),
            Symbol::Cup => Some((0, 1)),
            Symbol::Letter(_) => Some((1, 1)),
            _ => None,
        }
    }

    /// Whether the symbol is an edge of the tensor digraph (`X`, `U`, `Ū`, base letters).
    pub fn is_tensor_edge(&self) -> bool {
        matches!(self, Symbol::Swap | Symbol::Cap | Symbol::Cup | Symbol::Letter(_))
    }

    /// Whether the symbol is an edge of the category digraph.
    pub fn is_category_edge(&self) -> bool {
        matches!(
            self,
            Symbol::LevelS { .. }
                | Symbol::LevelE { .. }
                | Symbol::LevelTagged { .. }
                | Symbol::Lambda(_)
                | Symbol::Rho(_)
        )
    }

    /// The base letter carried by the symbol, if any.
    pub fn letter(&self) -> Option<u16> {
        match *self {
            Symbol::Letter(x)
            | Symbol::Tagged { letter: x, .. }
            | Symbol::TaggedZero { letter: x, .. }
            | Symbol::LevelTagged { letter: x, .. } => Some(x),
            _ => None,
        }
    }
}

/// A word in a free monoid. The empty word is `ι`.
pub type Word = Vec<Symbol>;

/// A path in a free category: a declared source object plus edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    edges: Vec<Symbol>,
}

impl Path {
    /// The empty path `ι_n`.
    pub fn empty(n: usize) -> Self {
        Self {
            source: n,
            target: n,
            edges: vec![],
        }
    }

    /// Checks that consecutive edges compose.
    pub fn new(source: usize, edges: Vec<Symbol>) -> Result<Self> {
        let mut target = source;
        for (k, e) in edges.iter().enumerate() {
            let (d, r) = e
                .typing()
                .ok_or_else(|| Error::Typing(format!("{e:?} is not a digraph edge")))?;
            if d != target {
                return Err(Error::Typing(format!(
                    "edge {} starts at {d} but the path is at {target}",
                    k + 1
                )));
            }
            target = r;
        }
        Ok(Self {
            source,
            target,
            edges,
        })
    }

    /// A nonempty path, its source read off the first edge.
    pub fn from_edges(edges: Vec<Symbol>) -> Result<Self> {
        let first = edges
            .first()
            .ok_or_else(|| Error::Typing("an empty path needs a declared object".into()))?;
        let (d, _) = first
            .typing()
            .ok_or_else(|| Error::Typing(format!("{first:?} is not a digraph edge")))?;
        Self::new(d, edges)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn edges(&self) -> &[Symbol] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn then(&self, other: &Path) -> Result<Path> {
        if self.target != other.source {
            return Err(Error::Typing(format!(
                "cannot follow a path ending at {} with one starting at {}",
                self.target, other.source
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            source: self.source,
            target: other.target,
            edges,
        })
    }
}

/// `w^{(i)}` for a word over the base alphabet; empty stays empty.
pub fn tag_word(word: &[u16], i: usize) -> Word {
    word.iter().map(|&letter| Symbol::Tagged { letter, i }).collect()
}

/// `w^{(i;j)}`; the empty word becomes `e_j`.
pub fn tag_zero_word(word: &[u16], i: usize, j: usize) -> Word {
    if word.is_empty() {
        vec![Symbol::E(j)]
    } else {
        word.iter()
            .map(|&letter| Symbol::TaggedZero { letter, i, j })
            .collect()
    }
}

/// `w^{(i;n)}` as a path at `n`; the empty word becomes `ι_n`.
pub fn tag_level_word(word: &[u16], i: usize, n: usize) -> Path {
    Path {
        source: n,
        target: n,
        edges: word
            .iter()
            .map(|&letter| Symbol::LevelTagged { letter, i, n })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_typing() {
        let p = Path::from_edges(vec![Symbol::Lambda(2), Symbol::Rho(2)]).unwrap();
        assert_eq!((p.source(), p.target()), (2, 2));
        assert!(Path::from_edges(vec![Symbol::Lambda(2), Symbol::Lambda(2)]).is_err());
        assert!(Path::new(1, vec![Symbol::S(1)]).is_err());
        assert!(Path::from_edges(vec![]).is_err());
        let q = Path::new(3, vec![Symbol::LevelS { i: 1, n: 3 }, Symbol::Rho(2)]).unwrap();
        assert_eq!(q.target(), 2);
        assert!(p.then(&q).is_err());
        assert_eq!(Path::empty(3).then(&q).unwrap(), q);
    }

    #[test]
    fn superscript_conventions() {
        assert!(tag_word(&[], 2).is_empty());
        assert_eq!(tag_zero_word(&[], 1, 3), vec![Symbol::E(3)]);
        assert_eq!(tag_level_word(&[], 1, 3), Path::empty(3));
        assert_eq!(
            tag_zero_word(&[0, 0], 1, 2),
            vec![Symbol::TaggedZero { letter: 0, i: 1, j: 2 }; 2]
        );
    }
}
