use super::Symbol;
use crate::error::{Error, Result};

/// A term of the free tensor category over the digraph `{X, U, Ū} ∪ X_M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorTerm {
    node: TermNode,
    source: usize,
    target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermNode {
    /// `ι_n`
    Identity,
    Edge(Symbol),
    /// `s ∘ t`
    Compose(Box<TensorTerm>, Box<TensorTerm>),
    /// `s ⊕ t`
    Sum(Box<TensorTerm>, Box<TensorTerm>),
}

impl TensorTerm {
    pub fn identity(n: usize) -> Self {
        Self {
            node: TermNode::Identity,
            source: n,
            target: n,
        }
    }

    pub fn edge(symbol: Symbol) -> Result<Self> {
        if !symbol.is_tensor_edge() {
            return Err(Error::Typing(format!("{symbol:?} is not a tensor edge")));
        }
        let (source, target) = symbol.typing().expect("tensor edges are typed");
        Ok(Self {
            node: TermNode::Edge(symbol),
            source,
            target,
        })
    }

    pub fn compose(left: TensorTerm, right: TensorTerm) -> Result<Self> {
        if left.target != right.source {
            return Err(Error::Typing(format!(
                "cannot compose a term ending at {} with one starting at {}",
                left.target, right.source
            )));
        }
        Ok(Self {
            source: left.source,
            target: right.target,
            node: TermNode::Compose(Box::new(left), Box::new(right)),
        })
    }

    pub fn sum(left: TensorTerm, right: TensorTerm) -> Self {
        Self {
            source: left.source + right.source,
            target: left.target + right.target,
            node: TermNode::Sum(Box::new(left), Box::new(right)),
        }
    }

    /// Left-nested `⊕` of the parts, leaving out `ι_0` summands.
    pub fn sum_all(parts: impl IntoIterator<Item = TensorTerm>) -> Self {
        parts
            .into_iter()
            .filter(|t| !t.is_identity_at(0))
            .reduce(TensorTerm::sum)
            .unwrap_or_else(|| TensorTerm::identity(0))
    }

    /// Left-nested `∘` of the parts; `ι_object` when there are none.
    pub fn compose_all(parts: impl IntoIterator<Item = TensorTerm>, object: usize) -> Result<Self> {
        let mut acc: Option<TensorTerm> = None;
        for t in parts {
            acc = Some(match acc {
                None => t,
                Some(a) => TensorTerm::compose(a, t)?,
            });
        }
        let out = acc.unwrap_or_else(|| TensorTerm::identity(object));
        if out.source != object {
            return Err(Error::Typing(format!(
                "composite starts at {} instead of {object}",
                out.source
            )));
        }
        Ok(out)
    }

    pub fn node(&self) -> &TermNode {
        &self.node
    }

    /// `d(t)`
    pub fn source(&self) -> usize {
        self.source
    }

    /// `r(t)`
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn is_identity_at(&self, n: usize) -> bool {
        matches!(self.node, TermNode::Identity) && self.source == n
    }

    /// Number of edge occurrences.
    pub fn edge_count(&self) -> usize {
        match &self.node {
            TermNode::Identity => 0,
            TermNode::Edge(_) => 1,
            TermNode::Compose(a, b) | TermNode::Sum(a, b) => a.edge_count() + b.edge_count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_arithmetic() {
        let x = TensorTerm::edge(Symbol::Swap).unwrap();
        let u = TensorTerm::edge(Symbol::Cap).unwrap();
        let t = TensorTerm::sum(u.clone(), TensorTerm::identity(1));
        assert_eq!((t.source(), t.target()), (2, 1));
        let c = TensorTerm::compose(x.clone(), t).unwrap();
        assert_eq!((c.source(), c.target()), (2, 1));
        assert!(TensorTerm::compose(u, x).is_err());
        assert!(TensorTerm::edge(Symbol::S(1)).is_err());
    }

    #[test]
    fn sums_skip_empty_objects() {
        let x = TensorTerm::edge(Symbol::Swap).unwrap();
        let t = TensorTerm::sum_all([TensorTerm::identity(0), x.clone(), TensorTerm::identity(0)]);
        assert_eq!(t, x);
        assert!(TensorTerm::sum_all([]).is_identity_at(0));
        assert!(TensorTerm::compose_all([], 3).unwrap().is_identity_at(3));
    }
}
