use super::term::{TensorTerm, TermNode};
use super::{Path, Symbol};
use crate::base::{adjoin_zero, BaseMonoid, FiniteMonoid, MTuple, ZeroExtended};
use crate::error::{Error, Result};
use crate::pperm::Diagram;
use crate::wreath::WreathElement;

/// Where a symbol is read: in the monoid `M ≀ I_n`, or as an edge of the
/// category or tensor digraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    Monoid(usize),
    Typed,
}

/// The evaluation maps from words, paths and terms into `M ≀ I`.
#[derive(Clone, Debug)]
pub struct Evaluator {
    m0: ZeroExtended,
    values: Vec<usize>,
}

impl Evaluator {
    /// Needs a base monoid with a multiplication table.
    pub fn new(base: &BaseMonoid) -> Result<Self> {
        let m0 = base.zero_extended()?;
        let values = (0..base.presentation().letter_count() as u16)
            .map(|x| base.letter_value(x))
            .collect::<Result<_>>()?;
        Ok(Self { m0, values })
    }

    /// Evaluation into `I` itself (the trivial base monoid, no letters).
    pub fn trivial() -> Self {
        Self {
            m0: adjoin_zero(&FiniteMonoid::trivial()),
            values: vec![],
        }
    }

    pub fn m0(&self) -> &ZeroExtended {
        &self.m0
    }

    fn value(&self, x: u16) -> Result<usize> {
        self.values
            .get(x as usize)
            .copied()
            .ok_or_else(|| Error::AlphabetMismatch {
                symbol: format!("letter #{x}"),
                context: "the base presentation".into(),
            })
    }

    fn map(&self, diagram: Diagram, n: usize) -> Result<WreathElement> {
        Ok(WreathElement::embed_map(&self.m0, &diagram.build(n)?))
    }

    fn tagged(&self, x: u16, i: usize, n: usize) -> Result<WreathElement> {
        let t = MTuple::single(&self.m0, n, i, self.value(x)?)
            .map_err(|e| Error::Construction(e.to_string()))?;
        Ok(WreathElement::embed_tuple(&t))
    }

    /// The image of a single generator.
    pub fn symbol(&self, symbol: &Symbol, context: Context) -> Result<WreathElement> {
        let wrong = || {
            Err(Error::Typing(format!(
                "{symbol:?} cannot be evaluated in context {context:?}"
            )))
        };
        match context {
            Context::Monoid(n) => match *symbol {
                Symbol::S(i) => self.map(Diagram::Transposition(i), n),
                Symbol::E(i) => self.map(Diagram::Idempotent(i), n),
                Symbol::SingleE => self.map(Diagram::Idempotent(1), n),
                Symbol::Letter(x) => self.tagged(x, 1, n),
                Symbol::Tagged { letter, i } => self.tagged(letter, i, n),
                Symbol::F(i, j) => self.map(Diagram::Shift(i, j), n),
                Symbol::TaggedZero { letter, i, j } => {
                    let t = MTuple::single_with_zero(&self.m0, n, i, j, self.value(letter)?)
                        .map_err(|e| Error::Construction(e.to_string()))?;
                    Ok(WreathElement::embed_tuple(&t))
                }
                _ => wrong(),
            },
            Context::Typed => match *symbol {
                Symbol::LevelS { i, n } => self.map(Diagram::Transposition(i), n),
                Symbol::LevelE { i, n } => self.map(Diagram::Idempotent(i), n),
                Symbol::LevelTagged { letter, i, n } => self.tagged(letter, i, n),
                Symbol::Lambda(n) => self.map(Diagram::Inclusion, n),
                Symbol::Rho(n) => self.map(Diagram::CoInclusion, n),
                Symbol::Swap => self.map(Diagram::Swap, 2),
                Symbol::Cap => self.map(Diagram::Cap, 1),
                Symbol::Cup => self.map(Diagram::Cup, 0),
                Symbol::Letter(x) => self.tagged(x, 1, 1),
                _ => wrong(),
            },
        }
    }

    /// Left fold of generator images, starting at `ι_n`.
    pub fn word(&self, word: &[Symbol], n: usize) -> Result<WreathElement> {
        let mut acc = WreathElement::identity(&self.m0, n);
        for s in word {
            acc = acc.compose(&self.symbol(s, Context::Monoid(n))?, &self.m0)?;
        }
        Ok(acc)
    }

    pub fn path(&self, path: &Path) -> Result<WreathElement> {
        let mut acc = WreathElement::identity(&self.m0, path.source());
        for s in path.edges() {
            acc = acc.compose(&self.symbol(s, Context::Typed)?, &self.m0)?;
        }
        Ok(acc)
    }

    pub fn term(&self, term: &TensorTerm) -> Result<WreathElement> {
        match term.node() {
            TermNode::Identity => Ok(WreathElement::identity(&self.m0, term.source())),
            TermNode::Edge(s) => self.symbol(s, Context::Typed),
            TermNode::Compose(a, b) => self.term(a)?.compose(&self.term(b)?, &self.m0),
            TermNode::Sum(a, b) => Ok(self.term(a)?.tensor(&self.term(b)?)),
        }
    }

    /// Composite of already-evaluated elements.
    pub fn compose(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
        a.compose(b, &self.m0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pperm::PartialBijection;

    #[test]
    fn involution_and_single_e() {
        let ev = Evaluator::trivial();
        assert_eq!(
            ev.word(&[Symbol::S(1), Symbol::S(1)], 3).unwrap(),
            WreathElement::identity(ev.m0(), 3)
        );
        let e = ev.symbol(&Symbol::SingleE, Context::Monoid(2)).unwrap();
        assert_eq!(e.map(), &PartialBijection::from_pairs(2, 2, &[(2, 2)]).unwrap());
    }

    #[test]
    fn contexts_are_checked() {
        let ev = Evaluator::trivial();
        assert!(ev.symbol(&Symbol::Lambda(1), Context::Monoid(2)).is_err());
        assert!(ev.symbol(&Symbol::S(1), Context::Typed).is_err());
        assert!(ev.symbol(&Symbol::S(2), Context::Monoid(2)).is_err());
        assert!(matches!(
            ev.symbol(&Symbol::Tagged { letter: 0, i: 1 }, Context::Monoid(2)),
            Err(Error::AlphabetMismatch { .. })
        ));
        let bicyclic = BaseMonoid::builtin("bicyclic").unwrap();
        assert!(matches!(Evaluator::new(&bicyclic), Err(Error::NoEvaluation(_))));
    }

    #[test]
    fn tensor_generators() {
        let ev = Evaluator::new(&BaseMonoid::builtin("c2").unwrap()).unwrap();
        let u = ev.symbol(&Symbol::Cap, Context::Typed).unwrap();
        assert_eq!((u.source(), u.target()), (1, 0));
        let ubar = ev.symbol(&Symbol::Cup, Context::Typed).unwrap();
        assert_eq!((ubar.source(), ubar.target()), (0, 1));
        let x = ev.symbol(&Symbol::Letter(0), Context::Typed).unwrap();
        assert_eq!(x.tuple().entries(), &[2]);
        let lam_rho = ev
            .path(&Path::from_edges(vec![Symbol::Lambda(2), Symbol::Rho(2)]).unwrap())
            .unwrap();
        assert_eq!(lam_rho, WreathElement::identity(ev.m0(), 2));
    }
}
