use super::term::TensorTerm;
use super::{Path, Symbol, Word};
use crate::error::{Error, Result};

fn mismatch(symbol: &Symbol, context: &str) -> Error {
    Error::AlphabetMismatch {
        symbol: format!("{symbol:?}"),
        context: context.into(),
    }
}

/// `s_{i-1} ⋯ s_1 · middle · s_1 ⋯ s_{i-1}`
fn conjugate_to(i: usize, middle: Symbol) -> Word {
    let mut w: Word = (1..i).rev().map(Symbol::S).collect();
    w.push(middle);
    w.extend((1..i).map(Symbol::S));
    w
}

/// From the large alphabet `{s_i, e_i, x^{(i)}}` to the small one `{s_i, e} ∪ X_M`.
pub fn psi1(word: &[Symbol]) -> Result<Word> {
    let mut out = Vec::new();
    for s in word {
        match *s {
            Symbol::S(i) => out.push(Symbol::S(i)),
            Symbol::E(i) => out.extend(conjugate_to(i, Symbol::SingleE)),
            Symbol::Tagged { letter, i } => out.extend(conjugate_to(i, Symbol::Letter(letter))),
            _ => return Err(mismatch(s, "the alphabet {s_i, e_i, x^(i)}")),
        }
    }
    Ok(out)
}

/// From the small alphabet back to the large one: `e ↦ e_1`, `x ↦ x^{(1)}`.
pub fn psi2(word: &[Symbol]) -> Result<Word> {
    word.iter()
        .map(|s| match *s {
            Symbol::S(i) => Ok(Symbol::S(i)),
            Symbol::SingleE => Ok(Symbol::E(1)),
            Symbol::Letter(letter) => Ok(Symbol::Tagged { letter, i: 1 }),
            _ => Err(mismatch(s, "the alphabet {s_i, e} with base letters")),
        })
        .collect()
}

/// The reverse `w^{-1}` of a word over `{s_1, …, s_{n-1}}`.
pub fn reverse(word: &[Symbol]) -> Result<Word> {
    word.iter()
        .rev()
        .map(|s| match s {
            Symbol::S(_) => Ok(*s),
            _ => Err(mismatch(s, "the alphabet {s_i}")),
        })
        .collect()
}

/// `x ↦ x⁺`: shifts a level-`n` generator to level `n + 1`.
pub fn plus(path: &Path) -> Result<Path> {
    let edges = path
        .edges()
        .iter()
        .map(|s| match *s {
            Symbol::LevelS { i, n } => Ok(Symbol::LevelS { i, n: n + 1 }),
            Symbol::LevelE { i, n } => Ok(Symbol::LevelE { i, n: n + 1 }),
            Symbol::LevelTagged { letter, i, n } => Ok(Symbol::LevelTagged { letter, i, n: n + 1 }),
            _ => Err(mismatch(s, "a level alphabet X_n")),
        })
        .collect::<Result<Vec<_>>>()?;
    Path::new(path.source() + 1, edges)
}

fn edge(symbol: Symbol) -> TensorTerm {
    TensorTerm::edge(symbol).expect("tensor edge")
}

/// The image of a category edge as a tensor term.
pub fn hat_symbol(symbol: &Symbol) -> Result<TensorTerm> {
    let id = TensorTerm::identity;
    Ok(match *symbol {
        Symbol::LevelS { i, n } => TensorTerm::sum_all([id(i - 1), edge(Symbol::Swap), id(n - i - 1)]),
        Symbol::LevelE { i, n } => TensorTerm::sum_all([
            id(i - 1),
            edge(Symbol::Cap),
            edge(Symbol::Cup),
            id(n - i),
        ]),
        Symbol::LevelTagged { letter, i, n } => {
            TensorTerm::sum_all([id(i - 1), edge(Symbol::Letter(letter)), id(n - i)])
        }
        Symbol::Lambda(n) => TensorTerm::sum_all([id(n), edge(Symbol::Cup)]),
        Symbol::Rho(n) => TensorTerm::sum_all([id(n), edge(Symbol::Cap)]),
        _ => return Err(mismatch(symbol, "the category digraph")),
    })
}

/// The hat map on paths: `ι_n ↦ ι_n`, concatenation to `∘`.
pub fn hat(path: &Path) -> Result<TensorTerm> {
    let parts = path.edges().iter().map(hat_symbol).collect::<Result<Vec<_>>>()?;
    TensorTerm::compose_all(parts, path.source())
}

/// `x_{m,n} = ι_m ⊕ x ⊕ ι_n`, together with a path whose hat is equivalent.
pub fn x_mn_decompose(symbol: &Symbol, m: usize, n: usize) -> Result<(TensorTerm, Path)> {
    if !symbol.is_tensor_edge() {
        return Err(mismatch(symbol, "the tensor digraph"));
    }
    let term = TensorTerm::sum_all([
        TensorTerm::identity(m),
        edge(*symbol),
        TensorTerm::identity(n),
    ]);
    let top = m + n + 1;
    let path = match *symbol {
        Symbol::Swap => Path::new(m + n + 2, vec![Symbol::LevelS { i: m + 1, n: m + n + 2 }])?,
        Symbol::Letter(letter) => Path::new(top, vec![Symbol::LevelTagged { letter, i: m + 1, n: top }])?,
        Symbol::Cap => {
            let mut edges: Vec<Symbol> = (m + 1..=m + n).map(|i| Symbol::LevelS { i, n: top }).collect();
            edges.push(Symbol::Rho(m + n));
            Path::new(top, edges)?
        }
        Symbol::Cup => {
            let mut edges = vec![Symbol::Lambda(m + n)];
            edges.extend((m + 1..=m + n).rev().map(|i| Symbol::LevelS { i, n: top }));
            Path::new(m + n, edges)?
        }
        _ => unreachable!(),
    };
    Ok((term, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseMonoid;
    use crate::words::Evaluator;

    #[test]
    fn psi_maps_on_generators() {
        assert_eq!(psi2(&[Symbol::SingleE]).unwrap(), vec![Symbol::E(1)]);
        assert_eq!(
            psi2(&[Symbol::Letter(0)]).unwrap(),
            vec![Symbol::Tagged { letter: 0, i: 1 }]
        );
        for z in [Symbol::S(2), Symbol::SingleE, Symbol::Letter(1)] {
            assert_eq!(psi1(&psi2(&[z]).unwrap()).unwrap(), vec![z]);
        }
        assert_eq!(
            psi1(&[Symbol::E(3)]).unwrap(),
            vec![Symbol::S(2), Symbol::S(1), Symbol::SingleE, Symbol::S(1), Symbol::S(2)]
        );
        assert!(psi1(&[Symbol::F(1, 2)]).is_err());
        assert!(psi2(&[Symbol::E(1)]).is_err());
    }

    #[test]
    fn hats_evaluate_like_their_edges() {
        let ev = Evaluator::new(&BaseMonoid::builtin("c2").unwrap()).unwrap();
        for n in 0..=3 {
            let mut edges = vec![Symbol::Lambda(n)];
            if n > 0 {
                edges.push(Symbol::Rho(n - 1));
            }
            for i in 1..=n {
                edges.push(Symbol::LevelE { i, n });
                edges.push(Symbol::LevelTagged { letter: 0, i, n });
                if i < n {
                    edges.push(Symbol::LevelS { i, n });
                }
            }
            for e in edges {
                let p = Path::from_edges(vec![e]).unwrap();
                assert_eq!(ev.term(&hat(&p).unwrap()).unwrap(), ev.path(&p).unwrap(), "{e:?}");
            }
        }
        assert!(hat(&Path::empty(2)).unwrap().is_identity_at(2));
    }

    #[test]
    fn decompositions_evaluate_equal() {
        let ev = Evaluator::new(&BaseMonoid::builtin("c2").unwrap()).unwrap();
        let (t, p) = x_mn_decompose(&Symbol::Swap, 0, 0).unwrap();
        assert_eq!(t, TensorTerm::edge(Symbol::Swap).unwrap());
        assert_eq!(p.edges(), &[Symbol::LevelS { i: 1, n: 2 }]);
        let (t, p) = x_mn_decompose(&Symbol::Cap, 1, 1).unwrap();
        assert_eq!(ev.term(&t).unwrap(), ev.term(&hat(&p).unwrap()).unwrap());
        assert!(x_mn_decompose(&Symbol::Lambda(1), 0, 0).is_err());
    }

    #[test]
    fn reverse_and_plus() {
        assert_eq!(
            reverse(&[Symbol::S(1), Symbol::S(2)]).unwrap(),
            vec![Symbol::S(2), Symbol::S(1)]
        );
        assert!(reverse(&[Symbol::E(1)]).is_err());
        let p = Path::new(2, vec![Symbol::LevelS { i: 1, n: 2 }]).unwrap();
        assert_eq!(plus(&p).unwrap().edges(), &[Symbol::LevelS { i: 1, n: 3 }]);
        assert!(plus(&Path::from_edges(vec![Symbol::Lambda(1)]).unwrap()).is_err());
    }
}
