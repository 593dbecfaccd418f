//! The ten presentations, instantiated for a given base presentation and level.
//!
//! Relations are emitted schema by schema with indices in lexicographic order.
//! A chain `A = B = C` becomes the pairs `(A, B)` and `(B, C)`, trivial pairs are
//! dropped, and a pair already emitted in either orientation is not repeated.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::base::BaseMonoid;
use crate::error::{Error, Result};
use crate::words::{
    format_path, format_term, format_word, parse_path, parse_term, parse_word, tag_word,
    tag_zero_word, Context, Evaluator, Path, Symbol, TensorTerm, Word,
};
use crate::wreath::WreathElement;

/// Largest level (or object cap) a presentation may be built at.
pub const MAX_LEVEL: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PresentationKind {
    #[serde(rename = "r-in")]
    RIn,
    #[serde(rename = "r-in-popova")]
    RInPopova,
    #[serde(rename = "r-min")]
    RMIn,
    #[serde(rename = "r-min-small")]
    RMInSmall,
    #[serde(rename = "omega-mi")]
    OmegaMI,
    #[serde(rename = "xi-i")]
    XiI,
    #[serde(rename = "xi-mi")]
    XiMI,
    #[serde(rename = "r-sing-in")]
    RSingIn,
    #[serde(rename = "r-sing-tuples")]
    RSingTuples,
    #[serde(rename = "r-m-sing-in")]
    RMSingIn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Monoid,
    Semigroup,
    Category,
    Tensor,
}

impl PresentationKind {
    pub const ALL: [PresentationKind; 10] = [
        PresentationKind::RIn,
        PresentationKind::RInPopova,
        PresentationKind::RMIn,
        PresentationKind::RMInSmall,
        PresentationKind::OmegaMI,
        PresentationKind::XiI,
        PresentationKind::XiMI,
        PresentationKind::RSingIn,
        PresentationKind::RSingTuples,
        PresentationKind::RMSingIn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::RIn => "r-in",
            PresentationKind::RInPopova => "r-in-popova",
            PresentationKind::RMIn => "r-min",
            PresentationKind::RMInSmall => "r-min-small",
            PresentationKind::OmegaMI => "omega-mi",
            PresentationKind::XiI => "xi-i",
            PresentationKind::XiMI => "xi-mi",
            PresentationKind::RSingIn => "r-sing-in",
            PresentationKind::RSingTuples => "r-sing-tuples",
            PresentationKind::RMSingIn => "r-m-sing-in",
        }
    }

    fn long_name(self) -> &'static str {
        match self {
            PresentationKind::RIn => "R_In",
            PresentationKind::RInPopova => "R_In_popova",
            PresentationKind::RMIn => "R_MIn",
            PresentationKind::RMInSmall => "R_MIn_small",
            PresentationKind::OmegaMI => "Omega_MI",
            PresentationKind::XiI => "Xi_I",
            PresentationKind::XiMI => "Xi_MI",
            PresentationKind::RSingIn => "R_SingIn",
            PresentationKind::RSingTuples => "R_SingTuples",
            PresentationKind::RMSingIn => "R_MSingIn",
        }
    }

    pub fn flavor(self) -> Flavor {
        match self {
            PresentationKind::RIn
            | PresentationKind::RInPopova
            | PresentationKind::RMIn
            | PresentationKind::RMInSmall => Flavor::Monoid,
            PresentationKind::RSingIn | PresentationKind::RSingTuples | PresentationKind::RMSingIn => {
                Flavor::Semigroup
            }
            PresentationKind::OmegaMI => Flavor::Category,
            PresentationKind::XiI | PresentationKind::XiMI => Flavor::Tensor,
        }
    }

    /// Whether the presentation involves the base monoid at all.
    pub fn uses_base(self) -> bool {
        !matches!(
            self,
            PresentationKind::RIn
                | PresentationKind::RInPopova
                | PresentationKind::RSingIn
                | PresentationKind::XiI
        )
    }

    /// Smallest meaningful level (object cap for the category kind).
    pub fn min_level(self) -> usize {
        match self.flavor() {
            Flavor::Semigroup => 2,
            Flavor::Tensor => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresentationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresentationKind::ALL
            .into_iter()
            .find(|k| k.name() == s || k.long_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = PresentationKind::ALL.iter().map(|k| k.name()).collect();
                Error::InvalidParams(format!("unknown kind {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// One side of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Word(Word),
    Path(Path),
    Term(TensorTerm),
}

impl Expr {
    pub fn is_empty_word(&self) -> bool {
        matches!(self, Expr::Word(w) if w.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub schema: &'static str,
    pub lhs: Expr,
    pub rhs: Expr,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    kind: PresentationKind,
    base: BaseMonoid,
    n: usize,
    generators: Vec<Symbol>,
    relations: Vec<Relation>,
}

struct Builder {
    relations: Vec<Relation>,
    seen: HashSet<(Expr, Expr)>,
}

impl Builder {
    fn new() -> Self {
        Self {
            relations: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn push(&mut self, schema: &'static str, lhs: Expr, rhs: Expr) {
        if lhs == rhs {
            return;
        }
        let key = (lhs, rhs);
        let flipped = (key.1.clone(), key.0.clone());
        if self.seen.contains(&key) || self.seen.contains(&flipped) {
            return;
        }
        self.seen.insert(key.clone());
        self.relations.push(Relation {
            schema,
            lhs: key.0,
            rhs: key.1,
        });
    }

    fn chain(&mut self, schema: &'static str, parts: Vec<Expr>) {
        for pair in parts.windows(2) {
            self.push(schema, pair[0].clone(), pair[1].clone());
        }
    }
}

/// How `s_i`, `e_i` and `x^{(i)}` are spelled: plainly, or at a fixed level.
#[derive(Clone, Copy)]
enum Letters {
    Plain,
    Level(usize),
}

impl Letters {
    fn s(self, i: usize) -> Symbol {
        match self {
            Letters::Plain => Symbol::S(i),
            Letters::Level(n) => Symbol::LevelS { i, n },
        }
    }

    fn e(self, i: usize) -> Symbol {
        match self {
            Letters::Plain => Symbol::E(i),
            Letters::Level(n) => Symbol::LevelE { i, n },
        }
    }

    fn x(self, letter: u16, i: usize) -> Symbol {
        match self {
            Letters::Plain => Symbol::Tagged { letter, i },
            Letters::Level(n) => Symbol::LevelTagged { letter, i, n },
        }
    }

    fn tag(self, word: &[u16], i: usize) -> Word {
        word.iter().map(|&x| self.x(x, i)).collect()
    }
}

fn w<const K: usize>(symbols: [Symbol; K]) -> Word {
    symbols.to_vec()
}

/// Instances of one schema over `{s_i, e_i, x^{(i)}}`, each a chain of words.
fn full_schema(name: &str, a: Letters, n: usize, base: &BaseMonoid) -> Vec<Vec<Word>> {
    let letters = base.presentation().letter_count() as u16;
    let mut out = Vec::new();
    match name {
        "s-square" => {
            for i in 1..n {
                out.push(vec![w([a.s(i), a.s(i)]), vec![]]);
            }
        }
        "s-far-commute" => {
            for i in 1..n {
                for j in (1..n).filter(|&j| i.abs_diff(j) > 1) {
                    out.push(vec![w([a.s(i), a.s(j)]), w([a.s(j), a.s(i)])]);
                }
            }
        }
        "s-braid" => {
            for i in 1..n {
                for j in (1..n).filter(|&j| i.abs_diff(j) == 1) {
                    out.push(vec![
                        w([a.s(i), a.s(j), a.s(i)]),
                        w([a.s(j), a.s(i), a.s(j)]),
                    ]);
                }
            }
        }
        "e-idempotent" => {
            for i in 1..=n {
                out.push(vec![w([a.e(i), a.e(i)]), w([a.e(i)])]);
            }
        }
        "e-commute" => {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    out.push(vec![w([a.e(i), a.e(j)]), w([a.e(j), a.e(i)])]);
                }
            }
        }
        "s-e-far-commute" => {
            for i in 1..n {
                for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                    out.push(vec![w([a.s(i), a.e(j)]), w([a.e(j), a.s(i)])]);
                }
            }
        }
        "s-e-conjugate" => {
            for i in 1..n {
                out.push(vec![w([a.s(i), a.e(i)]), w([a.e(i + 1), a.s(i)])]);
            }
        }
        "e-e-s-absorb" => {
            for i in 1..n {
                out.push(vec![
                    w([a.e(i), a.e(i + 1), a.s(i)]),
                    w([a.e(i), a.e(i + 1)]),
                ]);
            }
        }
        "base-relation" => {
            for i in 1..=n {
                for (u, v) in base.presentation().relations() {
                    out.push(vec![a.tag(u, i), a.tag(v, i)]);
                }
            }
        }
        "tuple-commute" => {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    for x in 0..letters {
                        for y in 0..letters {
                            out.push(vec![w([a.x(x, i), a.x(y, j)]), w([a.x(y, j), a.x(x, i)])]);
                        }
                    }
                }
            }
        }
        "s-tuple-far-commute" => {
            for i in 1..n {
                for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                    for x in 0..letters {
                        out.push(vec![w([a.s(i), a.x(x, j)]), w([a.x(x, j), a.s(i)])]);
                    }
                }
            }
        }
        "s-tuple-conjugate" => {
            for i in 1..n {
                for x in 0..letters {
                    out.push(vec![w([a.s(i), a.x(x, i)]), w([a.x(x, i + 1), a.s(i)])]);
                }
            }
        }
        "e-tuple-commute" => {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    for x in 0..letters {
                        out.push(vec![w([a.e(i), a.x(x, j)]), w([a.x(x, j), a.e(i)])]);
                    }
                }
            }
        }
        "e-tuple-absorb" => {
            for i in 1..=n {
                for x in 0..letters {
                    out.push(vec![
                        w([a.e(i), a.x(x, i)]),
                        w([a.e(i)]),
                        w([a.x(x, i), a.e(i)]),
                    ]);
                }
            }
        }
        _ => unreachable!("unknown schema {name}"),
    }
    out
}

/// Instances of one schema over `{s_i, e} ∪ X_M`.
fn small_schema(name: &str, n: usize, base: &BaseMonoid) -> Vec<Vec<Word>> {
    let letters = base.presentation().letter_count() as u16;
    let e = Symbol::SingleE;
    let s = Symbol::S;
    let x = Symbol::Letter;
    let mut out = Vec::new();
    match name {
        "e-idempotent" => out.push(vec![w([e, e]), w([e])]),
        "e-s-e-s" if n >= 2 => out.push(vec![
            w([e, s(1), e, s(1)]),
            w([e, s(1), e]),
            w([s(1), e, s(1), e]),
        ]),
        "e-s-commute" => {
            for i in 2..n {
                out.push(vec![w([e, s(i)]), w([s(i), e])]);
            }
        }
        "base-relation" => {
            for (u, v) in base.presentation().relations() {
                out.push(vec![
                    u.iter().map(|&l| x(l)).collect(),
                    v.iter().map(|&l| x(l)).collect(),
                ]);
            }
        }
        "s-letter-commute" => {
            for i in 2..n {
                for l in 0..letters {
                    out.push(vec![w([s(i), x(l)]), w([x(l), s(i)])]);
                }
            }
        }
        "letter-s-letter-s" if n >= 2 => {
            for l in 0..letters {
                for m in 0..letters {
                    out.push(vec![
                        w([x(l), s(1), x(m), s(1)]),
                        w([s(1), x(m), s(1), x(l)]),
                    ]);
                }
            }
        }
        "e-s-letter-s" if n >= 2 => {
            for l in 0..letters {
                out.push(vec![
                    w([e, s(1), x(l), s(1)]),
                    w([s(1), x(l), s(1), e]),
                ]);
            }
        }
        "e-letter-absorb" => {
            for l in 0..letters {
                out.push(vec![w([e, x(l)]), w([x(l), e]), w([e])]);
            }
        }
        "e-s-e-s" | "letter-s-letter-s" | "e-s-letter-s" => {}
        _ => unreachable!("unknown schema {name}"),
    }
    out
}

/// All ordered tuples of distinct indices in `1..=n`, lexicographically.
fn distinct<const K: usize>(n: usize) -> Vec<[usize; K]> {
    let mut out = Vec::new();
    let mut current = [0usize; K];
    fn go<const K: usize>(n: usize, depth: usize, current: &mut [usize; K], out: &mut Vec<[usize; K]>) {
        if depth == K {
            out.push(*current);
            return;
        }
        for v in 1..=n {
            if !current[..depth].contains(&v) {
                current[depth] = v;
                go(n, depth + 1, current, out);
            }
        }
    }
    go(n, 0, &mut current, &mut out);
    out
}

fn f(i: usize, j: usize) -> Symbol {
    Symbol::F(i, j)
}

fn xz(letter: u16, i: usize, j: usize) -> Symbol {
    Symbol::TaggedZero { letter, i, j }
}

/// Instances of one schema over `{f_{i,j}, e_i, x^{(i;j)}}`.
fn sing_schema(name: &str, n: usize, base: &BaseMonoid) -> Vec<Vec<Word>> {
    let letters = base.presentation().letter_count() as u16;
    let e = Symbol::E;
    let mut out = Vec::new();
    match name {
        "f-regular" => {
            for [i, j] in distinct(n) {
                out.push(vec![w([f(i, j), f(j, i), f(i, j)]), w([f(i, j)])]);
            }
        }
        "f-square" => {
            for [i, j] in distinct(n) {
                out.push(vec![
                    w([f(i, j); 3]),
                    w([f(i, j); 2]),
                    w([f(j, i); 2]),
                ]);
            }
        }
        "f-far-commute" => {
            for [i, j, k, l] in distinct(n) {
                out.push(vec![w([f(i, j), f(k, l)]), w([f(k, l), f(i, j)])]);
            }
        }
        "f-pair" => {
            for [i, j, k] in distinct(n) {
                out.push(vec![w([f(i, j), f(j, i)]), w([f(i, k), f(k, i)])]);
            }
        }
        "f-share" => {
            for [i, j, k] in distinct(n) {
                out.push(vec![
                    w([f(i, j), f(i, k)]),
                    w([f(j, k), f(i, j)]),
                    w([f(i, k), f(j, k)]),
                ]);
            }
        }
        "f-triangle" => {
            for [i, j, k] in distinct(n) {
                out.push(vec![
                    w([f(k, i), f(i, j), f(j, k)]),
                    w([f(k, j), f(j, i), f(i, k)]),
                ]);
            }
        }
        "f-square-cycle" => {
            for [i, j, k, l] in distinct(n) {
                out.push(vec![
                    w([f(k, i), f(i, j), f(j, k), f(k, l)]),
                    w([f(k, l), f(l, i), f(i, j), f(j, l)]),
                ]);
            }
        }
        "e-idempotent" | "e-commute" => return full_schema(name, Letters::Plain, n, base),
        "base-relation" => {
            for [i, j] in distinct(n) {
                for (u, v) in base.presentation().relations() {
                    out.push(vec![tag_zero_word(u, i, j), tag_zero_word(v, i, j)]);
                }
            }
        }
        "tuple-e-commute" => {
            for [i, j] in distinct(n) {
                for k in (1..=n).filter(|&k| k != i && k != j) {
                    for x in 0..letters {
                        out.push(vec![
                            w([xz(x, i, j), e(k)]),
                            w([e(k), xz(x, i, j)]),
                            w([e(j), xz(x, i, k)]),
                        ]);
                    }
                }
            }
        }
        "tuple-e-zero" => {
            for [i, j] in distinct(n) {
                for x in 0..letters {
                    out.push(vec![
                        w([xz(x, i, j), e(j)]),
                        w([e(j), xz(x, i, j)]),
                        w([xz(x, i, j)]),
                    ]);
                }
            }
        }
        "tuple-e-kill" => {
            for [i, j] in distinct(n) {
                for x in 0..letters {
                    out.push(vec![
                        w([xz(x, i, j), e(i)]),
                        w([e(i), xz(x, i, j)]),
                        w([e(i), e(j)]),
                    ]);
                }
            }
        }
        "tuple-commute" => {
            for [i, j, k] in distinct(n) {
                for x in 0..letters {
                    for y in 0..letters {
                        out.push(vec![
                            w([xz(x, i, k), xz(y, j, k)]),
                            w([xz(y, j, k), xz(x, i, k)]),
                        ]);
                    }
                }
            }
        }
        "f-inverse" => {
            for [i, j] in distinct(n) {
                out.push(vec![w([f(i, j), f(j, i)]), w([e(i)])]);
            }
        }
        "f-tuple-swap" => {
            for [i, j] in distinct(n) {
                for x in 0..letters {
                    out.push(vec![w([f(i, j), xz(x, i, j)]), w([xz(x, j, i), f(i, j)])]);
                }
            }
        }
        "f-tuple-move" => {
            for [i, j, k] in distinct(n) {
                for x in 0..letters {
                    out.push(vec![w([f(i, j), xz(x, i, k)]), w([xz(x, j, k), f(i, j)])]);
                }
            }
        }
        "f-tuple-fix" => {
            // k ranges over everything but i, so k = j is included
            for [i, j] in distinct(n) {
                for k in (1..=n).filter(|&k| k != i) {
                    for x in 0..letters {
                        out.push(vec![w([f(i, j), xz(x, k, i)]), w([xz(x, k, i), e(j)])]);
                    }
                }
            }
        }
        "f-tuple-absorb" => {
            // k ranges over everything but j: both k = i and k distinct from i, j
            for [i, j] in distinct(n) {
                for k in (1..=n).filter(|&k| k != j) {
                    for x in 0..letters {
                        out.push(vec![w([f(i, j), xz(x, j, k)]), w([f(i, j), f(k, j)])]);
                    }
                }
            }
        }
        "f-tuple-rezero" => {
            for [i, j, k] in distinct(n) {
                for x in 0..letters {
                    out.push(vec![w([f(i, j), xz(x, k, j)]), w([xz(x, k, i), f(i, j)])]);
                }
            }
        }
        "f-tuple-far-commute" => {
            for [i, j] in distinct(n) {
                for [k, l] in distinct(n) {
                    if [k, l].iter().any(|v| *v == i || *v == j) {
                        continue;
                    }
                    for x in 0..letters {
                        out.push(vec![w([f(i, j), xz(x, k, l)]), w([xz(x, k, l), f(i, j)])]);
                    }
                }
            }
        }
        _ => unreachable!("unknown schema {name}"),
    }
    out
}

const IN_SCHEMAS: [&str; 8] = [
    "s-square",
    "s-far-commute",
    "s-braid",
    "e-idempotent",
    "e-commute",
    "s-e-far-commute",
    "s-e-conjugate",
    "e-e-s-absorb",
];

const MIN_SCHEMAS: [&str; 6] = [
    "base-relation",
    "tuple-commute",
    "s-tuple-far-commute",
    "s-tuple-conjugate",
    "e-tuple-commute",
    "e-tuple-absorb",
];

const LEVEL_SCHEMAS: [&str; 14] = [
    "s-square",
    "e-idempotent",
    "e-commute",
    "s-e-far-commute",
    "s-e-conjugate",
    "e-e-s-absorb",
    "s-far-commute",
    "s-braid",
    "base-relation",
    "tuple-commute",
    "s-tuple-far-commute",
    "s-tuple-conjugate",
    "e-tuple-commute",
    "e-tuple-absorb",
];

const SMALL_E_SCHEMAS: [&str; 3] = ["e-idempotent", "e-s-e-s", "e-s-commute"];

const SMALL_SCHEMAS: [&str; 5] = [
    "base-relation",
    "s-letter-commute",
    "letter-s-letter-s",
    "e-s-letter-s",
    "e-letter-absorb",
];

const SING_SCHEMAS: [&str; 7] = [
    "f-regular",
    "f-square",
    "f-far-commute",
    "f-pair",
    "f-share",
    "f-triangle",
    "f-square-cycle",
];

const TUPLE_SCHEMAS: [&str; 7] = [
    "e-idempotent",
    "e-commute",
    "base-relation",
    "tuple-e-commute",
    "tuple-e-zero",
    "tuple-e-kill",
    "tuple-commute",
];

const MSING_SCHEMAS: [&str; 7] = [
    "f-inverse",
    "f-tuple-swap",
    "f-tuple-move",
    "f-tuple-fix",
    "f-tuple-absorb",
    "f-tuple-rezero",
    "f-tuple-far-commute",
];

fn push_words(b: &mut Builder, schema: &'static str, chains: Vec<Vec<Word>>) {
    for chain in chains {
        b.chain(schema, chain.into_iter().map(Expr::Word).collect());
    }
}

fn push_paths(b: &mut Builder, schema: &'static str, level: usize, chains: Vec<Vec<Word>>) -> Result<()> {
    for chain in chains {
        let paths = chain
            .into_iter()
            .map(|edges| Path::new(level, edges).map(Expr::Path))
            .collect::<Result<Vec<_>>>()?;
        b.chain(schema, paths);
    }
    Ok(())
}

fn level_generators(n: usize, letters: u16) -> Vec<Symbol> {
    let a = Letters::Level(n);
    let mut out: Vec<Symbol> = (1..n).map(|i| a.s(i)).collect();
    out.extend((1..=n).map(|i| a.e(i)));
    for i in 1..=n {
        out.extend((0..letters).map(|x| a.x(x, i)));
    }
    out
}

fn edge(symbol: Symbol) -> TensorTerm {
    TensorTerm::edge(symbol).expect("tensor edge")
}

fn compose(parts: Vec<TensorTerm>, object: usize) -> Result<Expr> {
    TensorTerm::compose_all(parts, object).map(Expr::Term)
}

fn xi_relations(b: &mut Builder, base: Option<&BaseMonoid>) -> Result<()> {
    let id = TensorTerm::identity;
    let sum = TensorTerm::sum;
    let (x, u, ubar) = (edge(Symbol::Swap), edge(Symbol::Cap), edge(Symbol::Cup));
    if let Some(base) = base {
        for (l, r) in base.presentation().relations() {
            let side = |word: &[u16]| compose(word.iter().map(|&a| edge(Symbol::Letter(a))).collect(), 1);
            b.push("base-relation", side(l)?, side(r)?);
        }
    }
    b.push("swap-square", compose(vec![x.clone(), x.clone()], 2)?, Expr::Term(id(2)));
    let xi = sum(x.clone(), id(1));
    let ix = sum(id(1), x.clone());
    b.push(
        "swap-braid",
        compose(vec![xi.clone(), ix.clone(), xi.clone()], 3)?,
        compose(vec![ix.clone(), xi, ix], 3)?,
    );
    b.push("cup-cap", compose(vec![ubar.clone(), u.clone()], 0)?, Expr::Term(id(0)));
    b.push(
        "swap-cap",
        compose(vec![x.clone(), sum(u.clone(), id(1))], 2)?,
        Expr::Term(sum(id(1), u.clone())),
    );
    b.push(
        "cup-swap",
        compose(vec![sum(ubar.clone(), id(1)), x.clone()], 1)?,
        Expr::Term(sum(id(1), ubar.clone())),
    );
    if let Some(base) = base {
        let letters = base.presentation().letter_count() as u16;
        for a in 0..letters {
            let l = edge(Symbol::Letter(a));
            b.push(
                "swap-letter",
                compose(vec![x.clone(), sum(l.clone(), id(1))], 2)?,
                compose(vec![sum(id(1), l), x.clone()], 2)?,
            );
        }
        for a in 0..letters {
            let l = edge(Symbol::Letter(a));
            b.push("letter-cap", compose(vec![l, u.clone()], 1)?, Expr::Term(u.clone()));
        }
        for a in 0..letters {
            let l = edge(Symbol::Letter(a));
            b.push("cup-letter", compose(vec![ubar.clone(), l], 0)?, Expr::Term(ubar.clone()));
        }
    }
    Ok(())
}

fn omega_relations(b: &mut Builder, cap: usize, base: &BaseMonoid) -> Result<()> {
    let letters = base.presentation().letter_count() as u16;
    for n in 0..=cap {
        let a = Letters::Level(n);
        for name in LEVEL_SCHEMAS {
            push_paths(b, name, n, full_schema(name, a, n, base))?;
        }
        if n + 1 > cap {
            continue;
        }
        let up = Letters::Level(n + 1);
        let (lam, rho) = (Symbol::Lambda(n), Symbol::Rho(n));
        push_paths(b, "lambda-rho", n, vec![vec![w([lam, rho]), vec![]]])?;
        push_paths(b, "rho-lambda", n + 1, vec![vec![w([rho, lam]), w([up.e(n + 1)])]])?;
        let mut shift = Vec::new();
        shift.extend((1..n).map(|i| (a.s(i), up.s(i))));
        shift.extend((1..=n).map(|i| (a.e(i), up.e(i))));
        for i in 1..=n {
            shift.extend((0..letters).map(|x| (a.x(x, i), up.x(x, i))));
        }
        let lambda: Vec<Vec<Word>> = shift
            .iter()
            .map(|&(low, high)| vec![w([low, lam]), w([lam, high])])
            .collect();
        push_paths(b, "lambda-shift", n, lambda)?;
        let rho_chains: Vec<Vec<Word>> = shift
            .iter()
            .map(|&(low, high)| vec![w([rho, low]), w([high, rho])])
            .collect();
        push_paths(b, "rho-shift", n + 1, rho_chains)?;
    }
    Ok(())
}

impl Presentation {
    /// Builds the presentation of `kind` at level `n` (object cap for the
    /// category kind; ignored by the tensor kinds).
    pub fn build(kind: PresentationKind, base: &BaseMonoid, n: usize) -> Result<Self> {
        if kind.flavor() != Flavor::Tensor && !(kind.min_level()..=MAX_LEVEL).contains(&n) {
            return Err(Error::InvalidParams(format!(
                "{kind} needs a level between {} and {MAX_LEVEL}, got {n}",
                kind.min_level()
            )));
        }
        let base = if kind.uses_base() {
            base.clone()
        } else {
            BaseMonoid::builtin("trivial")?
        };
        let letters = base.presentation().letter_count() as u16;
        let mut b = Builder::new();
        let mut generators = Vec::new();
        match kind {
            PresentationKind::RIn | PresentationKind::RMIn => {
                generators.extend((1..n).map(Symbol::S));
                generators.extend((1..=n).map(Symbol::E));
                for name in IN_SCHEMAS {
                    push_words(&mut b, name, full_schema(name, Letters::Plain, n, &base));
                }
                if kind == PresentationKind::RMIn {
                    for i in 1..=n {
                        generators.extend(tag_word(&(0..letters).collect::<Vec<_>>(), i));
                    }
                    for name in MIN_SCHEMAS {
                        push_words(&mut b, name, full_schema(name, Letters::Plain, n, &base));
                    }
                }
            }
            PresentationKind::RInPopova | PresentationKind::RMInSmall => {
                generators.extend((1..n).map(Symbol::S));
                generators.push(Symbol::SingleE);
                for name in &IN_SCHEMAS[..3] {
                    push_words(&mut b, name, full_schema(name, Letters::Plain, n, &base));
                }
                for name in SMALL_E_SCHEMAS {
                    push_words(&mut b, name, small_schema(name, n, &base));
                }
                if kind == PresentationKind::RMInSmall {
                    generators.extend((0..letters).map(Symbol::Letter));
                    for name in SMALL_SCHEMAS {
                        push_words(&mut b, name, small_schema(name, n, &base));
                    }
                }
            }
            PresentationKind::OmegaMI => {
                for level in 0..=n {
                    generators.extend(level_generators(level, letters));
                    if level < n {
                        generators.extend([Symbol::Lambda(level), Symbol::Rho(level)]);
                    }
                }
                omega_relations(&mut b, n, &base)?;
            }
            PresentationKind::XiI | PresentationKind::XiMI => {
                generators.extend([Symbol::Swap, Symbol::Cap, Symbol::Cup]);
                if kind == PresentationKind::XiMI {
                    generators.extend((0..letters).map(Symbol::Letter));
                }
                xi_relations(&mut b, (kind == PresentationKind::XiMI).then_some(&base))?;
            }
            PresentationKind::RSingIn | PresentationKind::RSingTuples | PresentationKind::RMSingIn => {
                let with_f = kind != PresentationKind::RSingTuples;
                let with_tuples = kind != PresentationKind::RSingIn;
                if with_f {
                    generators.extend(distinct(n).into_iter().map(|[i, j]| f(i, j)));
                    for name in SING_SCHEMAS {
                        push_words(&mut b, name, sing_schema(name, n, &base));
                    }
                }
                if with_tuples {
                    generators.extend((1..=n).map(Symbol::E));
                    for [i, j] in distinct(n) {
                        generators.extend((0..letters).map(|x| xz(x, i, j)));
                    }
                    for name in TUPLE_SCHEMAS {
                        push_words(&mut b, name, sing_schema(name, n, &base));
                    }
                }
                if with_f && with_tuples {
                    for name in MSING_SCHEMAS {
                        push_words(&mut b, name, sing_schema(name, n, &base));
                    }
                }
            }
        }
        Ok(Self {
            kind,
            base,
            n,
            generators,
            relations: b.relations,
        })
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn flavor(&self) -> Flavor {
        self.kind.flavor()
    }

    /// The base monoid actually used (trivial for kinds that ignore it).
    pub fn base(&self) -> &BaseMonoid {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Symbol] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Names of the base letters.
    pub fn letter_names(&self) -> &[String] {
        self.base.presentation().alphabet()
    }

    pub fn evaluator(&self) -> Result<Evaluator> {
        if self.kind.uses_base() {
            Evaluator::new(&self.base)
        } else {
            Ok(Evaluator::trivial())
        }
    }

    /// Adds a relation given in text, read according to the flavor.
    pub fn add_relation(&mut self, lhs: &str, rhs: &str) -> Result<()> {
        let (l, r) = (self.parse_expr(lhs)?, self.parse_expr(rhs)?);
        match (&l, &r) {
            (Expr::Path(p), Expr::Path(q)) if (p.source(), p.target()) != (q.source(), q.target()) => {
                return Err(Error::Typing(format!("{lhs:?} and {rhs:?} have different types")))
            }
            (Expr::Term(p), Expr::Term(q)) if (p.source(), p.target()) != (q.source(), q.target()) => {
                return Err(Error::Typing(format!("{lhs:?} and {rhs:?} have different types")))
            }
            _ => {}
        }
        if self.flavor() == Flavor::Semigroup && (l.is_empty_word() || r.is_empty_word()) {
            return Err(Error::InvalidPresentation(
                "semigroup relations need non-empty sides".into(),
            ));
        }
        for side in [&l, &r] {
            self.check_alphabet(side)?;
        }
        self.relations.push(Relation {
            schema: "extra",
            lhs: l,
            rhs: r,
        });
        Ok(())
    }

    fn check_alphabet(&self, expr: &Expr) -> Result<()> {
        let symbols: &[Symbol] = match expr {
            Expr::Word(w) => w,
            Expr::Path(p) => p.edges(),
            Expr::Term(_) => return Ok(()),
        };
        for s in symbols {
            if !self.generators.contains(s) {
                return Err(Error::AlphabetMismatch {
                    symbol: format_word(&[*s], self.letter_names()),
                    context: format!("the generators of {}", self.kind),
                });
            }
        }
        Ok(())
    }

    pub fn parse_expr(&self, text: &str) -> Result<Expr> {
        let names = self.letter_names();
        Ok(match self.flavor() {
            Flavor::Monoid | Flavor::Semigroup => Expr::Word(parse_word(text, names)?),
            Flavor::Category => Expr::Path(parse_path(text, names)?),
            Flavor::Tensor => Expr::Term(parse_term(text, names)?),
        })
    }

    pub fn format_expr(&self, expr: &Expr) -> String {
        let names = self.letter_names();
        match expr {
            Expr::Word(w) => format_word(w, names),
            Expr::Path(p) => format_path(p, names),
            Expr::Term(t) => format_term(t, names),
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|s| format_word(&[*s], self.letter_names()))
            .collect()
    }

    /// The concrete element each generator stands for.
    pub fn generator_images(&self) -> Result<Vec<(Symbol, WreathElement)>> {
        let ev = self.evaluator()?;
        let context = match self.flavor() {
            Flavor::Monoid | Flavor::Semigroup => Context::Monoid(self.n),
            Flavor::Category | Flavor::Tensor => Context::Typed,
        };
        self.generators
            .iter()
            .map(|s| Ok((*s, ev.symbol(s, context)?)))
            .collect()
    }

    /// Evaluates one side of a relation.
    pub fn evaluate(&self, ev: &Evaluator, expr: &Expr) -> Result<WreathElement> {
        match expr {
            Expr::Word(w) => ev.word(w, self.n),
            Expr::Path(p) => ev.path(p),
            Expr::Term(t) => ev.term(t),
        }
    }

    /// `generators: ...` followed by one `lhs = rhs` line per relation.
    pub fn to_text(&self) -> String {
        let mut out = format!("generators: {}\n", self.generator_names().join(" "));
        for r in &self.relations {
            out.push_str(&format!("{} = {}\n", self.format_expr(&r.lhs), self.format_expr(&r.rhs)));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "kind": self.kind.name(),
            "flavor": self.flavor(),
            "monoid": self.base.name(),
            "n": self.n,
            "alphabet": self.generator_names(),
            "relations": self
                .relations
                .iter()
                .map(|r| json!([self.format_expr(&r.lhs), self.format_expr(&r.rhs)]))
                .collect::<Vec<_>>(),
            "schemas": self.relations.iter().map(|r| r.schema).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(kind: PresentationKind, monoid: &str, n: usize) -> Presentation {
        Presentation::build(kind, &BaseMonoid::builtin(monoid).unwrap(), n).unwrap()
    }

    fn r_in_count(n: usize) -> usize {
        let pairs = |k: usize| k * k.saturating_sub(1) / 2;
        let s = n - 1;
        s + (pairs(s) - s.saturating_sub(1))
            + s.saturating_sub(1)
            + n
            + pairs(n)
            + s * n.saturating_sub(2)
            + s
            + s
    }

    #[test]
    fn r_in_counts_match_closed_form() {
        for n in 1..=5 {
            assert_eq!(build(PresentationKind::RIn, "trivial", n).relations().len(), r_in_count(n), "n = {n}");
        }
    }

    #[test]
    fn bicyclic_generators() {
        let p = build(PresentationKind::RMIn, "bicyclic", 2);
        assert_eq!(p.generator_names(), ["s1", "e1", "e2", "a@1", "b@1", "a@2", "b@2"]);
        let small = build(PresentationKind::RMInSmall, "bicyclic", 2);
        assert_eq!(small.generator_names(), ["s1", "e", "a", "b"]);
        assert!(small.relations().iter().all(|r| r.schema != "s-letter-commute"));
        assert!(p.evaluator().is_err());
    }

    #[test]
    fn kinds_parse() {
        for k in PresentationKind::ALL {
            assert_eq!(k.name().parse::<PresentationKind>().unwrap(), k);
            assert_eq!(k.long_name().parse::<PresentationKind>().unwrap(), k);
        }
        assert!("r-foo".parse::<PresentationKind>().is_err());
    }

    #[test]
    fn semigroup_sides_are_nonempty() {
        for kind in [PresentationKind::RSingIn, PresentationKind::RSingTuples, PresentationKind::RMSingIn] {
            for r in build(kind, "c2", 4).relations() {
                assert!(!r.lhs.is_empty_word() && !r.rhs.is_empty_word());
            }
        }
    }

    #[test]
    fn deterministic() {
        for kind in PresentationKind::ALL {
            let n = kind.min_level().max(2);
            assert_eq!(build(kind, "s3", n).to_text(), build(kind, "s3", n).to_text());
        }
    }

    #[test]
    fn levels_checked() {
        let base = BaseMonoid::builtin("c2").unwrap();
        assert!(Presentation::build(PresentationKind::RSingIn, &base, 1).is_err());
        assert!(Presentation::build(PresentationKind::RIn, &base, MAX_LEVEL + 1).is_err());
        assert!(Presentation::build(PresentationKind::XiMI, &base, 0).is_ok());
    }

    #[test]
    fn extra_relations() {
        let mut p = build(PresentationKind::RIn, "trivial", 2);
        p.add_relation("s1 s1", "e1").unwrap();
        assert_eq!(p.relations().last().unwrap().schema, "extra");
        assert!(p.add_relation("s2", "1").is_err());
        let mut q = build(PresentationKind::RSingIn, "trivial", 2);
        assert!(q.add_relation("f1,2", "1").is_err());
        let mut o = build(PresentationKind::OmegaMI, "c2", 2);
        assert!(o.add_relation("lam1", "i1").is_err());
    }
}
