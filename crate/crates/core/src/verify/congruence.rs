//! Todd–Coxeter style enumeration of the right Cayley graph of a finitely
//! presented monoid, semigroup or category (HLT strategy with lookahead).
//!
//! Nodes stand for classes of words (paths) read from a fixed start object.
//! Relations are traced from every node at their source object; when the two
//! traces end at different nodes those nodes are identified, and the induced
//! coincidences are processed to a fixpoint before anything new is defined.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::{Expr, Flavor, Presentation};
use crate::words::Symbol;

const UNDEFINED: u32 = u32::MAX;

/// Letters with source and target objects, and relations between letter
/// strings at a source object. Monoids use the single object 0.
#[derive(Clone, Debug)]
pub struct CongruenceProblem {
    letters: Vec<(usize, usize)>,
    relations: Vec<(usize, Vec<u32>, Vec<u32>)>,
}

impl CongruenceProblem {
    pub fn new(letters: Vec<(usize, usize)>, relations: Vec<(usize, Vec<u32>, Vec<u32>)>) -> Result<Self> {
        for (source, u, v) in &relations {
            let end = |w: &[u32]| -> Result<usize> {
                let mut at = *source;
                for &a in w {
                    let &(d, r) = letters
                        .get(a as usize)
                        .ok_or_else(|| Error::InvalidPresentation(format!("unknown letter #{a}")))?;
                    if d != at {
                        return Err(Error::Typing(format!("letter #{a} does not start at {at}")));
                    }
                    at = r;
                }
                Ok(at)
            };
            if end(u)? != end(v)? {
                return Err(Error::Typing("relation sides end at different objects".into()));
            }
        }
        Ok(Self { letters, relations })
    }

    /// Letters are the generators in order; relation sides become letter strings.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let typed = matches!(p.flavor(), Flavor::Category);
        if p.flavor() == Flavor::Tensor {
            return Err(Error::UnsupportedFlavor(
                "tensor presentations cannot be enumerated".into(),
            ));
        }
        let index: std::collections::HashMap<Symbol, u32> = p
            .generators()
            .iter()
            .enumerate()
            .map(|(k, s)| (*s, k as u32))
            .collect();
        let letters = p
            .generators()
            .iter()
            .map(|s| if typed { s.typing().expect("category edge") } else { (0, 0) })
            .collect();
        let encode = |symbols: &[Symbol]| -> Result<Vec<u32>> {
            symbols
                .iter()
                .map(|s| {
                    index.get(s).copied().ok_or_else(|| Error::AlphabetMismatch {
                        symbol: format!("{s:?}"),
                        context: "the generators".into(),
                    })
                })
                .collect()
        };
        let mut relations = Vec::new();
        for r in p.relations() {
            relations.push(match (&r.lhs, &r.rhs) {
                (Expr::Word(u), Expr::Word(v)) => (0, encode(u)?, encode(v)?),
                (Expr::Path(u), Expr::Path(v)) => (u.source(), encode(u.edges())?, encode(v.edges())?),
                _ => return Err(Error::InvalidPresentation("mixed relation sides".into())),
            });
        }
        Self::new(letters, relations)
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// `(source, target)` of each letter.
    pub fn letters(&self) -> &[(usize, usize)] {
        &self.letters
    }

    /// `(source object, lhs, rhs)` of each relation.
    pub fn relations(&self) -> &[(usize, Vec<u32>, Vec<u32>)] {
        &self.relations
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableStatus {
    Complete,
    BudgetExceeded,
}

/// The outcome of an enumeration.
#[derive(Clone, Debug)]
pub struct CongruenceTable {
    letters: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    object: Vec<usize>,
    status: TableStatus,
    start_merged: bool,
}

impl CongruenceTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.parent.len()).filter(|&c| self.parent[c] as usize == c)
    }

    /// Number of classes.
    pub fn size(&self) -> usize {
        self.live().count()
    }

    /// Number of classes per target object.
    pub fn sizes_by_object(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in self.live() {
            *out.entry(self.object[c]).or_insert(0) += 1;
        }
        out
    }

    /// Whether any other node was ever identified with the start node.
    pub fn start_merged(&self) -> bool {
        self.start_merged
    }

    /// Nodes ever defined, dead ones included.
    pub fn nodes_defined(&self) -> usize {
        self.parent.len()
    }

    /// The class reached by reading `word` from the start node.
    pub fn trace(&self, word: &[u32]) -> Option<usize> {
        let mut x = 0u32;
        for &a in word {
            let t = *self.table.get(x as usize * self.letters + a as usize)?;
            if t == UNDEFINED {
                return None;
            }
            x = self.find(t);
        }
        Some(x as usize)
    }
}

struct BudgetExhausted;

struct Engine<'a> {
    problem: &'a CongruenceProblem,
    nl: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    object: Vec<usize>,
    live: usize,
    budget: usize,
    queue: VecDeque<(u32, u32)>,
    at_object: Vec<Vec<usize>>,
    letters_from: Vec<Vec<u32>>,
    start_merged: bool,
}

impl<'a> Engine<'a> {
    fn new(problem: &'a CongruenceProblem, start: usize, budget: usize) -> Self {
        let objects = problem
            .letters
            .iter()
            .flat_map(|&(d, r)| [d, r])
            .chain(problem.relations.iter().map(|r| r.0))
            .chain([start])
            .max()
            .unwrap_or(0)
            + 1;
        let mut at_object = vec![Vec::new(); objects];
        for (k, (source, _, _)) in problem.relations.iter().enumerate() {
            at_object[*source].push(k);
        }
        let mut letters_from = vec![Vec::new(); objects];
        for (a, (d, _)) in problem.letters.iter().enumerate() {
            letters_from[*d].push(a as u32);
        }
        let mut engine = Self {
            problem,
            nl: problem.letters.len(),
            table: Vec::new(),
            parent: Vec::new(),
            object: Vec::new(),
            live: 0,
            budget,
            queue: VecDeque::new(),
            at_object,
            letters_from,
            start_merged: false,
        };
        engine.push_node(start);
        engine
    }

    fn push_node(&mut self, object: usize) -> u32 {
        let id = self.parent.len() as u32;
        self.table.extend(std::iter::repeat(UNDEFINED).take(self.nl));
        self.parent.push(id);
        self.object.push(object);
        self.live += 1;
        id
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut y = x;
        while self.parent[y as usize] != root {
            let next = self.parent[y as usize];
            self.parent[y as usize] = root;
            y = next;
        }
        root
    }

    fn get(&mut self, x: u32, a: u32) -> Option<u32> {
        let t = self.table[x as usize * self.nl + a as usize];
        if t == UNDEFINED {
            None
        } else {
            Some(self.find(t))
        }
    }

    fn set(&mut self, x: u32, a: u32, y: u32) {
        self.table[x as usize * self.nl + a as usize] = y;
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (p, q) = (a.min(b), a.max(b));
            debug_assert_eq!(self.object[p as usize], self.object[q as usize]);
            if p == 0 {
                self.start_merged = true;
            }
            self.parent[q as usize] = p;
            self.live -= 1;
            let letters = self.letters_from[self.object[q as usize]].clone();
            for a in letters {
                let tq = self.table[q as usize * self.nl + a as usize];
                if tq == UNDEFINED {
                    continue;
                }
                let tp = self.table[p as usize * self.nl + a as usize];
                if tp == UNDEFINED {
                    self.set(p, a, tq);
                } else {
                    self.queue.push_back((tp, tq));
                }
            }
        }
    }

    fn trace(&mut self, mut x: u32, word: &[u32]) -> Option<u32> {
        for &a in word {
            x = self.get(x, a)?;
        }
        Some(x)
    }

    /// Identifies the ends of every relation trace that is already defined.
    fn lookahead(&mut self) {
        loop {
            let before = self.live;
            for c in 0..self.parent.len() as u32 {
                if self.find(c) != c {
                    continue;
                }
                let rels = self.at_object[self.object[c as usize]].clone();
                for k in rels {
                    let c = self.find(c);
                    let problem = self.problem;
                    let (u, v) = (&problem.relations[k].1, &problem.relations[k].2);
                    if let (Some(x), Some(y)) = (self.trace(c, u), self.trace(c, v)) {
                        if x != y {
                            self.queue.push_back((x, y));
                            self.process_coincidences();
                        }
                    }
                }
            }
            if self.live == before {
                return;
            }
        }
    }

    fn define(&mut self, object: usize) -> std::result::Result<u32, BudgetExhausted> {
        if self.live >= self.budget {
            self.lookahead();
            if self.live >= self.budget {
                return Err(BudgetExhausted);
            }
        }
        if self.parent.len() >= self.budget.saturating_mul(64) {
            return Err(BudgetExhausted);
        }
        Ok(self.push_node(object))
    }

    fn trace_define(&mut self, mut x: u32, word: &[u32]) -> std::result::Result<u32, BudgetExhausted> {
        for &a in word {
            x = match self.get(x, a) {
                Some(y) => y,
                None => {
                    let y = self.define(self.problem.letters[a as usize].1)?;
                    let x = self.find(x);
                    self.set(x, a, y);
                    y
                }
            };
        }
        Ok(x)
    }

    fn scan_and_fill(&mut self, c: u32, k: usize) -> std::result::Result<(), BudgetExhausted> {
        let problem = self.problem;
        let (u, v) = (&problem.relations[k].1, &problem.relations[k].2);
        let split = |w: &'a [u32]| match w.split_last() {
            Some((last, init)) => (init, Some(*last)),
            None => (w, None),
        };
        let (u_init, u_last) = split(u);
        let (v_init, v_last) = split(v);
        let x = self.trace_define(c, u_init)?;
        let fc = self.find(c);
        let y = self.trace_define(fc, v_init)?;
        let (x, y) = (self.find(x), self.find(y));
        let xa = u_last.map(|a| self.get(x, a));
        let yb = v_last.map(|b| self.get(y, b));
        match (u_last, xa, v_last, yb) {
            (None, _, None, _) => {
                if x != y {
                    self.queue.push_back((x, y));
                }
            }
            (None, _, Some(b), Some(None)) => self.set(y, b, x),
            (None, _, Some(_), Some(Some(t))) => self.queue.push_back((x, t)),
            (Some(a), Some(None), None, _) => self.set(x, a, y),
            (Some(_), Some(Some(t)), None, _) => self.queue.push_back((t, y)),
            (Some(a), Some(None), Some(b), Some(None)) => {
                let d = self.define(self.problem.letters[a as usize].1)?;
                let (x, y) = (self.find(x), self.find(y));
                self.set(x, a, d);
                if self.get(y, b).is_none() {
                    self.set(y, b, d);
                } else {
                    let t = self.get(y, b).unwrap();
                    self.queue.push_back((t, d));
                }
            }
            (Some(a), Some(None), Some(_), Some(Some(t))) => self.set(x, a, t),
            (Some(_), Some(Some(s)), Some(b), Some(None)) => self.set(y, b, s),
            (Some(_), Some(Some(s)), Some(_), Some(Some(t))) => {
                if s != t {
                    self.queue.push_back((s, t));
                }
            }
            _ => unreachable!(),
        }
        self.process_coincidences();
        Ok(())
    }

    fn run(&mut self) -> TableStatus {
        let mut c = 0usize;
        while c < self.parent.len() {
            if self.find(c as u32) as usize != c {
                c += 1;
                continue;
            }
            let object = self.object[c];
            let rels = self.at_object[object].clone();
            for k in rels {
                if self.find(c as u32) as usize != c {
                    break;
                }
                if self.scan_and_fill(c as u32, k).is_err() {
                    return TableStatus::BudgetExceeded;
                }
            }
            if self.find(c as u32) as usize == c {
                let letters = self.letters_from[object].clone();
                for a in letters {
                    if self.find(c as u32) as usize != c {
                        break;
                    }
                    if self.get(c as u32, a).is_none() {
                        match self.define(self.problem.letters[a as usize].1) {
                            Ok(d) => {
                                let c = self.find(c as u32);
                                if self.get(c, a).is_none() {
                                    self.set(c, a, d);
                                }
                            }
                            Err(BudgetExhausted) => return TableStatus::BudgetExceeded,
                        }
                    }
                }
            }
            c += 1;
        }
        TableStatus::Complete
    }
}

/// Enumerates the classes of words (paths) starting at `start`.
pub fn enumerate_congruence(problem: &CongruenceProblem, start: usize, budget: usize) -> Result<CongruenceTable> {
    if budget == 0 {
        return Err(Error::InvalidParams("the node budget must be positive".into()));
    }
    let mut engine = Engine::new(problem, start, budget);
    let status = engine.run();
    let Engine {
        nl,
        table,
        mut parent,
        object,
        start_merged,
        ..
    } = engine;
    for c in 0..parent.len() {
        let mut r = parent[c];
        while parent[r as usize] != r {
            r = parent[r as usize];
        }
        parent[c] = r;
    }
    Ok(CongruenceTable {
        letters: nl,
        table,
        parent,
        object,
        status,
        start_merged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monoid(letters: usize, relations: Vec<(Vec<u32>, Vec<u32>)>) -> CongruenceProblem {
        CongruenceProblem::new(
            vec![(0, 0); letters],
            relations.into_iter().map(|(u, v)| (0, u, v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn cyclic_and_free_commutative() {
        let c5 = monoid(1, vec![(vec![0; 5], vec![])]);
        assert_eq!(enumerate_congruence(&c5, 0, 100).unwrap().size(), 5);
        let s3 = monoid(2, vec![(vec![0, 0], vec![]), (vec![1, 1, 1], vec![]), (vec![0, 1, 0, 1], vec![])]);
        let t = enumerate_congruence(&s3, 0, 100).unwrap();
        assert_eq!(t.size(), 6);
        assert_eq!(t.trace(&[0, 1, 0]), t.trace(&[1, 1]));
    }

    #[test]
    fn budget_exhaustion() {
        let free = monoid(2, vec![]);
        let t = enumerate_congruence(&free, 0, 50).unwrap();
        assert_eq!(t.status(), TableStatus::BudgetExceeded);
        assert!(enumerate_congruence(&free, 0, 0).is_err());
    }

    #[test]
    fn typed_letters() {
        // one object-changing letter up and one down, with up·down = ι
        let p = CongruenceProblem::new(vec![(0, 1), (1, 0)], vec![(0, vec![0, 1], vec![])]).unwrap();
        let t = enumerate_congruence(&p, 0, 100).unwrap();
        assert_eq!(t.sizes_by_object(), BTreeMap::from([(0, 1), (1, 1)]));
        let t = enumerate_congruence(&p, 1, 100).unwrap();
        assert_eq!(t.sizes_by_object(), BTreeMap::from([(0, 1), (1, 2)]));
        assert_eq!(t.trace(&[1, 0, 1]), t.trace(&[1]));
        let q = CongruenceProblem::new(
            vec![(0, 1), (1, 0)],
            vec![(0, vec![0, 1], vec![]), (1, vec![1, 0], vec![])],
        )
        .unwrap();
        let t = enumerate_congruence(&q, 1, 100).unwrap();
        assert_eq!(t.sizes_by_object(), BTreeMap::from([(0, 1), (1, 1)]));
        assert!(CongruenceProblem::new(vec![(0, 1)], vec![(0, vec![0], vec![])]).is_err());
    }
}
