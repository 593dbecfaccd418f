//! Instance-level verification of the presentations: soundness of every
//! relation, generation of the target with witnesses, and congruence
//! enumeration compared against brute-force sizes.

mod category;
mod congruence;
mod tensor;

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

pub use category::verify_category;
pub use congruence::{enumerate_congruence, CongruenceProblem, CongruenceTable, TableStatus};
pub use tensor::verify_tensor;

use crate::base::{BaseMonoid, ZeroExtended};
use crate::error::{Error, Result};
use crate::presentations::{Expr, Flavor, Presentation, PresentationKind};
use crate::words::{base_words, canonical_category_path, hat, Evaluator, Symbol};
use crate::wreath::{count_wreath, count_variant, enumerate_wreath, Caps, Variant, WreathElement};

/// Node budget for monoid and semigroup presentations.
pub const DEFAULT_BUDGET: usize = 50_000;
/// Node budget per start object for the category presentation.
pub const DEFAULT_CATEGORY_BUDGET: usize = 20_000;
pub const DEFAULT_HEADROOM: usize = 2;
pub const MAX_HEADROOM: usize = 4;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Overrides the flavor's default node budget.
    pub budget: Option<usize>,
    pub headroom: usize,
    pub max_headroom: usize,
    /// Relations appended to the built presentation, in text form.
    pub extra_relations: Vec<(String, String)>,
    pub seed: u64,
    /// Random samples for the property checks.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            budget: None,
            headroom: DEFAULT_HEADROOM,
            max_headroom: MAX_HEADROOM,
            extra_relations: Vec::new(),
            seed: 0x5eed,
            samples: 1000,
        }
    }
}

impl VerifyOptions {
    fn budget_for(&self, flavor: Flavor) -> usize {
        self.budget.unwrap_or(match flavor {
            Flavor::Category => DEFAULT_CATEGORY_BUDGET,
            _ => DEFAULT_BUDGET,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SoundnessFailure {
    pub index: usize,
    pub schema: String,
    pub lhs: String,
    pub rhs: String,
    pub lhs_value: WreathElement,
    pub rhs_value: WreathElement,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Soundness {
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<SoundnessFailure>,
}

#[derive(Clone, Debug, Default)]
pub struct Generation {
    pub covered: usize,
    pub target: usize,
    /// Elements reached that are not in the target.
    pub outside: usize,
    /// One generator word (path edges) per element reached.
    pub witnesses: HashMap<WreathElement, Vec<Symbol>>,
}

impl Generation {
    pub fn passed(&self) -> bool {
        self.covered == self.target && self.outside == 0
    }
}

impl Serialize for Generation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Generation", 3)?;
        st.serialize_field("covered", &self.covered)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("outside", &self.outside)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomSetCount {
    pub source: usize,
    pub target: usize,
    pub enumerated: Option<usize>,
    pub expected: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: PresentationKind,
    pub monoid: String,
    pub n: usize,
    pub soundness: Soundness,
    pub generation: Generation,
    pub enumerated_size: Option<u128>,
    pub target_size: u128,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub headroom: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hom_sets: Vec<HomSetCount>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub properties: Vec<PropertyCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Evaluates both sides of every relation and reports the first that differs.
pub fn check_soundness(p: &Presentation) -> Result<Soundness> {
    let ev = p.evaluator()?;
    for (index, r) in p.relations().iter().enumerate() {
        let (l, rv) = (p.evaluate(&ev, &r.lhs)?, p.evaluate(&ev, &r.rhs)?);
        if l != rv {
            return Ok(Soundness {
                passed: false,
                checked: index + 1,
                failure: Some(SoundnessFailure {
                    index,
                    schema: r.schema.to_string(),
                    lhs: p.format_expr(&r.lhs),
                    rhs: p.format_expr(&r.rhs),
                    lhs_value: l,
                    rhs_value: rv,
                }),
            });
        }
    }
    Ok(Soundness {
        passed: true,
        checked: p.relations().len(),
        failure: None,
    })
}

fn variant_of(kind: PresentationKind) -> Variant {
    match kind {
        PresentationKind::RSingIn | PresentationKind::RMSingIn => Variant::SingularMonoid,
        PresentationKind::RSingTuples => Variant::SingularTuples,
        _ => Variant::Full,
    }
}

/// The elements the presentation is meant to present. Category and tensor
/// kinds use every hom-set between objects up to the cap.
pub fn target_elements(p: &Presentation, m0: &ZeroExtended) -> Result<Vec<WreathElement>> {
    let n = p.n();
    match p.flavor() {
        Flavor::Monoid | Flavor::Semigroup => {
            enumerate_wreath(m0, n, n, variant_of(p.kind()), Caps::default())
        }
        Flavor::Category | Flavor::Tensor => {
            let mut out = Vec::new();
            for m in 0..=n {
                for k in 0..=n {
                    out.extend(enumerate_wreath(m0, m, k, Variant::Full, Caps::default())?);
                }
            }
            Ok(out)
        }
    }
}

/// The size of the target, from closed formulas.
pub fn target_size(p: &Presentation, monoid_size: usize) -> u128 {
    let n = p.n();
    match p.flavor() {
        Flavor::Monoid | Flavor::Semigroup => count_variant(monoid_size, n, variant_of(p.kind())),
        Flavor::Category | Flavor::Tensor => (0..=n)
            .flat_map(|m| (0..=n).map(move |k| count_wreath(monoid_size, m, k)))
            .sum(),
    }
}

/// Closes the generator images under composition (under hats of canonical
/// paths for tensor kinds) and compares with the target.
pub fn check_generation(p: &Presentation) -> Result<Generation> {
    let ev = p.evaluator()?;
    let target: HashSet<WreathElement> = target_elements(p, ev.m0())?.into_iter().collect();
    match p.flavor() {
        Flavor::Tensor => {
            let words = base_words(p.base())?;
            let mut witnesses = HashMap::new();
            for el in &target {
                let path = canonical_category_path(el, &words)?;
                if ev.term(&hat(&path)?)? == *el {
                    witnesses.insert(el.clone(), path.edges().to_vec());
                }
            }
            Ok(tally(witnesses, &target))
        }
        flavor => {
            let cap = p.n();
            let images: Vec<(Symbol, WreathElement)> = p
                .generator_images()?
                .into_iter()
                .filter(|(_, g)| flavor != Flavor::Category || (g.source() <= cap && g.target() <= cap))
                .collect();
            let seeds = match flavor {
                Flavor::Monoid => vec![(WreathElement::identity(ev.m0(), cap), vec![])],
                Flavor::Category => (0..=cap)
                    .map(|k| (WreathElement::identity(ev.m0(), k), vec![]))
                    .collect(),
                _ => images.iter().map(|(s, g)| (g.clone(), vec![*s])).collect(),
            };
            closure(&ev, seeds, &images, &target)
        }
    }
}

fn tally(witnesses: HashMap<WreathElement, Vec<Symbol>>, target: &HashSet<WreathElement>) -> Generation {
    let covered = witnesses.keys().filter(|el| target.contains(*el)).count();
    Generation {
        covered,
        target: target.len(),
        outside: witnesses.len() - covered,
        witnesses,
    }
}

/// Breadth-first closure of `seeds` under right multiplication by the images,
/// recording one word per element reached.
pub fn closure(
    ev: &Evaluator,
    seeds: Vec<(WreathElement, Vec<Symbol>)>,
    images: &[(Symbol, WreathElement)],
    target: &HashSet<WreathElement>,
) -> Result<Generation> {
    let mut witnesses: HashMap<WreathElement, Vec<Symbol>> = HashMap::new();
    let mut queue = VecDeque::new();
    for (el, word) in seeds {
        if !witnesses.contains_key(&el) {
            witnesses.insert(el.clone(), word);
            queue.push_back(el);
        }
    }
    let limit = target.len() * 2 + 16;
    while let Some(el) = queue.pop_front() {
        if witnesses.len() > limit {
            break;
        }
        for (s, g) in images {
            if g.source() != el.target() {
                continue;
            }
            let next = ev.compose(&el, g)?;
            if !witnesses.contains_key(&next) {
                let mut w = witnesses[&el].clone();
                w.push(*s);
                witnesses.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }
    Ok(tally(witnesses, target))
}

fn build_with_extras(kind: PresentationKind, base: &BaseMonoid, n: usize, opts: &VerifyOptions) -> Result<Presentation> {
    let mut p = Presentation::build(kind, base, n)?;
    for (l, r) in &opts.extra_relations {
        p.add_relation(l, r)?;
    }
    Ok(p)
}

/// Soundness, generation and enumeration for one `(kind, M, n)` cell. The
/// category kind takes `n` as the object cap, the tensor kinds as the cap for
/// their property checks.
pub fn verify_presentation(
    kind: PresentationKind,
    base: &BaseMonoid,
    n: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    match kind.flavor() {
        Flavor::Category => return verify_category(base, n, opts),
        Flavor::Tensor => return verify_tensor(kind, base, n, opts),
        _ => {}
    }
    let p = build_with_extras(kind, base, n, opts)?;
    let ev = p.evaluator()?;
    let soundness = check_soundness(&p)?;
    let generation = check_generation(&p)?;
    let target_size = target_size(&p, ev.m0().base().size());
    let problem = CongruenceProblem::from_presentation(&p)?;
    let table = enumerate_congruence(&problem, 0, opts.budget_for(p.flavor()))?;
    let semigroup = p.flavor() == Flavor::Semigroup;
    let mut note = None;
    let enumerated_size = table.is_complete().then(|| {
        let size = table.size() as u128;
        if semigroup {
            size - 1
        } else {
            size
        }
    });
    if semigroup && table.start_merged() {
        note = Some("the empty word's class was merged".to_string());
    }
    let verdict = if !soundness.passed || !generation.passed() || note.is_some() {
        Verdict::Fail
    } else {
        match enumerated_size {
            None => Verdict::Inconclusive,
            Some(size) if size == target_size => Verdict::Pass,
            Some(_) => Verdict::Fail,
        }
    };
    if enumerated_size.is_none() {
        note = Some(format!(
            "enumeration stopped at the node budget of {}",
            opts.budget_for(p.flavor())
        ));
    }
    Ok(VerificationReport {
        kind,
        monoid: base.name().to_string(),
        n,
        soundness,
        generation,
        enumerated_size,
        target_size,
        verdict,
        headroom: None,
        hom_sets: vec![],
        properties: vec![],
        note,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Equal,
    Different,
    Inconclusive,
}

/// Decides whether two sides are equal modulo the presentation's congruence.
///
/// Monoid and semigroup words are traced in the enumerated table. Category
/// paths are traced in a table for the presentation built with headroom; a
/// common class settles equality and different values settle inequality.
/// Tensor terms are compared by value.
pub fn word_problem(p: &Presentation, lhs: &Expr, rhs: &Expr, opts: &VerifyOptions) -> Result<Answer> {
    let Ok(ev) = p.evaluator() else {
        return Ok(Answer::Inconclusive);
    };
    let differ = p.evaluate(&ev, lhs)? != p.evaluate(&ev, rhs)?;
    match p.flavor() {
        Flavor::Tensor => Ok(if differ { Answer::Different } else { Answer::Equal }),
        Flavor::Category => {
            let (Expr::Path(u), Expr::Path(v)) = (lhs, rhs) else {
                return Err(Error::Typing("expected paths".into()));
            };
            if (u.source(), u.target()) != (v.source(), v.target()) {
                return Err(Error::Typing("the paths have different types".into()));
            }
            if differ {
                return Ok(Answer::Different);
            }
            let level = (p.n() + opts.headroom).min(crate::presentations::MAX_LEVEL);
            let big = build_with_extras(PresentationKind::OmegaMI, p.base(), level, opts)?;
            let problem = CongruenceProblem::from_presentation(&big)?;
            let table = enumerate_congruence(&problem, u.source(), opts.budget_for(Flavor::Category))?;
            let encode = |edges: &[Symbol]| category::encode(&big, edges);
            let (a, b) = (table.trace(&encode(u.edges())?), table.trace(&encode(v.edges())?));
            Ok(match (a, b) {
                (Some(a), Some(b)) if a == b => Answer::Equal,
                _ => Answer::Inconclusive,
            })
        }
        _ => {
            let (Expr::Word(u), Expr::Word(v)) = (lhs, rhs) else {
                return Err(Error::Typing("expected words".into()));
            };
            let problem = CongruenceProblem::from_presentation(p)?;
            let table = enumerate_congruence(&problem, 0, opts.budget_for(p.flavor()))?;
            if !table.is_complete() {
                return Ok(Answer::Inconclusive);
            }
            let encode = |w: &[Symbol]| category::encode(p, w);
            let same = table.trace(&encode(u)?) == table.trace(&encode(v)?);
            Ok(if same { Answer::Equal } else { Answer::Different })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(name: &str) -> BaseMonoid {
        BaseMonoid::builtin(name).unwrap()
    }

    #[test]
    fn small_cells_pass() {
        let opts = VerifyOptions::default();
        for (kind, monoid, n, size) in [
            (PresentationKind::RIn, "trivial", 2, 7),
            (PresentationKind::RInPopova, "trivial", 3, 34),
            (PresentationKind::RMIn, "c2", 2, 17),
            (PresentationKind::RMInSmall, "c2", 2, 17),
            (PresentationKind::RSingIn, "trivial", 3, 28),
            (PresentationKind::RSingTuples, "c2", 2, 5),
            (PresentationKind::RMSingIn, "c2", 2, 9),
        ] {
            let r = verify_presentation(kind, &base(monoid), n, &opts).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{kind} {monoid} {n}: {r:?}");
            assert_eq!(r.enumerated_size, Some(size));
        }
    }

    #[test]
    fn corrupted_relation_fails_soundness() {
        let opts = VerifyOptions {
            extra_relations: vec![("s1 s1".into(), "e1".into())],
            ..Default::default()
        };
        let r = verify_presentation(PresentationKind::RIn, &base("trivial"), 2, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let failure = r.soundness.failure.unwrap();
        assert_eq!((failure.lhs.as_str(), failure.rhs.as_str()), ("s1 s1", "e1"));
    }

    #[test]
    fn generation_counts() {
        let p = Presentation::build(PresentationKind::RSingIn, &base("trivial"), 2).unwrap();
        let g = check_generation(&p).unwrap();
        assert_eq!((g.covered, g.target), (5, 5));
        let q = Presentation::build(PresentationKind::RMIn, &base("c2"), 2).unwrap();
        let g = check_generation(&q).unwrap();
        assert_eq!((g.covered, g.target, g.outside), (17, 17, 0));
        let ev = q.evaluator().unwrap();
        for (el, w) in &g.witnesses {
            assert_eq!(&ev.word(w, 2).unwrap(), el);
        }
    }

    #[test]
    fn empty_generating_set_fails() {
        let p = Presentation::build(PresentationKind::RSingIn, &base("trivial"), 2).unwrap();
        let ev = p.evaluator().unwrap();
        let target = target_elements(&p, ev.m0()).unwrap().into_iter().collect();
        let g = closure(&ev, vec![], &[], &target).unwrap();
        assert!(!g.passed());
        assert_eq!(g.covered, 0);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let opts = VerifyOptions {
            budget: Some(5),
            ..Default::default()
        };
        let r = verify_presentation(PresentationKind::RIn, &base("trivial"), 3, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.enumerated_size, None);
    }

    #[test]
    fn word_problems() {
        let c2 = base("c2");
        let p = Presentation::build(PresentationKind::RMIn, &c2, 2).unwrap();
        let opts = VerifyOptions::default();
        let (l, r) = (p.parse_expr("s1 x@1").unwrap(), p.parse_expr("x@2 s1").unwrap());
        assert_eq!(word_problem(&p, &l, &r, &opts).unwrap(), Answer::Equal);
        let r2 = p.parse_expr("x@1 s1").unwrap();
        assert_eq!(word_problem(&p, &l, &r2, &opts).unwrap(), Answer::Different);
        let bic = Presentation::build(PresentationKind::RMIn, &base("bicyclic"), 2).unwrap();
        let (l, r) = (bic.parse_expr("a@1 b@1").unwrap(), bic.parse_expr("1").unwrap());
        assert_eq!(word_problem(&bic, &l, &r, &opts).unwrap(), Answer::Inconclusive);
    }
}
