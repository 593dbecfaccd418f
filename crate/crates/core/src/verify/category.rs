use std::collections::{BTreeMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{
    build_with_extras, check_generation, check_soundness, enumerate_congruence, CongruenceProblem,
    CongruenceTable, HomSetCount, PropertyCheck, Verdict, VerificationReport, VerifyOptions,
};
use crate::base::{BaseMonoid, MTuple};
use crate::error::{Error, Result};
use crate::pperm::PartialBijection;
use crate::presentations::{Expr, Flavor, Presentation, PresentationKind, MAX_LEVEL};
use crate::words::{base_words, canonical_category_path, plus, Evaluator, Path, Symbol};
use crate::wreath::{count_wreath, WreathElement};

/// Letter indices of `symbols` among the generators of `p`.
pub(super) fn encode(p: &Presentation, symbols: &[Symbol]) -> Result<Vec<u32>> {
    symbols
        .iter()
        .map(|s| {
            p.generators()
                .iter()
                .position(|g| g == s)
                .map(|k| k as u32)
                .ok_or_else(|| Error::AlphabetMismatch {
                    symbol: format!("{s:?}"),
                    context: format!("the generators of {}", p.kind()),
                })
        })
        .collect()
}

fn check(name: &str, checked: usize, failure: Option<String>) -> PropertyCheck {
    PropertyCheck {
        name: name.to_string(),
        passed: failure.is_none(),
        checked,
        detail: failure,
    }
}

fn relation_set(p: &Presentation) -> HashSet<(Expr, Expr)> {
    p.relations()
        .iter()
        .flat_map(|r| [(r.lhs.clone(), r.rhs.clone()), (r.rhs.clone(), r.lhs.clone())])
        .collect()
}

fn path(source: usize, edges: Vec<Symbol>) -> Expr {
    Expr::Path(Path::new(source, edges).expect("well-typed path"))
}

fn level_symbol(s: Symbol, n: usize) -> Symbol {
    match s {
        Symbol::S(i) => Symbol::LevelS { i, n },
        Symbol::E(i) => Symbol::LevelE { i, n },
        Symbol::Tagged { letter, i } => Symbol::LevelTagged { letter, i, n },
        other => other,
    }
}

fn plus_symbol(s: Symbol) -> Symbol {
    match s {
        Symbol::LevelS { i, n } => Symbol::LevelS { i, n: n + 1 },
        Symbol::LevelE { i, n } => Symbol::LevelE { i, n: n + 1 },
        Symbol::LevelTagged { letter, i, n } => Symbol::LevelTagged { letter, i, n: n + 1 },
        other => other,
    }
}

fn level_generators(p: &Presentation, n: usize) -> Vec<Symbol> {
    p.generators()
        .iter()
        .copied()
        .filter(|s| s.is_category_edge() && !matches!(s, Symbol::Lambda(_) | Symbol::Rho(_)))
        .filter(|s| s.typing() == Some((n, n)))
        .collect()
}

/// The structural assumptions on the built relations and the values of `λ_n`, `ρ_n`.
fn structural_checks(p: &Presentation, base: &BaseMonoid, ev: &Evaluator) -> Result<Vec<PropertyCheck>> {
    let top = p.n();
    let rels = relation_set(p);
    let mut out = Vec::new();

    let mut failure = None;
    for n in 0..top {
        let lr = ev.path(&Path::new(n, vec![Symbol::Lambda(n), Symbol::Rho(n)])?)?;
        if lr != WreathElement::identity(ev.m0(), n) {
            failure.get_or_insert(format!("lam{n} rho{n} is not the identity"));
        }
    }
    out.push(check("lambda-rho-identity", top, failure));

    let mut failure = None;
    for n in 0..top {
        let wanted = [
            (path(n, vec![Symbol::Lambda(n), Symbol::Rho(n)]), path(n, vec![])),
            (
                path(n + 1, vec![Symbol::Rho(n), Symbol::Lambda(n)]),
                path(n + 1, vec![Symbol::LevelE { i: n + 1, n: n + 1 }]),
            ),
        ];
        if wanted.iter().any(|r| !rels.contains(r)) {
            failure.get_or_insert(format!("missing lambda/rho relations at {n}"));
        }
    }
    out.push(check("lambda-rho-relations", 2 * top, failure));

    let mut failure = None;
    let mut checked = 0;
    for n in 1..=top {
        let monoid = Presentation::build(PresentationKind::RMIn, base, n)?;
        for r in monoid.relations() {
            let (Expr::Word(u), Expr::Word(v)) = (&r.lhs, &r.rhs) else { unreachable!() };
            let lift = |w: &[Symbol]| path(n, w.iter().map(|&s| level_symbol(s, n)).collect());
            checked += 1;
            if !rels.contains(&(lift(u), lift(v))) {
                failure.get_or_insert(format!(
                    "level {n} lacks {} = {}",
                    monoid.format_expr(&r.lhs),
                    monoid.format_expr(&r.rhs)
                ));
            }
        }
    }
    out.push(check("level-relations", checked, failure));

    let mut failure = None;
    let mut checked = 0;
    for n in 0..top {
        for x in level_generators(p, n) {
            let (lam, rho, up) = (Symbol::Lambda(n), Symbol::Rho(n), plus_symbol(x));
            checked += 2;
            if !rels.contains(&(path(n, vec![x, lam]), path(n, vec![lam, up])))
                || !rels.contains(&(path(n + 1, vec![rho, x]), path(n + 1, vec![up, rho])))
            {
                failure.get_or_insert(format!("missing shift relations for {x:?}"));
            }
        }
    }
    out.push(check("shift-relations", checked, failure));
    Ok(out)
}

/// `w_n u w_n ~ w_n v⁺ w_n` with `v` read off the restriction of the value
/// to level `n`; checked by value and, when available, in the table started
/// at `n + 1`.
fn restriction_witnesses(
    p: &Presentation,
    ev: &Evaluator,
    words: &[Vec<u16>],
    cap: usize,
    tables: &BTreeMap<usize, CongruenceTable>,
    opts: &VerifyOptions,
) -> Result<PropertyCheck> {
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut failure = None;
    let mut checked = 0;
    for n in 0..cap {
        let letters = level_generators(p, n + 1);
        let w = Symbol::LevelE { i: n + 1, n: n + 1 };
        let mut samples: Vec<Vec<Symbol>> = vec![vec![]];
        samples.extend(letters.iter().map(|&x| vec![x]));
        for &x in &letters {
            samples.extend(letters.iter().map(|&y| vec![x, y]));
        }
        for _ in 0..opts.samples.min(200) {
            let len = rng.gen_range(3..=8);
            samples.push((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect());
        }
        for u in samples {
            checked += 1;
            let mut wuw = vec![w];
            wuw.extend(&u);
            wuw.push(w);
            let value = ev.path(&Path::new(n + 1, wuw.clone())?)?;
            let entries = value.tuple().entries()[..n].to_vec();
            let images: Vec<usize> = (1..=n).map(|i| value.map().image(i).unwrap_or(0)).collect();
            let restricted = WreathElement::new(MTuple::new(entries), PartialBijection::from_images(n, &images)?)?;
            let v = canonical_category_path(&restricted, words)?;
            let mut wvw = vec![w];
            wvw.extend(plus(&v)?.edges());
            wvw.push(w);
            if ev.path(&Path::new(n + 1, wvw.clone())?)? != value {
                failure.get_or_insert(format!("value mismatch at level {}", n + 1));
                continue;
            }
            if let Some(table) = tables.get(&(n + 1)).filter(|t| t.is_complete()) {
                if table.trace(&encode(p, &wuw)?) != table.trace(&encode(p, &wvw)?) {
                    failure.get_or_insert(format!("classes differ at level {}", n + 1));
                }
            }
        }
    }
    Ok(check("restriction-witness", checked, failure))
}

enum Outcome {
    Match,
    Excess,
    Short,
    Budget,
}

/// Soundness, generation, typed enumeration of every hom-set between objects
/// up to `cap`, and the structural assumptions behind the category presentation.
pub fn verify_category(base: &BaseMonoid, cap: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if cap == 0 {
        return Err(Error::InvalidParams("the object cap must be at least 1".into()));
    }
    let ev = Evaluator::new(base)?;
    let words = base_words(base)?;
    let size = ev.m0().base().size();
    let budget = opts.budget.unwrap_or(super::DEFAULT_CATEGORY_BUDGET);
    let small = build_with_extras(PresentationKind::OmegaMI, base, cap, opts)?;
    let generation = check_generation(&small)?;

    let mut headroom = opts.headroom;
    let mut last = None;
    loop {
        let level = cap + headroom;
        if level > MAX_LEVEL {
            break;
        }
        let p = build_with_extras(PresentationKind::OmegaMI, base, level, opts)?;
        let soundness = check_soundness(&p)?;
        let problem = CongruenceProblem::from_presentation(&p)?;
        let mut tables = BTreeMap::new();
        let mut hom_sets = Vec::new();
        let mut outcome = Outcome::Match;
        for m in 0..=cap {
            let table = enumerate_congruence(&problem, m, budget)?;
            let counts = table.is_complete().then(|| table.sizes_by_object());
            for n in 0..=cap {
                let expected = count_wreath(size, m, n);
                let enumerated = counts.as_ref().map(|c| c.get(&n).copied().unwrap_or(0));
                match enumerated {
                    None => outcome = Outcome::Budget,
                    Some(k) if (k as u128) < expected => {
                        if !matches!(outcome, Outcome::Budget) {
                            outcome = Outcome::Short;
                        }
                    }
                    Some(k) if (k as u128) > expected => {
                        if matches!(outcome, Outcome::Match) {
                            outcome = Outcome::Excess;
                        }
                    }
                    _ => {}
                }
                hom_sets.push(HomSetCount {
                    source: m,
                    target: n,
                    enumerated,
                    expected,
                });
            }
            tables.insert(m, table);
        }
        let retry = matches!(outcome, Outcome::Excess) && soundness.passed && headroom < opts.max_headroom;
        last = Some((p, soundness, tables, hom_sets, outcome, headroom));
        if !retry {
            break;
        }
        headroom += 1;
    }
    let Some((p, soundness, tables, hom_sets, outcome, headroom)) = last else {
        return Err(Error::CapExceeded {
            requested: cap + opts.headroom,
            cap: MAX_LEVEL,
        });
    };

    let mut properties = structural_checks(&p, base, &ev)?;
    properties.push(restriction_witnesses(&p, &ev, &words, cap, &tables, opts)?);

    let target_size: u128 = hom_sets.iter().map(|h| h.expected).sum();
    let enumerated_size = hom_sets
        .iter()
        .map(|h| h.enumerated.map(|k| k as u128))
        .sum::<Option<u128>>();
    let props_ok = properties.iter().all(|c| c.passed);
    let (verdict, note) = if !soundness.passed || !generation.passed() || !props_ok {
        (Verdict::Fail, None)
    } else {
        match outcome {
            Outcome::Match => (Verdict::Pass, None),
            Outcome::Short => (Verdict::Fail, Some("fewer classes than elements".to_string())),
            Outcome::Budget => (
                Verdict::Inconclusive,
                Some(format!("enumeration stopped at the node budget of {budget}")),
            ),
            Outcome::Excess => (
                Verdict::Inconclusive,
                Some(format!("hom-set counts still exceed the targets at headroom {headroom}")),
            ),
        }
    };
    debug_assert_eq!(p.flavor(), Flavor::Category);
    Ok(VerificationReport {
        kind: PresentationKind::OmegaMI,
        monoid: base.name().to_string(),
        n: cap,
        soundness,
        generation,
        enumerated_size,
        target_size,
        verdict,
        headroom: Some(headroom),
        hom_sets,
        properties,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cap_two() {
        let base = BaseMonoid::builtin("trivial").unwrap();
        let r = verify_category(&base, 2, &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let h = r.hom_sets.iter().find(|h| (h.source, h.target) == (1, 2)).unwrap();
        assert_eq!((h.enumerated, h.expected), (Some(3), 3));
    }

    #[test]
    fn c2_hom_set_one_two() {
        let base = BaseMonoid::builtin("c2").unwrap();
        let r = verify_category(&base, 2, &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let h = r.hom_sets.iter().find(|h| (h.source, h.target) == (1, 2)).unwrap();
        assert_eq!((h.enumerated, h.expected), (Some(5), 5));
        let zero = r.hom_sets.iter().find(|h| (h.source, h.target) == (0, 0)).unwrap();
        assert_eq!(zero.enumerated, Some(1));
    }
}
