use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{build_with_extras, check_generation, check_soundness, PropertyCheck, Verdict, VerificationReport, VerifyOptions};
use crate::base::BaseMonoid;
use crate::error::{Error, Result};
use crate::presentations::{Expr, Presentation, PresentationKind};
use crate::words::{hat, x_mn_decompose, Evaluator, Path, Symbol};

fn check(name: &str, checked: usize, failure: Option<String>) -> PropertyCheck {
    PropertyCheck {
        name: name.to_string(),
        passed: failure.is_none(),
        checked,
        detail: failure,
    }
}

/// A random path of `1..=max_len` edges over the category generators.
fn random_path(rng: &mut StdRng, edges: &[Symbol], cap: usize, max_len: usize) -> Result<Path> {
    let mut object = rng.gen_range(0..=cap);
    let source = object;
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(1..=max_len) {
        let choices: Vec<&Symbol> = edges
            .iter()
            .filter(|s| s.typing().is_some_and(|(a, _)| a == object))
            .collect();
        if choices.is_empty() {
            break;
        }
        let s = *choices[rng.gen_range(0..choices.len())];
        object = s.typing().expect("typed edge").1;
        out.push(s);
    }
    Path::new(source, out)
}

fn hat_preserves_values(
    ev: &Evaluator,
    omega: &Presentation,
    cap: usize,
    opts: &VerifyOptions,
) -> Result<PropertyCheck> {
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut paths: Vec<Path> = omega
        .generators()
        .iter()
        .map(|&s| Path::from_edges(vec![s]))
        .collect::<Result<_>>()?;
    for _ in 0..opts.samples {
        paths.push(random_path(&mut rng, omega.generators(), cap, 12)?);
    }
    let mut failure = None;
    for path in &paths {
        if ev.term(&hat(path)?)? != ev.path(path)? {
            failure.get_or_insert(format!("hat changes the value of {}", omega.format_expr(&Expr::Path(path.clone()))));
        }
    }
    Ok(check("hat-preserves-values", paths.len(), failure))
}

fn padded_edges(ev: &Evaluator, p: &Presentation) -> Result<PropertyCheck> {
    let edges: Vec<Symbol> = p.generators().iter().copied().filter(Symbol::is_tensor_edge).collect();
    let mut failure = None;
    let mut checked = 0;
    for &s in &edges {
        for m in 0..=4 {
            for n in 0..=4 - m {
                let (term, path) = x_mn_decompose(&s, m, n)?;
                let value = ev.term(&term)?;
                checked += 1;
                if ev.path(&path)? != value || ev.term(&hat(&path)?)? != value {
                    failure.get_or_insert(format!("padded {s:?} at ({m}, {n})"));
                }
            }
        }
    }
    Ok(check("padded-edges", checked, failure))
}

fn hat_respects_relations(ev: &Evaluator, omega: &Presentation) -> Result<PropertyCheck> {
    let mut failure = None;
    for r in omega.relations() {
        let (Expr::Path(u), Expr::Path(v)) = (&r.lhs, &r.rhs) else {
            return Err(Error::Typing("expected paths".into()));
        };
        if ev.term(&hat(u)?)? != ev.term(&hat(v)?)? {
            failure.get_or_insert(format!(
                "{} = {}",
                omega.format_expr(&r.lhs),
                omega.format_expr(&r.rhs)
            ));
        }
    }
    Ok(check("hat-respects-relations", omega.relations().len(), failure))
}

/// Soundness and generation of a tensor presentation, plus the value-level
/// properties of the hat map on the category presentation with object cap `cap`.
pub fn verify_tensor(
    kind: PresentationKind,
    base: &BaseMonoid,
    cap: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if !matches!(kind, PresentationKind::XiI | PresentationKind::XiMI) {
        return Err(Error::InvalidParams(format!("{kind} is not a tensor presentation")));
    }
    if cap == 0 {
        return Err(Error::InvalidParams("the object cap must be at least 1".into()));
    }
    let p = build_with_extras(kind, base, cap, opts)?;
    let ev = p.evaluator()?;
    let soundness = check_soundness(&p)?;
    let generation = check_generation(&p)?;
    let omega = Presentation::build(PresentationKind::OmegaMI, p.base(), cap)?;
    let properties = vec![
        hat_preserves_values(&ev, &omega, cap, opts)?,
        padded_edges(&ev, &p)?,
        hat_respects_relations(&ev, &omega)?,
    ];
    let passed = soundness.passed && generation.passed() && properties.iter().all(|c| c.passed);
    let target_size = super::target_size(&p, ev.m0().base().size());
    Ok(VerificationReport {
        kind,
        monoid: p.base().name().to_string(),
        n: cap,
        soundness,
        generation,
        enumerated_size: None,
        target_size,
        verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        headroom: None,
        hom_sets: vec![],
        properties,
        note: passed.then(|| "completeness is checked through the category presentation, not enumerated".to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_kinds_pass_on_c2() {
        let base = BaseMonoid::builtin("c2").unwrap();
        let opts = VerifyOptions {
            samples: 100,
            ..Default::default()
        };
        for kind in [PresentationKind::XiI, PresentationKind::XiMI] {
            let r = verify_tensor(kind, &base, 2, &opts).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
            assert_eq!(r.properties.len(), 3);
        }
    }

    #[test]
    fn wrong_relation_fails() {
        let base = BaseMonoid::builtin("trivial").unwrap();
        let opts = VerifyOptions {
            extra_relations: vec![("X".into(), "i2".into())],
            samples: 10,
            ..Default::default()
        };
        let r = verify_tensor(PresentationKind::XiI, &base, 2, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }
}
