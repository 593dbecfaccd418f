use std::fmt::Write;

use rookwreath::verify::{VerificationReport, Verdict};
use rookwreath::wreath::WreathElement;

pub fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

/// Tuple entries (`0` is the zero, `k` the `k`-th base element), the map, and
/// its diagram.
pub fn element(el: &WreathElement) -> String {
    let entries: Vec<String> = el.tuple().entries().iter().map(|x| x.to_string()).collect();
    format!(
        "tuple: [{}]\nmap: {}\n{}\n",
        entries.join(", "),
        el.map(),
        el.map().render_ascii()
    )
}

pub fn report(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind: {}\nmonoid: {}\nn: {}", r.kind, r.monoid, r.n);
    match &r.soundness.failure {
        None => {
            let _ = writeln!(out, "soundness: pass ({} relations)", r.soundness.checked);
        }
        Some(f) => {
            let _ = writeln!(
                out,
                "soundness: fail at relation {} ({}): {} = {}",
                f.index, f.schema, f.lhs, f.rhs
            );
        }
    }
    let _ = writeln!(
        out,
        "generation: {}/{} covered, {} outside",
        r.generation.covered, r.generation.target, r.generation.outside
    );
    if let Some(h) = r.headroom {
        let _ = writeln!(out, "headroom: {h}");
    }
    for h in &r.hom_sets {
        let got = h.enumerated.map_or("?".to_string(), |k| k.to_string());
        let _ = writeln!(out, "  hom({}, {}): {got} / {}", h.source, h.target, h.expected);
    }
    for c in &r.properties {
        let _ = writeln!(
            out,
            "property {}: {} ({} checked){}",
            c.name,
            if c.passed { "pass" } else { "fail" },
            c.checked,
            c.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default()
        );
    }
    let size = r.enumerated_size.map_or("?".to_string(), |k| k.to_string());
    let _ = writeln!(out, "size: {size} / {}", r.target_size);
    if let Some(note) = &r.note {
        let _ = writeln!(out, "note: {note}");
    }
    let _ = writeln!(out, "verdict: {}", verdict(r.verdict));
    out
}
