use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use rookwreath::presentations::PresentationKind;
use rookwreath::verify::{verify_presentation, VerificationReport, Verdict, VerifyOptions};
use serde::{Deserialize, Serialize};

use crate::{monoid, print_json, render, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    #[serde(default)]
    cells: Vec<Cell>,
}

#[derive(Deserialize, Serialize, Clone)]
#[serde(deny_unknown_fields)]
struct Cell {
    kind: PresentationKind,
    monoid: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    headroom: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    extra_relations: Vec<(String, String)>,
}

#[derive(Serialize)]
struct CellOutcome {
    index: usize,
    #[serde(flatten)]
    cell: Cell,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl CellOutcome {
    fn status(&self) -> &'static str {
        match &self.report {
            Some(r) => render::verdict(r.verdict),
            None => "error",
        }
    }
}

fn run_cell(cell: &Cell, dir: &Path, budget: Option<usize>) -> Result<VerificationReport> {
    let builtin = rookwreath::base::BaseMonoid::BUILTIN_NAMES.contains(&cell.monoid.as_str());
    let spec = if builtin || Path::new(&cell.monoid).is_absolute() {
        cell.monoid.clone()
    } else {
        dir.join(&cell.monoid).to_string_lossy().into_owned()
    };
    let base = monoid::load(&spec)?;
    let mut opts = VerifyOptions {
        budget: cell.budget.or(budget),
        extra_relations: cell.extra_relations.clone(),
        ..Default::default()
    };
    if let Some(h) = cell.headroom {
        opts.headroom = h;
    }
    Ok(verify_presentation(cell.kind, &base, cell.n, &opts)?)
}

/// Runs every cell, concurrently, and reports in cell order. Exits 0 when all
/// cells pass, 3 when the worst outcome is inconclusive, 2 otherwise.
pub fn run(config: &Path, budget: Option<usize>, json: bool) -> Result<u8> {
    let text = std::fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let config_data: Config =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", config.display()))?;
    let dir = config.parent().unwrap_or(Path::new("."));
    let outcomes: Vec<CellOutcome> = config_data
        .cells
        .par_iter()
        .enumerate()
        .map(|(index, cell)| {
            let (report, error) = match run_cell(cell, dir, budget) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(format!("{e:#}"))),
            };
            CellOutcome {
                index,
                cell: cell.clone(),
                report,
                error,
            }
        })
        .collect();
    let count = |s: &str| outcomes.iter().filter(|o| o.status() == s).count();
    let summary = serde_json::json!({
        "pass": count("pass"),
        "fail": count("fail"),
        "inconclusive": count("inconclusive"),
        "error": count("error"),
    });
    if json {
        print_json(&serde_json::json!({ "cells": outcomes, "summary": summary }));
    } else {
        for o in &outcomes {
            let sizes = o
                .report
                .as_ref()
                .map(|r| {
                    let got = r.enumerated_size.map_or("?".to_string(), |k| k.to_string());
                    format!("{got}/{}", r.target_size)
                })
                .or_else(|| o.error.clone())
                .unwrap_or_default();
            outln!(
                "{:>3} {:<14} {:<12} {:>2} {:<13} {sizes}",
                o.index,
                o.cell.kind.name(),
                o.cell.monoid,
                o.cell.n,
                o.status()
            );
        }
        outln!(
            "{} cells: {} pass, {} fail, {} inconclusive, {} error",
            outcomes.len(),
            summary["pass"],
            summary["fail"],
            summary["inconclusive"],
            summary["error"]
        );
    }
    let worst = outcomes
        .iter()
        .map(|o| match o.report.as_ref().map(|r| r.verdict) {
            Some(Verdict::Pass) => EXIT_PASS,
            Some(Verdict::Inconclusive) => EXIT_INCONCLUSIVE,
            _ => EXIT_FAIL,
        })
        .max_by_key(|&c| match c {
            EXIT_PASS => 0,
            EXIT_INCONCLUSIVE => 1,
            _ => 2,
        })
        .unwrap_or(EXIT_PASS);
    Ok(worst)
}
