use std::path::Path;

use anyhow::{Context, Result};
use rookwreath::base::{BaseMonoid, BasePresentation, FiniteMonoid};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(untagged)]
enum MonoidFile {
    Full {
        name: Option<String>,
        monoid: FiniteMonoid,
        presentation: BasePresentation,
    },
    Table(FiniteMonoid),
    Presentation(BasePresentation),
}

/// A built-in name, or a JSON file holding a multiplication table, a
/// presentation, or both (`{"monoid": …, "presentation": …}`).
pub fn load(spec: &str) -> Result<BaseMonoid> {
    if BaseMonoid::BUILTIN_NAMES.contains(&spec) {
        return Ok(BaseMonoid::builtin(spec)?);
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).with_context(|| {
        format!(
            "{spec:?} is neither a built-in monoid ({}) nor a readable file",
            BaseMonoid::BUILTIN_NAMES.join(", ")
        )
    })?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    let parsed: MonoidFile =
        serde_json::from_str(&text).with_context(|| format!("{spec}: not a monoid or presentation"))?;
    Ok(match parsed {
        MonoidFile::Full {
            name,
            monoid,
            presentation,
        } => BaseMonoid::new(name.unwrap_or(stem), presentation, Some(monoid))?,
        MonoidFile::Table(monoid) => BaseMonoid::from_table(stem, monoid)?,
        MonoidFile::Presentation(presentation) => BaseMonoid::new(stem, presentation, None)?,
    })
}
