//! Knot Floer complexes over `F = Z/2` and the homology of their large
//! surgery quotients `A_k^+`.

mod complex;
mod engine;
mod gf2;

pub use complex::{mirror, staircase, Arrow, CfkComplex, Generator};
pub use engine::{a_plus, big_h, genus, AkResult};

use crate::{Error, Result};

const PRESETS: &[(&str, &str)] = &[
    ("T52", include_str!("../../presets/T52.cfk")),
    ("T5m2", include_str!("../../presets/T5m2.cfk")),
    ("unknot", include_str!("../../presets/unknot.cfk")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

pub fn preset(name: &str) -> Result<CfkComplex> {
    let (_, text) = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("unknown preset {name:?}")))?;
    CfkComplex::parse(&format!("preset:{name}"), text)
}

/// Resolves `preset:NAME`, `file:PATH` and `mirror:SPEC`.
pub fn resolve(spec: &str) -> Result<CfkComplex> {
    if let Some(inner) = spec.strip_prefix("mirror:") {
        return Ok(mirror(&resolve(inner)?));
    }
    if let Some(name) = spec.strip_prefix("preset:") {
        return preset(name);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        return CfkComplex::parse(spec, &text);
    }
    Err(Error::Parse(format!("unknown complex source {spec:?}")))
}
