//! Named diagrams and input specifiers.
//!
//! The registry is a text file with one `name = PD[...]` entry per line and
//! `#` comments. A built-in copy is compiled in; the `QF_REGISTRY`
//! environment variable points at a replacement file.

use std::path::Path;

use thiserror::Error;

use crate::diagram::{build_diagram, parse_pd, Diagram, DiagramError, PdCode};
use crate::families::{pretzel_diagram, torus_diagram, FamilyError, PretzelParams, TorusParams};

pub const REGISTRY_ENV: &str = "QF_REGISTRY";

const BUILTIN: &str = include_str!("../data/registry.txt");

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("registry line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("registry line {line}: {source}")]
    Pd { line: usize, source: DiagramError },
    #[error("cannot read registry {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("unknown diagram name {0:?}")]
    UnknownName(String),
    #[error("bad family specifier {input:?}: {msg}")]
    BadSpecifier { input: String, msg: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registry {
    entries: Vec<(String, PdCode)>,
}

/// `L4a1{1}` and `L4a1_1` name the same entry.
pub fn canonical_name(name: &str) -> String {
    let trimmed = name.trim();
    match trimmed.strip_suffix('}').and_then(|s| s.split_once('{')) {
        Some((base, idx)) => format!("{base}_{idx}"),
        None => trimmed.to_string(),
    }
}

impl Registry {
    pub fn parse(text: &str) -> Result<Registry, RegistryError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, pd) = line
                .split_once('=')
                .ok_or_else(|| RegistryError::Format { line: i + 1, msg: "expected `name = PD[...]`".into() })?;
            let name = canonical_name(name);
            if name.is_empty() {
                return Err(RegistryError::Format { line: i + 1, msg: "empty name".into() });
            }
            let pd = parse_pd(pd.trim()).map_err(|source| RegistryError::Pd { line: i + 1, source })?;
            entries.retain(|(n, _): &(String, PdCode)| n != &name);
            entries.push((name, pd));
        }
        Ok(Registry { entries })
    }

    pub fn builtin() -> Registry {
        Registry::parse(BUILTIN).expect("built-in registry is valid")
    }

    pub fn from_file(path: &Path) -> Result<Registry, RegistryError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| RegistryError::Io { path: path.display().to_string(), source })?;
        Registry::parse(&text)
    }

    /// The file named by `QF_REGISTRY`, or the built-in registry.
    pub fn from_env() -> Result<Registry, RegistryError> {
        match std::env::var_os(REGISTRY_ENV) {
            Some(path) if !path.is_empty() => Registry::from_file(Path::new(&path)),
            _ => Ok(Registry::builtin()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&PdCode> {
        let name = canonical_name(name);
        self.entries.iter().find(|(n, _)| *n == name).map(|(_, pd)| pd)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn diagram(&self, name: &str) -> Result<Diagram, RegistryError> {
        let pd = self.get(name).ok_or_else(|| RegistryError::UnknownName(name.to_string()))?;
        Ok(build_diagram(pd)?.with_name(canonical_name(name)))
    }
}

/// A resolved input: its PD code and the diagram built from it.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub name: String,
    pub pd: PdCode,
    pub diagram: Diagram,
}

fn parse_ints(input: &str, body: &str) -> Result<Vec<i64>, RegistryError> {
    body.split(',')
        .map(|s| {
            s.trim().parse::<i64>().map_err(|e| RegistryError::BadSpecifier { input: input.to_string(), msg: e.to_string() })
        })
        .collect()
}

/// Resolves a registry name, a literal PD code, `torus:a,b` or `pretzel:a`.
pub fn resolve(input: &str, registry: &Registry) -> Result<Resolved, RegistryError> {
    let input = input.trim();
    if let Some(body) = input.strip_prefix("torus:") {
        let v = parse_ints(input, body)?;
        let [a, b] = v[..] else {
            return Err(RegistryError::BadSpecifier { input: input.to_string(), msg: "expected torus:a,b".into() });
        };
        let tp = TorusParams::new(a, b)?;
        return Ok(Resolved { name: tp.name(), pd: tp.pd_code(), diagram: torus_diagram(&tp)? });
    }
    if let Some(body) = input.strip_prefix("pretzel:") {
        let v = parse_ints(input, body)?;
        let [a] = v[..] else {
            return Err(RegistryError::BadSpecifier { input: input.to_string(), msg: "expected pretzel:a".into() });
        };
        let pp = PretzelParams::from_a(a)?;
        return Ok(Resolved { name: pp.name(), pd: pp.pd_code(), diagram: pretzel_diagram(&pp)? });
    }
    if input.starts_with("PD[") {
        let pd = parse_pd(input)?;
        let diagram = build_diagram(&pd)?;
        return Ok(Resolved { name: "<pd>".into(), pd, diagram });
    }
    let pd = registry.get(input).ok_or_else(|| RegistryError::UnknownName(input.to_string()))?.clone();
    let name = canonical_name(input);
    let diagram = build_diagram(&pd)?.with_name(name.clone());
    Ok(Resolved { name, pd, diagram })
}

/// The knots used for whole-registry property checks: the named knots plus
/// `T(2,5)`, `T(2,7)`, `T(3,4)`, `P(-2,3,3)` and `P(-2,3,5)`.
pub fn knot_suite(registry: &Registry) -> Result<Vec<Resolved>, RegistryError> {
    let inputs = ["3_1", "4_1", "5_1", "7_3", "10_145", "torus:2,5", "torus:2,7", "torus:3,4", "pretzel:3", "pretzel:5"];
    inputs.iter().map(|s| resolve(s, registry)).collect()
}
