//! Group configuration files: generators, represented generators, and
//! invariant forms with their per-generator characters.
//!
//! Configs are untrusted input. Every declared invariant is re-verified
//! against every generator at load time, and the optional syzygy
//! e² − f³ = c·vⁿ is checked exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use super::{form_invariance_check, Moebius, MoebiusError};
use crate::exact::{literal, parse_cyclo, parse_poly, Cyclo, Poly, RatFn};

const A4_TEXT: &str = include_str!("../../configs/A4.config");
const S4_TEXT: &str = include_str!("../../configs/S4.config");
const A5_TEXT: &str = include_str!("../../configs/A5.config");

/// Names of the configs compiled into the library.
pub const BUILTIN_GROUPS: [&str; 3] = ["A4", "S4", "A5"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantForm {
    pub label: String,
    pub poly: Poly,
    pub weight: i64,
    /// χ(A) for each generator A, in generator order.
    pub characters: Vec<Cyclo>,
}

/// edge² − face³ = constant · vertex^vertex_power, referring to invariant labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygy {
    pub edge: String,
    pub face: String,
    pub vertex: String,
    pub vertex_power: u32,
    pub constant: Cyclo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupConfig {
    pub name: String,
    pub order: u32,
    pub generators: Vec<Moebius>,
    pub rho_generators: Vec<Moebius>,
    pub invariants: Vec<InvariantForm>,
    pub syzygy: Option<Syzygy>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: String,
    cyclotomic_order: u32,
    generators: Vec<[String; 4]>,
    rho_generators: Vec<[String; 4]>,
    #[serde(default)]
    invariants: Vec<RawInvariant>,
    syzygy: Option<RawSyzygy>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInvariant {
    label: String,
    poly: String,
    weight: i64,
    characters: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSyzygy {
    edge: String,
    face: String,
    vertex: String,
    vertex_power: u32,
    constant: String,
}

fn parse_err(what: &str, e: impl std::fmt::Display) -> MoebiusError {
    MoebiusError::Parse(format!("{what}: {e}"))
}

fn parse_matrix(m: &[String; 4], order: u32, what: &str) -> Result<Moebius, MoebiusError> {
    let mut e = Vec::with_capacity(4);
    for s in m {
        e.push(parse_cyclo(s, order).map_err(|err| parse_err(what, err))?);
    }
    let [a, b, c, d]: [Cyclo; 4] = e.try_into().expect("four entries");
    Moebius::new(a, b, c, d).map_err(|_| MoebiusError::Parse(format!("{what}: degenerate matrix")))
}

/// Parses and validates a config document.
pub fn load_group_config(source: &str) -> Result<GroupConfig, MoebiusError> {
    let raw: RawConfig = toml::from_str(source).map_err(|e| parse_err("toml", e))?;
    let n = raw.cyclotomic_order;
    if n == 0 {
        return Err(MoebiusError::Parse("cyclotomic_order must be positive".into()));
    }
    if raw.generators.is_empty() {
        return Err(MoebiusError::Parse("at least one generator is required".into()));
    }
    if raw.rho_generators.len() != raw.generators.len() {
        return Err(MoebiusError::Parse("rho_generators must match generators in length".into()));
    }
    let generators = raw
        .generators
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(m, n, &format!("generator {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let rho_generators = raw
        .rho_generators
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(m, n, &format!("rho generator {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut invariants = Vec::new();
    for inv in &raw.invariants {
        let poly = parse_poly(&inv.poly, n).map_err(|e| parse_err(&inv.label, e))?;
        if poly.is_zero() {
            return Err(MoebiusError::Parse(format!("{}: zero invariant", inv.label)));
        }
        if inv.characters.len() != generators.len() {
            return Err(MoebiusError::Parse(format!("{}: one character per generator required", inv.label)));
        }
        let characters = inv
            .characters
            .iter()
            .map(|s| parse_cyclo(s, n).map_err(|e| parse_err(&inv.label, e)))
            .collect::<Result<Vec<_>, _>>()?;
        invariants.push(InvariantForm { label: inv.label.clone(), poly, weight: inv.weight, characters });
    }
    let syzygy = match raw.syzygy {
        None => None,
        Some(s) => Some(Syzygy {
            constant: parse_cyclo(&s.constant, n).map_err(|e| parse_err("syzygy", e))?,
            edge: s.edge,
            face: s.face,
            vertex: s.vertex,
            vertex_power: s.vertex_power,
        }),
    };
    let cfg = GroupConfig { name: raw.name, order: n, generators, rho_generators, invariants, syzygy };
    cfg.validate()?;
    Ok(cfg)
}

/// Reads and validates a config file.
pub fn load_group_config_file(path: &Path) -> Result<GroupConfig, MoebiusError> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(&path.display().to_string(), e))?;
    load_group_config(&text)
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn matrix_line(m: &Moebius) -> String {
    let e: Vec<String> = m.entries().iter().map(|c| quoted(&literal::cyclo_to_literal(c))).collect();
    format!("  [{}],\n", e.join(", "))
}

impl GroupConfig {
    /// Shipped config text for one of [`BUILTIN_GROUPS`].
    pub fn builtin_text(name: &str) -> Option<&'static str> {
        match name {
            "A4" => Some(A4_TEXT),
            "S4" => Some(S4_TEXT),
            "A5" => Some(A5_TEXT),
            _ => None,
        }
    }

    pub fn builtin(name: &str) -> Result<Self, MoebiusError> {
        let text = Self::builtin_text(name).ok_or_else(|| MoebiusError::Parse(format!("unknown group {name}")))?;
        load_group_config(text)
    }

    pub fn invariant(&self, label: &str) -> Option<&InvariantForm> {
        self.invariants.iter().find(|i| i.label == label)
    }

    /// (A, ρ(A)) pairs for [`super::equivariance_check`].
    pub fn pairs(&self) -> Vec<(Moebius, Moebius)> {
        self.generators.iter().cloned().zip(self.rho_generators.iter().cloned()).collect()
    }

    /// Checks every invariant against every generator, then the syzygy.
    pub fn validate(&self) -> Result<(), MoebiusError> {
        for inv in &self.invariants {
            let alpha = RatFn::from_poly(inv.poly.clone());
            for (gi, (g, chi)) in self.generators.iter().zip(&inv.characters).enumerate() {
                if !form_invariance_check(&alpha, inv.weight, chi, g).holds {
                    return Err(MoebiusError::Validation(format!(
                        "invariant {} (weight {}) fails under generator {gi}",
                        inv.label, inv.weight
                    )));
                }
            }
        }
        if let Some(s) = &self.syzygy {
            self.check_syzygy(s)?;
        }
        Ok(())
    }

    fn check_syzygy(&self, s: &Syzygy) -> Result<(), MoebiusError> {
        let get = |l: &str| {
            self.invariant(l)
                .map(|i| i.poly.clone())
                .ok_or_else(|| MoebiusError::Validation(format!("syzygy refers to unknown invariant {l}")))
        };
        let (e, f, v) = (get(&s.edge)?, get(&s.face)?, get(&s.vertex)?);
        let lhs = &e.pow(2) - &f.pow(3);
        let rhs = v.pow(s.vertex_power).scale(&s.constant);
        if lhs != rhs {
            return Err(MoebiusError::Validation(format!(
                "syzygy {}^2 - {}^3 = ({})*{}^{} does not hold",
                s.edge, s.face, s.constant, s.vertex, s.vertex_power
            )));
        }
        Ok(())
    }

    /// Canonical text; loading it reproduces `self` and writing again is byte-identical.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "name = {}", quoted(&self.name)).unwrap();
        writeln!(out, "cyclotomic_order = {}", self.order).unwrap();
        out.push_str("generators = [\n");
        self.generators.iter().for_each(|m| out.push_str(&matrix_line(m)));
        out.push_str("]\nrho_generators = [\n");
        self.rho_generators.iter().for_each(|m| out.push_str(&matrix_line(m)));
        out.push_str("]\n");
        for inv in &self.invariants {
            let chars: Vec<String> = inv.characters.iter().map(|c| quoted(&literal::cyclo_to_literal(c))).collect();
            out.push_str("\n[[invariants]]\n");
            writeln!(out, "label = {}", quoted(&inv.label)).unwrap();
            writeln!(out, "poly = {}", quoted(&literal::poly_to_literal(&inv.poly))).unwrap();
            writeln!(out, "weight = {}", inv.weight).unwrap();
            writeln!(out, "characters = [{}]", chars.join(", ")).unwrap();
        }
        if let Some(s) = &self.syzygy {
            out.push_str("\n[syzygy]\n");
            writeln!(out, "edge = {}", quoted(&s.edge)).unwrap();
            writeln!(out, "face = {}", quoted(&s.face)).unwrap();
            writeln!(out, "vertex = {}", quoted(&s.vertex)).unwrap();
            writeln!(out, "vertex_power = {}", s.vertex_power).unwrap();
            writeln!(out, "constant = {}", quoted(&literal::cyclo_to_literal(&s.constant))).unwrap();
        }
        out
    }
}
