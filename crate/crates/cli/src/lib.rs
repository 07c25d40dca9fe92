//! Reports and config loading behind the `projeq` binary.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use projeq_core::moebius::{load_group_config_file, GroupConfig, BUILTIN_GROUPS};
use projeq_core::suites::{run_suite, Check, Options, Suite};

/// Environment variable naming a directory of `<group>.config` files.
pub const CONFIG_DIR_ENV: &str = "PROJEQ_CONFIG_DIR";

/// The shipped configs, or `<dir>/<group>.config` for each group when a
/// directory is given.
pub fn load_configs(dir: Option<&Path>) -> Result<Vec<GroupConfig>> {
    BUILTIN_GROUPS
        .iter()
        .map(|g| match dir {
            None => Ok(GroupConfig::builtin(g)?),
            Some(d) => {
                let path = d.join(format!("{g}.config"));
                if !path.is_file() {
                    bail!("missing config {}", path.display());
                }
                load_group_config_file(&path).with_context(|| format!("loading {}", path.display()))
            }
        })
        .collect()
}

/// SHA-256 over the canonical text of every config, in load order.
pub fn config_hash(configs: &[GroupConfig]) -> String {
    let mut h = Sha256::new();
    for c in configs {
        h.update(c.name.as_bytes());
        h.update(b"\n");
        h.update(c.to_text().as_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub status: &'static str,
    pub residual: String,
    /// Seconds; left out of reproducible reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub suite: String,
    pub status: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

impl Report {
    pub fn new(suite: Suite, opts: &Options, checks: &[Check], timings: bool) -> Self {
        let mut records: Vec<CheckRecord> = checks
            .iter()
            .map(|c| CheckRecord {
                id: c.id.clone(),
                status: status(c.passed),
                residual: c.residual.clone(),
                wall_time: timings.then_some(c.seconds),
            })
            .collect();
        records.sort_by(|a, b| a.id.cmp(&b.id));
        Report {
            suite: suite.as_str().to_string(),
            status: status(checks.iter().all(|c| c.passed)),
            version: env!("CARGO_PKG_VERSION"),
            config_hash: config_hash(&opts.configs),
            seed: opts.seed,
            checks: records,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Runs a suite by name; an empty or unknown name fails before any work.
pub fn build_report(name: &str, opts: &Options, timings: bool) -> Result<Report> {
    let suite: Suite = name.parse()?;
    let checks = run_suite(suite, opts)?;
    Ok(Report::new(suite, opts, &checks, timings))
}

pub fn emit_report(r: &Report, path: &Path) -> Result<()> {
    fs::write(path, r.to_json()).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = load_configs(None).unwrap();
        assert_eq!(config_hash(&a), config_hash(&load_configs(None).unwrap()));
        assert_eq!(config_hash(&a).len(), 64);
        assert_ne!(config_hash(&a), config_hash(&a[..2]));
    }

    #[test]
    fn empty_and_unknown_suites_are_rejected() {
        let opts = Options::default();
        assert!(build_report("", &opts, false).is_err());
        assert!(build_report("klien", &opts, false).is_err());
    }

    #[test]
    fn failing_record_keeps_exact_residual() {
        let checks = vec![Check { id: "b".into(), passed: false, residual: "(-255)*q^(-1)".into(), seconds: 0.5 }];
        let r = Report::new(Suite::Qseries, &Options::default(), &checks, false);
        assert_eq!(r.status, "fail");
        let json = r.to_json();
        assert!(json.contains("\"residual\": \"(-255)*q^(-1)\""));
        assert!(!json.contains("wall_time"));
        assert!(Report::new(Suite::Qseries, &Options::default(), &checks, true)
            .to_json()
            .contains("\"wall_time\": 0.5"));
    }
}
