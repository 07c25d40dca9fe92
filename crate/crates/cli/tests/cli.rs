use std::fs;
use std::process::{Command, Output};

use projeq_core::moebius::{GroupConfig, BUILTIN_GROUPS};

fn projeq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projeq")).args(args).env_remove("PROJEQ_CONFIG_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &std::path::Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn identities_report_is_reproducible_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        projeq(&["report", "--suite", "identities", "--seed", "7", "--out", p.to_str().unwrap()]);
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(!ta.is_empty());
    assert_eq!(ta, tb);
    let v = json(&a);
    assert_eq!(v["seed"], 7);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted, "canonical order, each check once");
}

#[test]
fn klein_report_contains_the_klein_map_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("klein.json");
    let o = projeq(&["verify", "klein", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"status\": \"pass\""));
    let v = json(&out);
    let check = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "phi(v5,-12) == K").expect("check present");
    assert_eq!(check["status"], "pass");
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn qseries_report_has_four_j_relations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let o = projeq(&["report", "--suite", "qseries", "--order", "20", "--out", out.to_str().unwrap()]);
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    let j: Vec<_> = checks.iter().filter(|c| c["id"].as_str().unwrap().starts_with("j-relation n=")).collect();
    assert_eq!(j.len(), 4);
    // the literal n = 2 normalization fails, so the run fails and carries an exact residual
    let n2 = j.iter().find(|c| c["id"] == "j-relation n=2").unwrap();
    assert_eq!(n2["status"], "fail");
    assert!(n2["residual"].as_str().unwrap().contains("(-255)*q^(-1)"));
    assert_eq!(v["status"], "fail");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn empty_suite_name_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = projeq(&["report", "--suite", "", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    assert!(!projeq(&["verify", "nonsense"]).status.success());
}

#[test]
fn config_dir_flag_and_missing_configs() {
    let dir = tempfile::tempdir().unwrap();
    for g in BUILTIN_GROUPS {
        fs::write(dir.path().join(format!("{g}.config")), GroupConfig::builtin_text(g).unwrap()).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    let o = projeq(&["--config-dir", d, "klein", "--group", "A5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("phi   = (-1/11*z^11 - 6*z^6 + z)/(z^10 + 6*z^5 - 1/11)"), "{}", stdout(&o));

    fs::remove_file(dir.path().join("S4.config")).unwrap();
    let o = projeq(&["--config-dir", d, "verify", "klein"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("S4.config"));

    let o = Command::new(env!("CARGO_BIN_EXE_projeq"))
        .args(["verify", "klein"])
        .env("PROJEQ_CONFIG_DIR", d)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "env var selects the same directory");
}

#[test]
fn single_commands() {
    let o = projeq(&["cycles", "--map", "klein", "--tol", "1e-9"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("period=2 tol=1e-9 status=pass"));
    assert_eq!(stdout(&o).lines().count(), 21);

    let o = projeq(&["j-relation", "--n", "4", "--order", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("status=pass"));
    assert!(!projeq(&["j-relation", "--n", "2", "--order", "20"]).status.success());
    assert!(projeq(&["j-relation", "--n", "2", "--order", "20", "--corrected"]).status.success());

    let o = projeq(&["nc", "s-poly", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), "S2 = p3 + 4 p2 p1 + 4 p1 p2 + 12 p1^3");

    let o = projeq(&["qseries", "--name", "eta", "--terms", "3"]);
    assert!(stdout(&o).starts_with("q^(1/24)"), "{}", stdout(&o));
}
