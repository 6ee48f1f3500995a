use std::path::Path;
use std::process::Command;

use ringphase_cli::manifest::RunManifest;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ringphase"))
}

fn run_in(dir: &Path, args: &[&str]) -> std::process::Output {
    bin().args(args).arg("--output-dir").arg(dir).output().unwrap()
}

fn rows(path: &Path) -> Vec<Vec<f64>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect()
}

#[test]
fn state_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["state", "--radius", "1", "--sigma", "0.1", "--a-re", "1", "--a-im", "0", "--nmax", "32"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = rows(&dir.path().join("state.csv"));
    assert_eq!(table.len(), 65);
    let total: f64 = table.iter().map(|r| r[3]).sum();
    assert!((total - 1.0).abs() < 1e-12);

    let out = run_in(dir.path(), &["state", "--sigma", "0", "--a-re", "0"]);
    assert!(out.status.success());
    let table = rows(&dir.path().join("state.csv"));
    let c = |n: f64| table.iter().find(|r| r[0] == n).unwrap()[1];
    assert!((c(0.0) / c(1.0) - 0.5f64.exp()).abs() < 1e-12);
}

#[test]
fn header_and_line_endings() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_in(dir.path(), &["weyl", "--k", "-1:1", "--alpha-points", "8"]).status.success());
    let text = std::fs::read_to_string(dir.path().join("weyl.csv")).unwrap();
    assert!(text.starts_with("alpha,k,re,im,abs\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 1 + 8 * 3);
    // α = 0, K = 0 sits at row 4·3 + 1
    let table = rows(&dir.path().join("weyl.csv"));
    let origin = &table[4 * 3 + 1];
    assert_eq!((origin[0], origin[1]), (0.0, 0.0));
    assert!((origin[2] - 1.0).abs() < 1e-12 && origin[3].abs() < 1e-12);
}

#[test]
fn reruns_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["wigner", "--sigma-sweep", "0:1:8", "--time", "1", "--x-points", "32"];
    assert!(run_in(a.path(), &args).status.success());
    assert!(run_in(b.path(), &args).status.success());
    for f in ["wigner.csv", "wigner.manifest.json"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap());
    }
    let header = std::fs::read_to_string(a.path().join("wigner.csv")).unwrap();
    assert!(header.starts_with("x,sigma,n,momentum,wigner\n"));
}

#[test]
fn replay_reproduces_outputs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert!(run_in(a.path(), &["marginals", "--a-im", "0.5", "--x-points", "16"]).status.success());
    let manifest = a.path().join("marginals.manifest.json");
    let parsed = RunManifest::load(&manifest).unwrap();
    assert_eq!(parsed.outputs.len(), 2);
    let out = bin().arg("replay").arg(&manifest).arg("--output-dir").arg(b.path()).arg("--check").output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for rec in &parsed.outputs {
        assert_eq!(std::fs::read(a.path().join(&rec.file)).unwrap(), std::fs::read(b.path().join(&rec.file)).unwrap());
    }

    // a tampered recording is caught
    std::fs::write(a.path().join("marginals_position.csv"), "x\n").unwrap();
    let out = bin().arg("replay").arg(&manifest).arg("--output-dir").arg(b.path()).arg("--check").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_format() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_in(dir.path(), &["evolve", "--time", "1", "--format", "json", "--nmax", "8"]).status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("evolve.json")).unwrap()).unwrap();
    assert_eq!(v["columns"][0], "index");
    assert_eq!(v["rows"].as_array().unwrap().len(), 17);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run_in(dir.path(), args).status.code();
    assert_eq!(code(&["state"]), Some(0));
    assert_eq!(code(&["state", "--radius", "0"]), Some(1));
    assert_eq!(code(&["state", "--nmax", "x"]), Some(1));
    assert_eq!(code(&["weyl", "--k", "100"]), Some(1));
    assert_eq!(code(&["wigner", "--n-range", "3:-3"]), Some(1));
    assert_eq!(code(&["marginals", "--sigma-sweep"]), Some(1));
    assert_eq!(code(&["wigner", "--panels", "7"]), Some(1));
    let none = bin().output().unwrap();
    assert_eq!(none.status.code(), Some(1));
    let help = bin().arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    let missing = bin().args(["replay", "/nonexistent/m.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_exit_status() {
    let out = bin().args(["verify"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("printed-formula discrepancies"));
    for id in ["(a)", "(b)", "(c)", "(d)"] {
        assert!(text.contains(id));
    }
    // quadrature-only checks lose accuracy at low resolution; exact ones do not
    let low = bin().args(["verify", "--nmax", "8", "--panels", "512", "--format", "json"]).output().unwrap();
    let report: serde_json::Value = serde_json::from_slice(&low.stdout).unwrap();
    for c in report["checks"].as_array().unwrap() {
        let exact = c["tolerance"].as_f64().unwrap() <= 1e-12;
        if exact {
            assert!(c["passed"].as_bool().unwrap(), "{}", c["name"]);
        }
    }
}
