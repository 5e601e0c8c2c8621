use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_facetpath");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("FACETPATH_BACKEND").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn enumerate_writes_lines_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let (out, manifest) = (dir.path().join("c.txt"), dir.path().join("m.json"));
    let o = run(&["enumerate", "--d", "4", "--n", "11", "--length", "7", "--out", p(&out), "--manifest", p(&manifest)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with('(')).count(), 35 + 186 + 328 + 32);
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m["count"], 581);
    assert_eq!(m["classes"][0]["raw_count"], 50);
}

#[test]
fn encode_axioms_only() {
    let o = run(&["encode", "--axioms-only", "--n", "8", "--r", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("p cnf 70 6720"));
    assert!(text.contains("c var 1 1 2 3 4"));
}

#[test]
fn encode_instance_with_shortcuts_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let (cnf, manifest) = (dir.path().join("i.cnf"), dir.path().join("m.json"));
    let o = run(&[
        "encode", "--d", "6", "--n", "12", "--index", "1", "--length", "7", "--revisits", "1", "--shortcuts",
        "--out", p(&cnf), "--manifest", p(&manifest),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&cnf).unwrap();
    let header = text.lines().find(|l| l.starts_with("p cnf")).unwrap();
    let clauses: usize = header.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!(clauses > 443_520 + 48);
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m["path"].as_array().unwrap().len(), 8);

    let o = run(&["encode", "--d", "6", "--n", "12", "--pivots", "(1,7) (2,8) (7,9) (3,10) (4,7) (5,11) (6,12)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(&format!("p cnf 792 {}", 443_520 + 48)));
}

#[test]
fn bounds_tables_print() {
    let o = run(&["bounds"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[7,9]"));
    let o = run(&["bounds", "--computed"]);
    assert!(stdout(&o).contains("{7,8}"));
    let o = run(&["bounds", "--computed", "--json", "--dims", "6", "--slack", "6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["interval"]["lo"], 6);
    assert_eq!(v[0]["interval"]["hi"], 6);
}

#[test]
fn prove_exit_codes_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    // pentagon: refuted
    let o = run(&["prove", "--d", "2", "--n", "5", "--length", "3", "--ignore-known-bounds", "--no-dimacs"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["conclusion"]["kind"], "refuted");

    // (3,8) admits a geodesic 4-path
    let o = run(&["prove", "--d", "3", "--n", "8", "--length", "4", "--ignore-known-bounds", "--mode", "eager", "--out-dir", p(dir.path())]);
    assert_eq!(o.status.code(), Some(10));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let index = report["conclusion"]["index"].as_u64().unwrap() as usize;
    let rec = &report["instances"][index - 1];
    let model = rec["model_path"].as_str().unwrap();
    let pivots = rec["pivots"].as_str().unwrap();
    let o = run(&["verify", "--model", model, "--d", "3", "--pivots", pivots]);
    assert_eq!(o.status.code(), Some(0));
    let check: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(check["geodesic"], true);
    // a path that is not on the boundary fails verification
    let o = run(&["verify", "--model", model, "--d", "3", "--pivots", "(1,5) (2,6) (3,7) (4,8)"]);
    assert_ne!(o.status.code(), Some(0));

    // known bounds settle (3,7) without solving
    let o = run(&["prove", "--d", "3", "--n", "7", "--length", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("immediate"));
}

#[test]
fn timeouts_are_incomplete() {
    let o = run(&["prove", "--d", "6", "--n", "12", "--length", "7", "--revisits", "1", "--only", "1", "--time-limit", "0.05", "--no-dimacs"]);
    assert_eq!(o.status.code(), Some(20));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["conclusion"]["kind"], "incomplete");
    assert_eq!(report["instances"][0]["status"], "TIMEOUT");
}

#[test]
fn solve_competition_output() {
    let dir = tempfile::tempdir().unwrap();
    let sat = dir.path().join("sat.cnf");
    std::fs::write(&sat, "p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
    let o = run(&["solve", p(&sat)]);
    assert_eq!(o.status.code(), Some(10));
    let text = stdout(&o);
    assert!(text.contains("s SATISFIABLE"));
    assert!(text.contains("v -1 2 0"));
    let unsat = dir.path().join("unsat.cnf");
    std::fs::write(&unsat, "p cnf 1 2\n1 0\n-1 0\n").unwrap();
    let o = run(&["solve", p(&unsat)]);
    assert_eq!(o.status.code(), Some(20));
    assert!(stdout(&o).contains("s UNSATISFIABLE"));
}

#[test]
fn external_backend_from_the_command_line() {
    let o = Command::new(BIN)
        .args(["prove", "--d", "2", "--n", "6", "--length", "3", "--ignore-known-bounds", "--no-dimacs", "--backend", "external"])
        .env("FACETPATH_SOLVER", BIN)
        .env("FACETPATH_SOLVER_ARGS", "solve {input}")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(10), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn usage_errors() {
    let o = run(&["prove", "--d", "3", "--n", "7", "--length", "4", "--workers", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["prove", "--d", "3", "--n", "7", "--length", "4", "--ignore-known-bounds", "--only", "50"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["prove", "--d", "3", "--n", "7", "--length", "4", "--backend", "external"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["enumerate", "--d", "4", "--n", "11", "--length", "7", "--revisits", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert!(!o.status.success());
}
