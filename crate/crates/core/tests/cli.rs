use std::process::{Command, Output};

use iwasawa_core::report::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwasawa")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json_report(args: &[&str]) -> (i32, Report) {
    let o = run(args);
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    (code(&o), r)
}

#[test]
fn lambda_json() {
    let (c, r) = json_report(&["--json", "-r", "7,3,-1", "lambda"]);
    assert_eq!(c, 0);
    let l = r.lambda.unwrap();
    assert_eq!(l.lambda2, 3);
    assert!(l.greenberg_assumed);
    assert_eq!(r.assumptions.len(), 1);

    let (c, r) = json_report(&["lambda", "--json", "-r", "7,-1", "--lambda-plus", "2"]);
    assert_eq!(c, 0);
    assert_eq!(r.lambda.unwrap().lambda2, 3);
}

#[test]
fn lambda_errors_have_exit_codes() {
    let (c, r) = json_report(&["--json", "-r", "7,3", "lambda"]);
    assert_eq!(c, 3);
    assert_eq!(r.errors[0].kind, "hypothesis");
    let (c, _) = json_report(&["--json", "-r", "4", "lambda"]);
    assert_eq!(c, 2);
    let o = run(&["-r", "7,q", "lambda"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(code(&run(&["lambda"])), 2);
    assert_eq!(code(&run(&["-r", "7,-1", "--assume-greenberg", "false", "lambda"])), 3);
    assert_eq!(code(&run(&["-r", "-7", "--assume-greenberg=false", "lambda"])), 0);
}

#[test]
fn parity_text() {
    let o = run(&["parity", "-r", "2,-11,33"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("odd (case imag-3)"), "{text}");
    let (_, r) = json_report(&["--json", "parity", "-r", "2,-7"]);
    assert_eq!(r.parity.unwrap().matched_case, None);
}

#[test]
fn genus_json() {
    let (c, r) = json_report(&["--json", "genus", "-r", "3,5"]);
    assert_eq!(c, 0);
    let g = r.genus.unwrap();
    assert_eq!(g.narrow.to_string(), "-1,3,5");
    assert_eq!(g.genus.to_string(), "3,5");
}

#[test]
fn splitting_table() {
    let (c, r) = json_report(&["--json", "splitting", "-p", "7", "-n", "0..5"]);
    assert_eq!(c, 0);
    let g: Vec<u64> = r.splitting.iter().map(|x| x.g).collect();
    assert_eq!(g, vec![1, 2, 2, 2, 2, 2]);
    let o = run(&["splitting", "-p", "3", "-n", "0..3", "-d", "5"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let behaviours: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(behaviours, vec!["inert", "split", "split", "split"]);
    assert_eq!(code(&run(&["splitting", "-p", "2", "-n", "0..3"])), 2);
    assert_eq!(code(&run(&["splitting", "-p", "9", "-n", "0..3"])), 2);
    assert_eq!(code(&run(&["splitting", "-p", "7", "-n", "0..99"])), 2);
}

#[test]
fn verify_with_configs() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.conf");
    std::fs::write(&good, "# quick\nsuites = order, f2n\nprime_bound = 500\n").unwrap();
    let o = run(&["verify", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let faulty = dir.path().join("faulty.conf");
    std::fs::write(&faulty, "suites = f2n\nfault = f2n-branch\nprime_bound = 100\n").unwrap();
    let o = run(&["verify", faulty.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL [f2n]"));

    let empty = dir.path().join("empty.conf");
    std::fs::write(&empty, "suites =\n").unwrap();
    let o = run(&["verify", empty.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no suites"));

    let missing = dir.path().join("missing.conf");
    assert_ne!(code(&run(&["verify", missing.to_str().unwrap()])), 0);
}

#[test]
fn sweep_tables() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let o = run(&["sweep", "--bound", "0", "--output", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "field,lambda2,parity,case,assumptions\n");

    let json = dir.path().join("t.json");
    let o = run(&["sweep", "--bound", "12", "--format", "json", "--output", json.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(rows.iter().any(|r| r["field"] == "-1,2" && r["lambda2"] == 0 && r["case"] == "imag-4"));

    assert_eq!(code(&run(&["sweep", "--bound", "5000", "--output", csv.to_str().unwrap()])), 2);
}
