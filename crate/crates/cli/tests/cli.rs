use std::fs;
use std::process::Command;

use serde_json::Value;

fn cpf() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cpf"))
}

fn stdout(args: &[&str]) -> String {
    let out = cpf().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn verify_writes_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let st = cpf()
        .args([
            "verify", "calpha", "--m", "2", "--n", "1", "--k", "1", "--alpha", "1", "--json",
        ])
        .arg(&path)
        .status()
        .unwrap();
    assert!(st.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["verdict"], "pass");
    assert_eq!(v[0]["params"]["alpha"], serde_json::json!([1]));
    assert!(v[0].get("elapsed").is_none());
}

#[test]
fn unknown_check_is_an_error() {
    let st = cpf().args(["verify", "nope"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn config_budget_applies() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"defaults":[{"m":2,"n":1,"k":3,"area":2}]}"#).unwrap();
    let out = cpf()
        .args([
            "verify", "main", "--m", "2", "--n", "1", "--k", "3", "--config",
        ])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("leaves no comparable"));
    let st = cpf()
        .args([
            "verify",
            "main",
            "--m",
            "2",
            "--n",
            "1",
            "--k",
            "3",
            "--area-budget",
            "5",
            "--config",
        ])
        .arg(&cfg)
        .status()
        .unwrap();
    assert!(st.success());
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("r{threads}.json"));
        let st = cpf()
            .env("VERIFY_THREADS", threads)
            .args([
                "verify", "calpha", "gamma", "wilson", "--m", "3", "--n", "2", "--k", "2", "--json",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(st.success());
        texts.push(fs::read_to_string(&path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn phi_table_of_s22() {
    let text = stdout(&["table", "phi", "--lambda", "2,2"]);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.records().count(), 11);
}

#[test]
fn main_series_csv() {
    let text = stdout(&[
        "table",
        "main",
        "--m",
        "2",
        "--n",
        "1",
        "--k",
        "1",
        "--area-budget",
        "3",
        "--labels",
        "2",
    ]);
    assert_eq!(text, "t,xexp,coeff\n0,(1),1\n");
}

#[test]
fn gamma_then_psi_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let all: Value = serde_json::from_str(&stdout(&[
        "enumerate",
        "ptab",
        "--m",
        "3",
        "--n",
        "2",
        "--k",
        "2",
    ]))
    .unwrap();
    let tabs = all.as_array().unwrap();
    assert!(tabs.len() > 10);
    let tab = &tabs[tabs.len() / 2];
    let tin = dir.path().join("t.json");
    fs::write(&tin, tab.to_string()).unwrap();
    let g: Value =
        serde_json::from_str(&stdout(&["gamma", "--input", tin.to_str().unwrap()])).unwrap();
    let gin = dir.path().join("g.json");
    fs::write(&gin, g["image"].to_string()).unwrap();
    let back: Value =
        serde_json::from_str(&stdout(&["psi", "--input", gin.to_str().unwrap()])).unwrap();
    assert_eq!(&back["image"], tab);
    assert_eq!(back["stats"]["skeleton"], g["stats"]["skeleton"]);
    assert_eq!(back["stats"]["stat"], g["stats"]["stat"]);
}

#[test]
fn enumerate_counts_match() {
    let pf: Value = serde_json::from_str(&stdout(&[
        "enumerate",
        "pf",
        "--m",
        "2",
        "--n",
        "1",
        "--k",
        "2",
    ]))
    .unwrap();
    let tab: Value = serde_json::from_str(&stdout(&[
        "enumerate",
        "ptab",
        "--m",
        "2",
        "--n",
        "1",
        "--k",
        "2",
    ]))
    .unwrap();
    assert_eq!(pf.as_array().unwrap().len(), tab.as_array().unwrap().len());
    let hat: Value = serde_json::from_str(&stdout(&[
        "enumerate",
        "chains",
        "--kind",
        "hat",
        "--m",
        "2",
        "--n",
        "1",
        "--k",
        "1",
    ]))
    .unwrap();
    assert!(hat
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c[0]["start_x"].as_i64().unwrap() < 0));
}
