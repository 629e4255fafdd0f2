use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn shkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Writes the builtins to a temp dir as ordinary algebra files.
fn files() -> TempDir {
    let dir = TempDir::new().unwrap();
    for name in ["fig1", "fig2", "fig3", "ex15"] {
        let o = shkit(&["show", name]);
        assert!(o.status.success());
        fs::write(dir.path().join(format!("{name}.json")), &o.stdout).unwrap();
    }
    dir
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn check_exit_codes() {
    let d = files();
    let fig1 = path(&d, "fig1.json");
    let st = shkit(&["check", &fig1, "St"]);
    assert_eq!(st.status.code(), Some(1));
    assert_eq!(stdout(&st), "fail at x=b (lhs = a, rhs = 1)\n");
    assert_eq!(shkit(&["check", &fig1, "DM"]).status.code(), Some(0));
    assert_eq!(shkit(&["check", &fig1, "x = x"]).status.code(), Some(0));
    assert_eq!(shkit(&["check", &fig1, "x ->"]).status.code(), Some(2));
    assert_eq!(
        shkit(&["check", "no/such/file.json", "St"]).status.code(),
        Some(2)
    );
    assert_eq!(shkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_json() {
    let o = shkit(&["check", "fig1", "St", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["assignment"]["x"], "b");
    assert_eq!(v["lhs"], "a");
    assert_eq!(v["rhs"], "1");
}

#[test]
fn level_and_eval() {
    let d = files();
    let o = shkit(&["level", &path(&d, "fig3.json"), "--max", "4"]);
    assert_eq!(stdout(&o), "2\n");
    let o = shkit(&["level", &path(&d, "ex15.json"), "--max", "2"]);
    assert_eq!(stdout(&o), "exceeds 2\n");
    let o = shkit(&["level", &path(&d, "fig3.json"), "--alt", "--json"]);
    assert_eq!(stdout(&o), "{\"level\":{\"exactly\":2}}\n");
    let o = shkit(&["eval", &path(&d, "fig1.json"), "x -> 0", "x=b"]);
    assert_eq!(stdout(&o), "d\n");
    let o = shkit(&["eval", "fig3", "x /\\ y'*", "x=a", "y=a", "--json"]);
    assert_eq!(stdout(&o), "{\"value\":\"d\"}\n");
    assert_eq!(
        shkit(&["eval", "fig1", "x /\\ y", "x=b"]).status.code(),
        Some(2)
    );
    assert_eq!(shkit(&["eval", "fig1", "x", "x=zz"]).status.code(), Some(2));
}

#[test]
fn invalid_algebra_file_is_an_input_error() {
    let d = TempDir::new().unwrap();
    let p = d.path().join("bad.json");
    fs::write(
        &p,
        r#"{"labels":["0","1"],"covers":[["0","1"]],"arrow":[["1","1"],["0","1"]],"neg":["0","0"],"bottom":"0","top":"1"}"#,
    )
    .unwrap();
    let o = shkit(&["classify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DQDa0"));
}

#[test]
fn enumerate_round_trips_through_classify() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("corpus.ndjson");
    let o = shkit(&[
        "enumerate",
        "--max-size",
        "5",
        "--satisfy",
        "JDM",
        "--falsify",
        "St",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let n = text.lines().count();
    assert!(n > 0);
    assert_eq!(
        stdout(&o),
        format!("wrote {n} algebras to {}\n", out.display())
    );
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["classification"]["memberships"]["Dms"], true);
        assert_eq!(v["classification"]["memberships"]["St"], false);
    }
    let o = shkit(&["classify", out.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), n);
    let o = shkit(&["check", out.to_str().unwrap(), "St"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_reports_the_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_shkit"))
        .args(["enumerate", "--max-size", "5"])
        .env("SHKIT_MAX_NODES", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1000"));
    let o = shkit(&["enumerate", "--satisfy", "St", "--falsify", "St"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_paper_table_and_json() {
    let o = shkit(&["verify-paper", "--max-size", "6"]);
    let text = stdout(&o);
    assert!(text.contains("fig1-st"));
    // fig1 has seven elements, so its sharpness search finds nothing here.
    assert_eq!(o.status.code(), Some(1));
    assert!(text.contains("mismatch"));
    let o = shkit(&["verify-paper", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let claims = v["claims"].as_array().unwrap();
    let st = claims.iter().find(|c| c["id"] == "fig1-st").unwrap();
    assert_eq!(st["actual"], "fail at x=b (lhs = a, rhs = 1)");
    assert_eq!(st["status"], "match");
    let stone = claims
        .iter()
        .find(|c| c["id"] == "dm-level1-stone")
        .unwrap();
    assert_eq!(stone["actual"], "no countermodel of size <= 8");
    assert_eq!(stone["bound"], 8);
}

#[test]
fn show_and_catalog() {
    let o = shkit(&["show", "fig9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = shkit(&["catalog", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|e| e["name"] == "Lee"));
    assert!(Path::new(env!("CARGO_BIN_EXE_shkit")).exists());
}
