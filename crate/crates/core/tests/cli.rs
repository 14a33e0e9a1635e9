use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toeplitz-spectra")).args(args).output().expect("binary runs")
}

const LAPLACIAN: &str = r#"{"cosine":[2,-2]}"#;
const AR1: &str = r#"{"cosine":[1.25,-1]}"#;

#[test]
fn eigen_lists_every_eigenvalue() {
    let out = run(&["eigen", "--symbol", LAPLACIAN, "--N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,j,lambda,k,theta,grid_value,residual"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    for (j, r) in rows.iter().enumerate() {
        let lambda: f64 = r[2].parse().unwrap();
        let want = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / 10.0).cos();
        assert!((lambda - want).abs() < 1e-12);
        assert_eq!(r[3], (j + 1).to_string());
    }
}

#[test]
fn invert_entry() {
    let out = run(&["invert", "--symbol", AR1, "--N", "1", "--entry", "0,0", "--check-oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let value: f64 = text.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!((value - 0.952381).abs() < 1e-6);
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 4] = [
        &["factor", "--symbol", r#"{"coeffs":[[0.3,0.1],[1.5,0],[0.3,-0.1]],"offset":-1}"#],
        &["invert", "--symbol", AR1, "--N", "12", "--full"],
        &["decay", "--symbol", AR1, "--N", "40"],
        &["predictor", "--symbol", AR1, "--M", "6"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["decay", "--symbol", AR1]).status.code(), Some(1));
    assert_eq!(run(&["eigen", "--N", "4"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    let out = run(&["factor", "--symbol", "{\"cosine\": [1,\n 2,"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn failed_check_exits_two_with_diagnostics() {
    let out = run(&["invert", "--symbol", AR1, "--N", "30", "--check-oracle", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["pass"], serde_json::json!(false));
    assert!(diag["oracle_error"].as_f64().unwrap() > 0.0);
}

#[test]
fn writes_out_and_summary_files() {
    let dir = std::env::temp_dir().join(format!("toeplitz-spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("decay.csv");
    let json = dir.join("decay.json");
    let sym = dir.join("symbol.json");
    std::fs::write(&sym, r#"{"cosine": [1.25, -1]}"#).unwrap();
    let out = run(&[
        "decay",
        "--symbol",
        &format!("@{}", sym.display()),
        "--N",
        "60",
        "--out",
        csv.to_str().unwrap(),
        "--json-summary",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 62);
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(summary["pass"], serde_json::json!(true));
    assert!((summary["slope"].as_f64().unwrap() - 0.5f64.ln()).abs() < 0.05);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn regular_decay_and_lemma1_summary() {
    let dir = std::env::temp_dir().join(format!("toeplitz-spectra-cli-lemma-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("p.json");
    let out = run(&["predictor", "--symbol", AR1, "--M", "8", "--lemma1", "8,16,32", "--json-summary", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(summary["lemma1"]["rows"].as_array().unwrap().len(), 3);
    let out = run(&["decay", "--symbol", r#"{"cosine":[3,1,0.5]}"#, "--N", "40", "--rho", "1.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_dir_all(&dir).unwrap();
}
