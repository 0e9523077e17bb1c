use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypdomain")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_code(o: &Output) -> String {
    let doc: Value = serde_json::from_slice(&o.stderr).unwrap();
    doc["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn modular_triangle_domain() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("t.svg");
    let o = run(&["domain", "--group", "psl2z", "--center", "2i", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["schema"], "hypdomain.polyhedron/1");
    let mut xs: Vec<f64> = doc["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["type"] == "finite")
        .map(|v| {
            assert!((v["r"].as_f64().unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-9);
            v["z"][0].as_f64().unwrap()
        })
        .collect();
    xs.sort_by(f64::total_cmp);
    assert!((xs[0] + 0.5).abs() < 1e-9 && (xs[1] - 0.5).abs() < 1e-9);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<path"));
    let again = run(&["domain", "--group", "psl2z", "--center", "2i"]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn bianchi_two_walls_and_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b2.json");
    let o = run(&["domain", "--bianchi", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let mut walls: Vec<String> = doc["faces"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["vertical"] == true)
        .map(|f| format!("{}|{}", f["surface"]["normal"], f["surface"]["offset"]))
        .collect();
    walls.sort();
    assert_eq!(
        walls,
        ["\"0+1*sqrt(-2)\"|\"-1\"", "\"0+1*sqrt(-2)\"|\"1\"", "\"1\"|\"-1/2\"", "\"1\"|\"1/2\""]
    );
    let c = run(&["check", "--poly", out.to_str().unwrap(), "--df", "--reflection", "--format", "json"]);
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
    let rep: Value = serde_json::from_str(&stdout(&c)).unwrap();
    assert_eq!(rep["df"]["is_df"], true);
    assert_eq!(rep["reflection"]["passed"], true);
}

#[test]
fn df_verdicts_set_the_exit_code() {
    let ok = run(&["check", "--bianchi", "2", "--df"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("DF=true"));
    let bad = run(&["check", "--bianchi", "10", "--df"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("DF=false"));
    let cox = run(&["check", "--group", "psl2z", "--coxeter", "--format", "json"]);
    assert_eq!(cox.status.code(), Some(0));
    let rep: Value = serde_json::from_str(&stdout(&cox)).unwrap();
    for c in rep["coxeter"]["relation_checks"].as_array().unwrap() {
        assert_eq!(c["pass"], true);
    }
}

#[test]
fn non_cofinite_group_exhausts_the_bound() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.json");
    std::fs::write(
        &gens,
        r#"{"schema":"hypdomain.generators/1","model":"H2","generators":[["1","1","0","1"]],"cusp_generators":[["1","1","0","1"]]}"#,
    )
    .unwrap();
    let source = format!("file:{}", gens.display());
    let o = run(&["domain", "--group", &source, "--bound-max", "40"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_code(&o), "bound_exhausted");
}

#[test]
fn bad_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.json");
    std::fs::write(&gens, r#"{"schema":"hypdomain.generators/1","model":"H2","generators":[],"extra":1}"#).unwrap();
    let source = format!("file:{}", gens.display());
    let o = run(&["domain", "--group", &source]);
    assert_eq!((o.status.code(), error_code(&o).as_str()), (Some(2), "parse"));
    let o = run(&["domain", "--group", "psl2z", "--tol=-1"]);
    assert_eq!((o.status.code(), error_code(&o).as_str()), (Some(2), "config"));
    let o = run(&["domain", "--colour"]);
    assert_eq!((o.status.code(), error_code(&o).as_str()), (Some(2), "usage"));
    let o = run(&["domain", "--group", "file:/nonexistent/gens.json"]);
    assert_eq!((o.status.code(), error_code(&o).as_str()), (Some(4), "io"));
    let o = Command::new(env!("CARGO_BIN_EXE_hypdomain"))
        .args(["survey", "--d", "2"])
        .env("HYPDOMAIN_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!((o.status.code(), error_code(&o).as_str()), (Some(2), "config"));
}

#[test]
fn survey_rows() {
    let o = Command::new(env!("CARGO_BIN_EXE_hypdomain"))
        .args(["survey", "--d", "12", "--d", "14", "--d", "17"])
        .env("HYPDOMAIN_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "d,df,faces,bound,reflection,walls,error");
    assert!(rows[1].starts_with("12,") && rows[1].ends_with(",not_squarefree"));
    assert!(rows[2].starts_with("14,false,"));
    assert!(rows[3].starts_with("17,false,"));
    let j = run(&["survey", "--survey", "2,5", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(doc["rows"][0]["df"], true);
    assert_eq!(doc["rows"][1]["reflection"], "pass");
}
