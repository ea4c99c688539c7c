use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn projgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projgen"))
        .args(args)
        .env_remove("PROJGEN_COSET_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_kinyon() {
    let o = projgen(&["validate", "--source", "kinyon"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all laws hold"));
}

#[test]
fn band_three_is_infinite() {
    let o = projgen(&["size", "--source", "band:3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("Infinite"), "{out}");
    assert!(out.contains("free of rank 1"), "{out}");
}

#[test]
fn verify_tl_four() {
    let o = projgen(&["verify", "tl", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("|PG| = 14"));
}

#[test]
fn kinyon_complex_counts() {
    let o = projgen(&["complex", "--source", "kinyon", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"], 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    assert_eq!(v["cells"].as_array().unwrap().len(), 1);
}

#[test]
fn motzkin_four_complex() {
    let o = projgen(&["complex", "--source", "motzkin:4"]);
    assert!(stdout(&o).starts_with("35 vertices"));
    assert!(stdout(&o).contains("11 components"));
}

#[test]
fn output_is_deterministic() {
    let a = projgen(&["pi1", "--source", "motzkin:4", "--format", "json"]);
    let b = projgen(&["pi1", "--source", "motzkin:4", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dot_export_writes_faces() {
    let dir = scratch_dir("dot_export");
    let out = dir.join("kinyon.dot");
    let o = projgen(&[
        "export",
        "--source",
        "kinyon",
        "--format",
        "dot",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("graph complex"));
    assert!(dot.contains("// face 0"));
    let faces: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("kinyon.faces.json")).unwrap()).unwrap();
    assert_eq!(faces.as_array().unwrap().len(), 1);
}

#[test]
fn file_and_adjacency_sources() {
    let dir = scratch_dir("sources");
    let alg = dir.join("band.json");
    let o = projgen(&["export", "--what", "algebra", "-s", "band:2", "-o", alg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = projgen(&["size", "-s", alg.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().next(), Some("4"));

    let graph = dir.join("path.json");
    fs::write(&graph, r#"{"vertices": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let src = format!("adjacency:{}", graph.display());
    let o = projgen(&["verify", "boset", "-s", &src]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn invalid_algebra_fails_validation() {
    let dir = scratch_dir("invalid");
    let bad = dir.join("bad.json");
    fs::write(&bad, r#"{"size": 2, "theta": [[1, 1], [0, 1]]}"#).unwrap();
    let o = projgen(&["validate", "-s", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("P1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(projgen(&["size", "--source", "nonsense"]).status.code(), Some(2));
    assert_eq!(projgen(&["size"]).status.code(), Some(2));
    assert_eq!(projgen(&["size", "-s", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(projgen(&["size", "-s", "kinyon", "--cap", "0"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let o = projgen(&["enumerate", "-s", "band:3", "--cap", "5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn presentations_text_and_json() {
    let o = projgen(&["presentations", "-s", "band:2"]);
    assert!(stdout(&o).contains("R3: x[p0] x[p1] x[p0] = x[p0]"));
    let o = projgen(&["presentations", "--family", "tl", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["letters"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "kinyon"][..],
        &["verify", "band"],
        &["verify", "motzkin", "--n", "3"],
        &["verify", "presentations", "-s", "tl:3", "--n", "3", "--samples", "200"],
        &["verify", "boset", "-s", "tl:3"],
        &["verify", "axioms", "-s", "brauer:3"],
    ] {
        let o = projgen(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}
