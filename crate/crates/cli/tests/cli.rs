use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn torus(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_torus"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], input: &str) -> Value {
    let out = torus(args, input);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn snf_of_diag_two_three() {
    let v = ok(&["snf"], "[[2, 0], [0, 3]]");
    assert_eq!(v["d"], json!([["1", "0"], ["0", "6"]]));
    assert_eq!(v["invariant_factors"], json!(["1", "6"]));
}

#[test]
fn fixed_points_of_times_three() {
    let v = ok(&["endo", "fixed-points"], r#"{"matrix": [[3]]}"#);
    assert_eq!(v["points"], json!([["0/1"], ["1/2"]]));
}

#[test]
fn degree_of_rotation_scaling() {
    assert_eq!(ok(&["endo", "degree"], "[[0, -1], [2, 0]]")["degree"], "2");
}

#[test]
fn non_expanding_is_a_domain_error() {
    let out = torus(&["endo", "check"], "[[1, 1], [0, 2]]");
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "NOT_EXPANDING");
}

#[test]
fn malformed_input_is_a_usage_error() {
    for input in ["not json", r#"{"matrix": [[1]], "extra": 0}"#, r#"{"matrix": [["x"]]}"#] {
        let out = torus(&["snf"], input);
        assert!(matches!(out.status.code(), Some(1 | 2)), "{input}");
        if out.status.code() == Some(2) {
            assert!(String::from_utf8_lossy(&out.stderr).contains("expected input"));
        }
    }
    assert_eq!(torus(&["snf"], "not json").status.code(), Some(2));
    assert_eq!(torus(&["nosuch"], "").status.code(), Some(2));
}

#[test]
fn orbit_of_axis_has_period_two() {
    let v = ok(
        &["endo", "orbit"],
        r#"{"matrix": [[0, -1], [2, 0]], "subgroup": {"n": 2, "dual": [[0, 1]]}}"#,
    );
    assert_eq!(v["period"]["period"], 2);
    assert_eq!(v["period"]["dim"], 1);
}

#[test]
fn window_distance_example() {
    let v = ok(
        &["endo", "distance"],
        r#"{"a": {"n": 2, "dual": [[0, 1]]}, "b": {"n": 2, "dual": [[0, 1], [5, 0]]}, "max_radius": 10}"#,
    );
    assert_eq!(v["distance"], "1/16");
}

#[test]
fn spectral_data_of_symmetric_matrix() {
    let v = ok(&["spectral", "data"], "[[3, 1], [1, 3]]");
    assert_eq!(v["sigma"], 4.0);
    assert_eq!(v["sigma1"], 2.0);
    let c = ok(&["spectral", "dominant-complement"], "[[3, 1], [1, 3]]");
    assert_eq!(c["complement"]["exact"], true);
    assert_eq!(c["complement"]["g"], json!(["-2", "1"]));
}

#[test]
fn build_reproduces_axes_union() {
    let v = ok(
        &["lab", "build"],
        r#"{"matrix": [[0, -1], [2, 0]], "seeds": [{"subgroup": {"n": 2, "dual": [[0, 1]]}, "translate": ["0", "0"]}]}"#,
    );
    assert_eq!(v["union"]["cosets"].as_array().unwrap().len(), 2);
    assert_eq!(v["verdict"]["equal"], true);
}

#[test]
fn file_io_and_compact_output() {
    let dir = std::env::temp_dir().join(format!("torus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (inp, outp) = (dir.join("in.json"), dir.join("out.json"));
    std::fs::write(&inp, "[[2, 0], [0, 3]]").unwrap();
    let out = torus(
        &["--compact", "--in", inp.to_str().unwrap(), "--out", outp.to_str().unwrap(), "endo", "degree"],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&outp).unwrap(), "{\"degree\":\"6\"}\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
