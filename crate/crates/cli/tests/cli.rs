//! End-to-end tests of the `ncg` binary: exit codes, output shapes, and the
//! environment-variable plumbing.

use std::process::{Command, Output, Stdio};

fn ncg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ncg_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_ncg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "expected JSON, got error {e}\nstdout: {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn exit(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn table_matches_and_exits_zero() {
    let out = ncg(&["--window", "16", "table"]);
    assert_eq!(exit(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["matches"], serde_json::json!(true));
    assert_eq!(v["table"], serde_json::json!([[1, 1, 1], [0, 1, 0], [0, 0, 1]]));
    assert_eq!(v["diffs"].as_array().unwrap().len(), 0);
}

#[test]
fn table_markdown_and_csv_render() {
    let out = ncg(&["--window", "16", "--format", "md", "table"]);
    assert_eq!(exit(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("| w0 | 1 | 1 | 1 |"), "md output: {text}");
    assert!(text.contains("| w1 | 0 | 1 | 0 |"));

    let out = ncg(&["--window", "16", "--format", "csv", "table"]);
    assert_eq!(exit(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.starts_with("module,1,P1,P2\n"), "csv output: {text}");
    assert!(text.contains("w2,0,0,1"));
}

#[test]
fn window_env_variable_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_ncg"))
        .env("NCG_DEFAULT_WINDOW", "16")
        .args(["table"])
        .output()
        .expect("binary runs");
    assert_eq!(exit(&out), 0);
    assert_eq!(json_of(&out)["config"]["window"], serde_json::json!(16));
}

#[test]
fn verify_reports_valid_and_degenerate() {
    let out = ncg(&["--window", "12", "verify", "w1"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(json_of(&out)["verdict"], serde_json::json!("valid"));

    let out = ncg(&["--window", "12", "verify", "w1B", "--restrict", "U"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(json_of(&out)["verdict"], serde_json::json!("degenerate"));
}

#[test]
fn verify_unknown_module_is_input_error() {
    let out = ncg(&["verify", "nosuch"]);
    assert_eq!(exit(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown module"));
}

#[test]
fn index_values() {
    for (module, unitary, want) in [("z1", "V", 1), ("z1", "V*", -1), ("w1B", "V", 1), ("w1B", "U", 0), ("w1B", "1", 0)] {
        let out = ncg(&["--window", "16", "index", module, unitary]);
        assert_eq!(exit(&out), 0, "index {module} {unitary}");
        let v = json_of(&out);
        assert_eq!(
            v["pairing"]["value"],
            serde_json::json!(want),
            "index {module} {unitary}"
        );
        assert_eq!(v["pairing"]["stable"], serde_json::json!(true));
    }
}

#[test]
fn index_bad_unitary_is_input_error() {
    let out = ncg(&["index", "z1", "bogus"]);
    assert_eq!(exit(&out), 3);
}

#[test]
fn pair0_kronecker_values() {
    for (psi, proj, want) in [("0", 0, "1"), ("0", 1, "0"), ("1", 1, "1"), ("2", 2, "1"), ("k:3", 1, "0")] {
        let out = ncg(&["cyclic", "pair0", "--psi", psi, "--proj", &proj.to_string()]);
        assert_eq!(exit(&out), 0, "pair0 {psi} {proj}");
        assert_eq!(json_of(&out)["value"], serde_json::json!(want));
    }
}

#[test]
fn pair0_rejects_bad_specs() {
    assert_eq!(exit(&ncg(&["cyclic", "pair0", "--psi", "k:0", "--proj", "0"])), 3);
    assert_eq!(exit(&ncg(&["cyclic", "pair0", "--psi", "x", "--proj", "0"])), 3);
    assert_eq!(exit(&ncg(&["cyclic", "pair0", "--psi", "1", "--proj", "5"])), 3);
}

#[test]
fn spsik_primitive_has_zero_residual() {
    let out = ncg(&["--word-bound", "6", "cyclic", "spsik", "--k", "2", "--free", "1/2"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(json_of(&out)["residual_zero"], serde_json::json!(true));
}

#[test]
fn feasible_distinguishes_targets() {
    let out = ncg(&["--word-bound", "8", "cyclic", "feasible", "--target", "spsi0"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(json_of(&out)["feasible"], serde_json::json!(false));

    let out = ncg(&["--word-bound", "6", "cyclic", "feasible", "--target", "zero"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(json_of(&out)["feasible"], serde_json::json!(true));
}

#[test]
fn solve1_roundtrip_from_stdin() {
    // c supported at 1 (and -1 by antisymmetry of the recursion input d = 0)
    let input = r#"{"c": {"1": "1"}, "d": {}}"#;
    let out = ncg_stdin(&["--word-bound", "8", "cyclic", "solve1"], input);
    assert_eq!(exit(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["residual_zero"], serde_json::json!(true));
    // b_{j+2} - b_j = c_{j+1} with b_0 = 0, b_1 = c_0 puts 1 at every even j >= 2
    assert_eq!(v["psi"]["b"]["2"], serde_json::json!("1"));
    assert_eq!(v["psi"]["b"]["4"], serde_json::json!("1"));
}

#[test]
fn solve1_rejects_malformed_input() {
    let out = ncg_stdin(&["cyclic", "solve1"], "not json");
    assert_eq!(exit(&out), 3);
    // d must be antisymmetric; a one-sided entry is malformed input
    let out = ncg_stdin(&["cyclic", "solve1"], r#"{"c": {"1": "1"}, "d": {"2": "1"}}"#);
    assert_eq!(exit(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("antisymmetric"));
}

#[test]
fn conjugacy_partition_is_closed() {
    let out = ncg(&["conjugacy", "--max-length", "4"]);
    assert_eq!(exit(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["closed_under_generator_conjugation"], serde_json::json!(true));
    // identity is always alone in its class
    let classes = v["classes"].as_array().unwrap();
    assert!(classes
        .iter()
        .any(|cls| cls == &serde_json::json!([[0, 0]])));
}

#[test]
fn homotopy_report_passes() {
    let out = ncg(&["--window", "32", "homotopy", "--steps", "4"]);
    assert_eq!(
        exit(&out),
        0,
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json_of(&out);
    assert_eq!(v["pass"], serde_json::json!(true));
    assert_eq!(v["endpoint_axis_rank"], serde_json::json!(2));
}
