use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mukai"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn zeros() -> Vec<Value> {
    vec![json!(0); 22]
}

/// `exp(iω)` with `ω = e₁ + f₁`.
fn exp_i_omega() -> Value {
    let mut c = zeros();
    c[0] = json!({"re": 0, "im": 1});
    c[1] = json!({"re": 0, "im": 1});
    json!({"r": 1, "c": c, "s": -1})
}

fn sigma() -> Vec<Value> {
    let mut s = zeros();
    s[0] = json!(1);
    s[1] = json!(1);
    s[2] = json!({"re": 0, "im": 1});
    s[3] = json!({"re": 0, "im": 1});
    s
}

#[test]
fn classify_example() {
    let out = run(&["classify"], &exp_i_omega().to_string());
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["type"], "symplectic");
    assert_eq!(v["lambda"], "1");
    assert!(v["B"].as_array().unwrap().iter().all(|x| x == "0"));
    let mut omega = vec![json!("0"); 22];
    omega[0] = json!("1");
    omega[1] = json!("1");
    assert_eq!(v["omega"], Value::Array(omega));
}

#[test]
fn eta_verify_example() {
    let mut b = vec![json!("0"); 22];
    b[0] = json!("1/2");
    let out = run(&["eta-verify"], &json!({"sigma": sigma(), "B": b}).to_string());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out),
        json!({"eta_bijective": true, "isometry": true, "hodge": true, "index": 2, "r": 2})
    );
}

#[test]
fn twisted_from_tx_and_sigma_agree() {
    let mut b = vec![json!("0"); 22];
    b[0] = json!("1/2");
    let from_sigma = stdout_json(&run(&["twisted"], &json!({"sigma": sigma(), "B": b}).to_string()));
    assert_eq!(from_sigma["r"], 2);
    let from_tx = stdout_json(&run(&["twisted"], &json!({"tx": from_sigma["tx"], "B": b}).to_string()));
    assert_eq!(from_tx["twisted"], from_sigma["twisted"]);
    assert_eq!(from_tx["index"], 2);
}

#[test]
fn pic_and_transcendental_ranks() {
    let p = stdout_json(&run(&["pic"], &exp_i_omega().to_string()));
    let t = stdout_json(&run(&["transc"], &exp_i_omega().to_string()));
    assert_eq!(p["rank"], 22);
    assert_eq!(t["rank"], 2);
    assert_eq!(p["saturated"], true);
}

#[test]
fn generalized_k3_pair_and_reduction() {
    let mut c = zeros();
    c[4] = json!({"re": 0, "im": 1});
    c[5] = json!({"re": 0, "im": 1});
    let pair = json!({"phi": {"r": 0, "c": sigma(), "s": 0}, "phi_prime": {"r": 1, "c": c, "s": -1}});
    let check = stdout_json(&run(&["gk3-check"], &pair.to_string()));
    assert_eq!(check["is_gk3"], true);
    let red = run(&["reduce"], &pair.to_string());
    assert_eq!(red.status.code(), Some(0));
    let red = stdout_json(&red);
    assert!(red["B_prime"].as_array().unwrap().iter().all(|x| x == "0"));

    let not_pair = json!({"phi": exp_i_omega(), "phi_prime": exp_i_omega()});
    assert_eq!(stdout_json(&run(&["gk3-check"], &not_pair.to_string()))["is_gk3"], false);
    let out = run(&["reduce"], &not_pair.to_string());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["kind"], "HkError");
}

#[test]
fn omega_and_lagrangian() {
    let x = json!({"r": {"re": 0, "im": 1}, "c": zeros(), "s": 0});
    let y = json!({"r": 0, "c": zeros(), "s": 1});
    let v = stdout_json(&run(&["omega"], &json!({"x": x, "y": y}).to_string()));
    assert_eq!(v["Omega"], "-1");
    let t = stdout_json(&run(&["omega"], &json!({"phi": exp_i_omega()}).to_string()));
    assert_eq!(t, json!({"tangent_dim": 22, "omega_rank": 44}));

    let mut w = zeros();
    w[0] = json!(1);
    w[1] = json!(1);
    let alphas: Vec<Vec<i64>> = (0..22).map(|k| (0..22).map(|j| i64::from(j == k)).collect()).collect();
    let l = stdout_json(&run(&["lagrangian"], &json!({"omega": w, "alphas": alphas}).to_string()));
    assert_eq!(l["holds"], true);
}

#[test]
fn malformed_json_exits_2_with_position() {
    let out = run(&["classify"], "{\"r\": 1,\n  \"c\": [1, 2,");
    assert_eq!(out.status.code(), Some(2));
    let e = stderr_json(&out);
    assert_eq!(e["error"], "syntax");
    assert_eq!(e["line"], 2);
}

#[test]
fn schema_error_exits_2_with_path() {
    let mut c = zeros();
    c[7] = json!("1/0");
    let out = run(&["classify"], &json!({"r": 1, "c": c, "s": 0}).to_string());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["path"], "$.c[7]");
}

#[test]
fn domain_error_exits_1() {
    let out = run(&["classify"], &json!({"r": 1, "c": zeros(), "s": 0}).to_string());
    assert_eq!(out.status.code(), Some(1));
    let e = stderr_json(&out);
    assert_eq!(e["error"], "domain");
    assert_eq!(e["kind"], "PositivityViolation");
}

#[test]
fn generation_is_deterministic_and_valid() {
    for kind in ["symplectic", "complex"] {
        let a = run(&["gen", "--kind", kind, "--seed", "17"], "");
        let b = run(&["gen", "--kind", kind, "--seed", "17"], "");
        assert_eq!(a.stdout, b.stdout);
        let c = run(&["gen", "--kind", kind, "--seed", "18"], "");
        assert_ne!(a.stdout, c.stdout);
        let nf = stdout_json(&run(&["classify"], std::str::from_utf8(&a.stdout).unwrap()));
        assert_eq!(nf["type"], kind);
    }
}

#[test]
fn input_file_output_file_and_text_format() {
    let dir = std::env::temp_dir().join(format!("mukai-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("phi.json");
    let output = dir.join("out.txt");
    std::fs::write(&input, exp_i_omega().to_string()).unwrap();
    let out = run(
        &["classify", input.to_str().unwrap(), "--format", "text", "--out", output.to_str().unwrap()],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&output).unwrap();
    assert!(text.starts_with("symplectic"));
    std::fs::remove_dir_all(&dir).unwrap();

    let missing = run(&["classify", "/nonexistent/input.json"], "");
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn selftest_passes_with_small_box() {
    let out = run(&["selftest", "--box", "1"], "");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(stdout_json(&out)["passed"], true);
    let bad = run(&["selftest", "--box", "4"], "");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["gen", "--kind", "other"], "").status.code(), Some(2));
}
