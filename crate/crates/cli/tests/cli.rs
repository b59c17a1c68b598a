use std::process::{Command, Output};

use elliptic_sixj::C64;
use serde_json::Value;

fn ellsix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellsix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn tiny_tolerance_fails_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = ellsix(&[
        "verify",
        "--suite",
        "ft_jackson",
        "--tolerance",
        "ft_jackson=1e-30",
        "--trials",
        "5",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
    assert_eq!(report["suites"][0]["tolerance"], 1e-30);
}

#[test]
fn empty_selection_is_an_empty_pass() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "suites = []\n").unwrap();
    let out = ellsix(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["suites"].as_array().unwrap().len(), 0);
    assert_eq!(report["pass"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ellsix(&["verify", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(
        ellsix(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ellsix(&["verify", "--tolerance", "ft_jackson"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ellsix(&["verify", "--tolerance", "ft_jackson=-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ellsix(&["eval", "theta", "--inline", "{"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ellsix(&["eval", "theta", "--inline", "{}"]).status.code(),
        Some(2)
    );
    assert_eq!(ellsix(&["eval", "theta"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "seeed = 3\n").unwrap();
    assert_eq!(
        ellsix(&["verify", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exhausted_sampling_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(
        &cfg,
        "suites = [\"phi_symmetry\"]\ntrials = 2\n[sampling]\nq_min = 1.0\nq_max = 1.0\nq_arg_max = 1e-13\n",
    )
    .unwrap();
    let out = ellsix(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let report = stdout_json(&out);
    let err = report["suites"][0]["error"].as_str().unwrap();
    assert!(err.contains("θ(q^1)"), "{err}");
}

#[test]
fn config_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(
        &cfg,
        "seed = 5\ntrials = 3\nsuites = [\"bailey\", \"ft_jackson\"]\n[tolerance]\nbailey = 1e-6\n",
    )
    .unwrap();
    let out = ellsix(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "9",
        "--suite",
        "bailey",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["seed"], 9);
    let suites = report["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["trials"], 3);
    assert_eq!(suites[0]["tolerance"], 1e-6);
}

#[test]
fn different_seeds_give_different_residuals() {
    let run = |seed: &str| {
        let out = ellsix(&[
            "verify", "--suite", "bailey", "--trials", "4", "--seed", seed,
        ]);
        stdout_json(&out)["suites"][0]["max_residual"].clone()
    };
    assert_eq!(run("1"), run("1"));
    assert_ne!(run("1"), run("2"));
}

#[test]
fn eval_theta_at_one() {
    let out = ellsix(&["eval", "theta", "--inline", r#"{"x":1,"p":0.1}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"re":0,"im":0}"#
    );
}

#[test]
fn eval_parity_violating_6j() {
    let args = r#"{"s":[1],"t":[],"u":[],"v":[],"w":[[1.2,0.1]],"z":[[0.7,-0.2]],"lambda":0.3,"p":0.1,"q":[0.5,0.2]}"#;
    let out = ellsix(&["eval", "r6j", "--inline", args]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"re":0,"im":0,"reason":"parity"}"#
    );
}

#[test]
fn eval_6j_reports_method() {
    let args = r#"{"s":[1],"t":[],"u":[],"v":[1],"w":[[1.2,0.1]],"z":[[0.7,-0.2]],"lambda":0.3,"p":0.1,"q":[0.5,0.2],"method":"rat2"}"#;
    let out = ellsix(&["eval", "r6j", "--inline", args]);
    let v = stdout_json(&out);
    assert_eq!(v["method"], "rat2");
    let oracle = args.replace("rat2", "lattice_oracle");
    let w = stdout_json(&ellsix(&["eval", "r6j", "--inline", &oracle]));
    let (a, b) = (v["re"].as_f64().unwrap(), w["re"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
}

#[test]
fn eval_domain_wall_matches_weight_function() {
    let common =
        r#""w":[[1.1,0.2],[0.8,-0.3]],"z":[[0.6,0.5],[1.3,0.1]],"p":[0.13,0.21],"q":[0.55,0.3]"#;
    let (q, lam) = (C64::new(0.55, 0.3), C64::new(0.37, 0.21));
    let value = |v: Value| C64::new(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap());
    let run =
        |expr: &str, args: String| value(stdout_json(&ellsix(&["eval", expr, "--inline", &args])));
    let a = (-lam * q.ln()).exp();
    let dw = run(
        "dwpf",
        format!(r#"{{{common},"lambda":[{},{}]}}"#, lam.re, lam.im),
    );
    let phi = run("phi", format!(r#"{{{common},"a":[{},{}]}}"#, a.re, a.im));
    let th_q = run("theta", r#"{"x":[0.55,0.3],"p":[0.13,0.21]}"#.to_string());
    let start = a / (q * q);
    let poch = run(
        "pochhammer",
        format!(
            r#"{{"x":[{},{}],"k":2,"p":[0.13,0.21],"q":[0.55,0.3]}}"#,
            start.re, start.im
        ),
    );
    let expect = th_q * th_q / poch * phi;
    assert!((dw - expect).norm() < 1e-10 * dw.norm(), "{dw} vs {expect}");
}
