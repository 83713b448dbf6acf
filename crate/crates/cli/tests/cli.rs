//! End-to-end tests of the `quadhp` binary: exit codes, JSON shapes,
//! determinism and round-tripping of emitted documents.

use std::process::{Command, Output};

fn quadhp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadhp"))
        .args(args)
        .env_remove("QUADHP_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout_str(out).trim()).expect("stdout is one JSON document")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn check_op_certifies_a_preserver() {
    let out = quadhp(&["check-op", "--q2", "[-1,0,1]", "--q1", "[0,2]", "--q0", "[1]"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.starts_with(r#"{"verdict":"preserves""#), "got: {text}");
    let v = stdout_json(&out);
    assert_eq!(v["closed_form_verdict"], "preserves");
    assert_eq!(v["w_poly"], serde_json::json!(["-4"]));
    assert_eq!(
        v["closed_form"],
        serde_json::json!({"kind": "distinct", "a": "1", "b": "1", "r1": "-1", "r2": "1", "R": "1"})
    );
    assert_eq!(v["witness"], serde_json::Value::Null);
}

#[test]
fn check_op_attaches_a_witness_on_rejection() {
    let out = quadhp(&["check-op", "--q2", "[-1,0,1]", "--q1", "[0,2]", "--q0", "[2]"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "not_preserves");
    assert_eq!(v["closed_form_verdict"], "not_preserves");
    assert_eq!(v["failure_reason"], "w_positive_somewhere");
    assert!(v["witness"]["input"].is_array());
    assert!(v["witness"]["image"].is_array());
}

#[test]
fn check_op_rejects_low_degree_q2_with_exit_two() {
    let out = quadhp(&["check-op", "--q2", "[0,1]", "--q1", "[1]", "--q0", "[0]"]);
    assert_eq!(exit_code(&out), 2);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "hypotheses_violated");
    assert_eq!(v["failure_reason"], "degree_mismatch");
}

#[test]
fn falsify_reproduces_the_monomial_example() {
    let out = quadhp(&["falsify", "--q2", "[-1,0,1]", "--q1", "[0,-2]", "--q0", "[-1]"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout_str(&out).trim(),
        r#"{"input":["0","0","1"],"image":["-2","0","-3"]}"#
    );
}

#[test]
fn falsify_prints_null_for_a_preserver() {
    let out = quadhp(&["falsify", "--q2", "[-1,0,1]", "--q1", "[0,2]", "--q0", "[0]"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), "null");
}

#[test]
fn falsify_honors_the_env_budget_override() {
    let base = ["falsify", "--q2", "[-1,0,1]", "--q1", "[0,-2]", "--q0", "[-1]"];
    let narrow = Command::new(env!("CARGO_BIN_EXE_quadhp"))
        .args(base)
        .env("QUADHP_MAX_DEGREE", "1")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&narrow), 0);
    assert_eq!(stdout_str(&narrow).trim(), "null");

    let bad = Command::new(env!("CARGO_BIN_EXE_quadhp"))
        .args(base)
        .env("QUADHP_MAX_DEGREE", "abc")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&bad), 2);
    assert_eq!(stdout_json(&bad)["error"]["kind"], "invalid_input");

    // The flag wins over the environment.
    let flagged = Command::new(env!("CARGO_BIN_EXE_quadhp"))
        .args(base)
        .arg("--max-degree")
        .arg("2")
        .env("QUADHP_MAX_DEGREE", "1")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&flagged), 0);
    assert_eq!(stdout_json(&flagged)["input"], serde_json::json!(["0", "0", "1"]));
}

#[test]
fn apply_computes_images_exactly() {
    let out = quadhp(&[
        "apply", "--q2", "[-1,0,1]", "--q1", "[0,2]", "--q0", "[-1]", "--p", "[-1,0,1]",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), r#"["-1","0","5"]"#);
}

#[test]
fn emitted_polynomials_parse_back_as_inputs() {
    // basis output -> apply input under the identity operator.
    let basis = quadhp(&["basis", "--family", "jacobi", "--alpha", "1", "--beta", "1", "--n", "2"]);
    assert_eq!(exit_code(&basis), 0);
    let poly = stdout_str(&basis).trim().to_string();
    assert_eq!(poly, r#"["-3/4","0","15/4"]"#);

    let echoed = quadhp(&["apply", "--q2", "[]", "--q1", "[0]", "--q0", "[1]", "--p", &poly]);
    assert_eq!(exit_code(&echoed), 0);
    assert_eq!(stdout_str(&echoed).trim(), poly);

    // falsify witness entries parse back too.
    let falsified = quadhp(&["falsify", "--q2", "[-1,0,1]", "--q1", "[0,-2]", "--q0", "[-1]"]);
    let witness = stdout_json(&falsified);
    let input = serde_json::to_string(&witness["input"]).unwrap();
    let image = quadhp(&["apply", "--q2", "[-1,0,1]", "--q1", "[0,-2]", "--q0", "[-1]", "--p", &input]);
    assert_eq!(stdout_json(&image), witness["image"]);
}

#[test]
fn probe_output_is_deterministic_and_seed_sensitive() {
    let args = [
        "probe", "--q2", "[-1,0,1]", "--q1", "[0,2]", "--q0", "[1]", "--samples", "2000",
    ];
    let first = quadhp(&args);
    let second = quadhp(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "same argv must give identical bytes");

    let v = stdout_json(&first);
    assert!(v["min_abs"].as_f64().unwrap() > 0.0);
    assert_eq!(v["samples"], 2000);
    assert_eq!(v["seed"], 0);

    let mut reseeded_args = args.to_vec();
    reseeded_args.extend(["--seed", "7"]);
    let reseeded = quadhp(&reseeded_args);
    assert_ne!(first.stdout, reseeded.stdout, "the seed must matter");
}

#[test]
fn check_op_is_deterministic() {
    let args = ["check-op", "--q2", "[-1,0,1]", "--q1", "[0,-2]", "--q0", "[2]"];
    let first = quadhp(&args);
    let second = quadhp(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(stdout_json(&first)["verdict"], "not_preserves");
}

#[test]
fn construct_violation_emits_an_upper_half_plane_witness() {
    let out = quadhp(&[
        "construct-violation", "--a", "1", "--b", "1", "--r1", "-1", "--r2", "1", "--r", "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["x"][1].as_f64().unwrap() > 0.0);
    assert!(v["w"][1].as_f64().unwrap() > 0.0);
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn construct_violation_rejects_the_preserving_range() {
    let out = quadhp(&[
        "construct-violation", "--a", "1", "--b", "1", "--r1", "-1", "--r2", "1", "--r", "0.5",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(stdout_json(&out)["error"]["kind"], "invalid_range");

    let repeated = quadhp(&[
        "construct-violation", "--repeated", "--a", "2", "--r", "0", "--R", "0.5",
    ]);
    assert_eq!(exit_code(&repeated), 2);
    assert_eq!(stdout_json(&repeated)["error"]["kind"], "invalid_range");
}

#[test]
fn construct_violation_repeated_mode_works() {
    let out = quadhp(&["construct-violation", "--repeated", "--a", "2", "--r", "0", "--R", "2"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["x"][1].as_f64().unwrap() > 0.0);
    assert!(v["w"][1].as_f64().unwrap() > 0.0);
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn construct_violation_flags_internal_failures_with_exit_one() {
    // Coinciding shifts cannot be normalized; this is the degenerate-input
    // path reserved for exit code 1.
    let out = quadhp(&[
        "construct-violation", "--a", "1", "--b", "1", "--r1", "1", "--r2", "1", "--r", "2",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stdout_json(&out)["error"]["kind"], "internal");
}

#[test]
fn check_ms_matches_the_legendre_example() {
    let out = quadhp(&["check-ms", "--family", "legendre", "--A", "1", "--B", "2"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.starts_with(r#"{"verdict":"not_preserves""#), "got: {text}");
    let v = stdout_json(&out);
    assert_eq!(
        v["sequence_head"],
        serde_json::json!(["2", "4", "8", "14", "22", "32", "44", "58"])
    );
    assert_eq!(v["failure_reason"], "w_positive_somewhere");
}

#[test]
fn check_ms_handles_affine_standard_sequences() {
    let out = quadhp(&[
        "check-ms", "--family", "standard", "--A", "0", "--B", "1", "--C", "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "preserves");
    assert!(v["w_poly"].is_null());
    assert!(v["chain"].is_null());
    assert_eq!(v["sequence_head"][3], "4");
}

#[test]
fn check_ms_rejects_invalid_specs_with_exit_two() {
    let zero_a = quadhp(&["check-ms", "--family", "legendre", "--A", "0", "--B", "1"]);
    assert_eq!(exit_code(&zero_a), 2);
    assert_eq!(stdout_json(&zero_a)["error"]["kind"], "invalid_spec");

    let bad_exponent = quadhp(&[
        "check-ms", "--family", "jacobi", "--A", "1", "--B", "1", "--alpha", "-2", "--beta", "0",
    ]);
    assert_eq!(exit_code(&bad_exponent), 2);
    assert_eq!(stdout_json(&bad_exponent)["error"]["kind"], "invalid_spec");
}

#[test]
fn gen_sequence_prints_exact_terms() {
    let out = quadhp(&["gen-sequence", "--family", "legendre", "--A", "1", "--B", "1", "--n", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), r#"["1","3","7","13"]"#);

    let rational = quadhp(&[
        "gen-sequence", "--family", "standard", "--A", "1/2", "--B", "0", "--C", "1/3", "--n", "2",
    ]);
    assert_eq!(stdout_str(&rational).trim(), r#"["1/3","1/3","4/3"]"#);
}

#[test]
fn basis_handles_all_families() {
    let standard = quadhp(&["basis", "--family", "standard", "--n", "3"]);
    assert_eq!(stdout_str(&standard).trim(), r#"["0","0","0","1"]"#);

    let legendre = quadhp(&["basis", "--family", "legendre", "--n", "2"]);
    assert_eq!(stdout_str(&legendre).trim(), r#"["-1/2","0","3/2"]"#);

    let jacobi_edge = quadhp(&[
        "basis", "--family", "jacobi", "--alpha", "-1", "--beta", "0", "--n", "2",
    ]);
    assert_eq!(exit_code(&jacobi_edge), 2);
    assert_eq!(stdout_json(&jacobi_edge)["error"]["kind"], "invalid_spec");
}

#[test]
fn malformed_input_yields_a_json_error_and_exit_two() {
    let unclosed = quadhp(&["check-op", "--q2", "[1,2", "--q1", "[0]", "--q0", "[0]"]);
    assert_eq!(exit_code(&unclosed), 2);
    assert_eq!(stdout_json(&unclosed)["error"]["kind"], "invalid_input");

    let zero_denominator = quadhp(&["check-op", "--q2", r#"["1/0",0,1]"#, "--q1", "[0]", "--q0", "[0]"]);
    assert_eq!(exit_code(&zero_denominator), 2);

    let float_coeff = quadhp(&["check-op", "--q2", "[1.5,0,1]", "--q1", "[0]", "--q0", "[0]"]);
    assert_eq!(exit_code(&float_coeff), 2);

    let too_high = quadhp(&["check-op", "--q2", "[0,0,0,1]", "--q1", "[0]", "--q0", "[0]"]);
    assert_eq!(exit_code(&too_high), 2);
    let message = stdout_json(&too_high)["error"]["message"].to_string();
    assert!(message.contains("degree"), "got: {message}");
}

#[test]
fn unknown_flags_and_subcommands_yield_exit_two() {
    let flag = quadhp(&["check-op", "--q2", "[0,0,1]", "--q1", "[0]", "--q0", "[0]", "--bogus"]);
    assert_eq!(exit_code(&flag), 2);
    assert_eq!(stdout_json(&flag)["error"]["kind"], "invalid_input");

    let subcommand = quadhp(&["frobnicate"]);
    assert_eq!(exit_code(&subcommand), 2);
    assert_eq!(stdout_json(&subcommand)["error"]["kind"], "invalid_input");

    let missing = quadhp(&["check-op", "--q2", "[0,0,1]", "--q1", "[0]"]);
    assert_eq!(exit_code(&missing), 2);
    let message = stdout_json(&missing)["error"]["message"].to_string();
    assert!(message.contains("--q0"), "got: {message}");
}

#[test]
fn help_exits_zero() {
    let out = quadhp(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_str(&out).contains("check-op"));
}
