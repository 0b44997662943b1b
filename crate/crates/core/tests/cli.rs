//! End-to-end tests for the command-line binary: golden stdout, stderr
//! routing, and structured output shape.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wittcas"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn det_of_swap_tuple() {
    let (code, out, _) = run(&["det", "(x2, x1)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "J = -1\n");
}

#[test]
fn det_rejects_nonconstant_jacobian() {
    let (code, out, err) = run(&["det", "(x1*x2, x2)"]);
    assert_eq!(code, 1);
    assert_eq!(out, "J = x2\n");
    assert!(err.is_empty());
}

#[test]
fn theta_of_elementary_shear() {
    let (code, out, _) = run(&["theta", "(x1, x2 + x1^2)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "c = 1\ntheta_1 = d1 - 2*x1*d2\ntheta_2 = d2\n");
}

#[test]
fn theta_error_goes_to_stderr() {
    let (code, out, err) = run(&["theta", "(x1^2, x2)"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"), "stderr was {err:?}");
}

#[test]
fn compose_substitutes_left_into_right() {
    let (code, out, _) = run(&["compose", "(x2, x1)", "(x1, x2 + x1^2)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(x2, x2^2 + x1)\nc = -1\n");
}

#[test]
fn endo_apply_partial_gives_theta() {
    let (code, out, _) = run(&["endo", "apply", "(x1, x2 + x1^2)", "d1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "d1 - 2*x1*d2\n");
}

#[test]
fn verify_endo_reports_check_count() {
    let (code, out, _) = run(&["verify", "endo", "(x2, x1)", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "pass: 144 checks\n");
}

#[test]
fn verify_xi_default_degree() {
    let (code, out, _) = run(&["verify", "xi", "(x2, x1)", "(x1, x2 + x1^2)", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "pass: 12 checks\n");
}

#[test]
fn tame_eval_canonical_tuple() {
    let (code, out, _) = run(&["tame", "eval", "psi(2)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(x1, x1^2 + x2)\nc = 1\n");
}

#[test]
fn tame_eval_guesses_arity_from_swaps() {
    let (code, out, _) = run(&["tame", "eval", "s2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(x1, x3, x2)\nc = -1\n");
}

#[test]
fn tame_invert_reverses_and_inverts() {
    let (code, out, _) = run(&["tame", "invert", "s1; psi(2); t(2)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "t(1/2); shear(2,-1); s1\n");
}

#[test]
fn nagata_prints_tuple_and_constant() {
    let (code, out, _) = run(&["nagata"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    let tuple_line = lines.next().unwrap();
    assert_eq!(lines.next(), Some("c = 1"));
    assert!(tuple_line.starts_with('(') && tuple_line.ends_with(')'));
    assert!(tuple_line.ends_with(", x3)"));
    // Round trip: the printed tuple must be accepted again, unchanged.
    let (code2, out2, _) = run(&["tame", "eval", "id", "--n", "3"]);
    assert_eq!(code2, 0);
    assert_eq!(out2, "(x1, x2, x3)\nc = 1\n");
    let (code3, out3, _) = run(&["det", tuple_line]);
    assert_eq!(code3, 0);
    assert_eq!(out3, "J = 1\n");
}

#[test]
fn w2_act_scale_uses_shifted_exponent() {
    let (code, out, _) = run(&["w2", "act", "t(2)", "d1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1/2*d1\n");
}

#[test]
fn w2_act_shear_normative_vs_unscaled() {
    let (code, out, _) = run(&["w2", "act", "psi(2)", "d1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "d1 - 2*x1*d2\n");
    let (code2, out2, _) = run(&["w2", "act", "psi(2)", "d1", "--unscaled"]);
    assert_eq!(code2, 0);
    assert_eq!(out2, "d1 - x1*d2\n");
}

#[test]
fn structured_theta_is_valid_json() {
    let (code, out, _) = run(&["--format", "structured", "theta", "(x1, x2 + x1^2)"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["command"], "theta");
    assert_eq!(doc["c"], "1");
    assert_eq!(doc["theta"][0], "d1 - 2*x1*d2");
    assert_eq!(doc["theta"][1], "d2");
}

#[test]
fn structured_verify_report_shape() {
    let (code, out, _) = run(&[
        "--format",
        "structured",
        "verify",
        "endo",
        "(x2, x1)",
        "--degree",
        "2",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["command"], "verify endo");
    assert_eq!(doc["report"]["checked"], 144);
    assert_eq!(doc["report"]["failures"], 0);
    assert!(doc["report"]["counterexample"].is_null());
    assert!(doc["report"].get("elapsed").is_none());
}

#[test]
fn verify_endo_rejects_degenerate_tuple() {
    let (code, _, err) = run(&["verify", "endo", "(x1 + x2, x1 + x2)"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn parse_errors_exit_one_with_position() {
    let (code, _, err) = run(&["det", "(x1 + , x2)"]);
    assert_eq!(code, 1);
    assert!(err.contains("error:"));
    let (code2, _, err2) = run(&["endo", "apply", "(x2, x1)", "d1*d2"]);
    assert_eq!(code2, 1);
    assert!(err2.contains("error:"));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = run(&[]);
    assert_eq!(code, 2);
    let (code2, _, _) = run(&["det"]);
    assert_eq!(code2, 2);
}
