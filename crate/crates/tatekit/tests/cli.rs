//! End-to-end checks of the command-line surface: JSON in, verdicts out,
//! exit codes 0/1/2.

use std::process::{Command, Output};

fn tatekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tatekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const SERIES_A: &str =
    r#"{"n":1,"spec":{"kind":"Q"},"coeffs":[{"e":[0],"c":"1"},{"e":[1],"c":"-1"}],"cert":{"lo":[0],"hi":[null],"tails":[]}}"#;

#[test]
fn series_commands() {
    let out = tatekit(&["series", "inv", SERIES_A, "--prec", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("t1^3"), "inverse output: {}", text);

    let out = tatekit(&[
        "series",
        "val",
        r#"{"n":2,"spec":{"kind":"Q"},"coeffs":[{"e":[-2,3],"c":"1"},{"e":[5,3],"c":"1"},{"e":[0,4],"c":"1"}],"cert":{"lo":[-2,0],"hi":[null,null],"tails":[]}}"#,
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(-2,3)"));
}

#[test]
fn series_json_round_trip_via_cli() {
    let out = tatekit(&["--format", "json", "series", "add", SERIES_A, SERIES_A]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["coeffs"][0]["c"], "2");
}

#[test]
fn lattice_commands() {
    let std0 = r#"{"arity":2,"below":{"kind":"zero"},"tail_from":0,"tail":{"kind":"full"}}"#;
    let std3 = r#"{"arity":2,"below":{"kind":"zero"},"tail_from":3,"tail":{"kind":"full"}}"#;
    let out = tatekit(&["lattice", "contains", std0, std3]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("true"));

    let out = tatekit(&["lattice", "sandwich", std3]);
    assert!(stdout(&out).contains("standard(3) <= L <= standard(3)"));

    // the diagonal subspace is refused with the no-FULL-tail reason, exit 1
    let diag = r#"{"arity":2,"below":{"kind":"zero"},"tail_from":0,"tail":{"kind":"half_line","base":0,"slope":-1}}"#;
    let out = tatekit(&["lattice", "check", diag]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no FULL tail"));

    let out = tatekit(&["lattice", "plot", std0, "--lo", "-2", "--hi", "2"]);
    assert!(stdout(&out).contains("#####"));
    let out = tatekit(&["lattice", "plot", std0, "--lo", "-2", "--hi", "2", "--svg"]);
    assert!(stdout(&out).contains("<svg"));
}

#[test]
fn op_classify_routes() {
    let proj = r#"{"op":"proj","axis":1,"cutoff":0}"#;
    let out = tatekit(&["op", "classify", proj, "--n", "2", "--route", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("tate: axis 1: I+ IN"));
    assert!(text.contains("yekutieli (radius 8): axis 1: I+ IN"));
}

#[test]
fn op_suite_and_exit_codes() {
    let out = tatekit(&["op", "suite", "--n", "2", "--seed", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("OK"));

    // unknown suite name: usage error, exit 2
    let out = tatekit(&["suite", "run", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_env_override() {
    let with_flag = tatekit(&["suite", "run", "geometry", "--seed", "9"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_tatekit"))
        .args(["suite", "run", "geometry"])
        .env("TATEKIT_SEED", "9")
        .output()
        .expect("binary runs");
    assert_eq!(with_flag.stdout, with_env.stdout);
    assert!(stdout(&with_flag).contains("seed 9"));
}

#[test]
fn demo_commands() {
    let out = tatekit(&["demo", "cusp"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("gaps [1]"));

    let out = tatekit(&["demo", "parshin", "--lo", "-2", "--hi", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("="));

    let out = tatekit(&["demo", "yekutieli", "--radius", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("NOT_A_TATE_MORPHISM"));

    let out = tatekit(&["adele", "plane"]);
    assert!(stdout(&out).contains("k((x))[[y]]"));

    let out = tatekit(&["adele", "line", "--p", "5", "--f", "3,0,1"]);
    assert!(out.status.success());

    let out = tatekit(&["hensel", "--p", "5", "--f", "3,0,1", "--prec", "3"]);
    assert!(stdout(&out).contains("newton error valuations"));
}

#[test]
fn lifting_commands() {
    let out = tatekit(&["lifting", "falsify", "--q", "neg-identity", "--radius", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("NOT_A_TATE_MORPHISM"));

    let out = tatekit(&["lifting", "falsify", "--q", "pos-identity", "--radius", "6"]);
    assert!(stdout(&out).contains("MORPHISM_PLAUSIBLE"));

    let gen2 = r#"{"n":1,"spec":{"kind":"Q"},"coeffs":[{"e":[2],"c":"1"}],"cert":{"lo":[2],"hi":[null],"tails":[]}}"#;
    let out = tatekit(&[
        "lifting", "lift", gen2, "--mode", "twisted", "--q", "neg-identity", "--radius", "8",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("t1^-2*t2"));
}

#[test]
fn malformed_input_is_usage_error() {
    let out = tatekit(&["series", "val", r#"{"n":1,"spec":{"kind":"Q"},"coeffs":[],"cert":{"lo":[5],"hi":[2],"tails":[]}}"#]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("axis 1"), "stderr: {}", err);
}
