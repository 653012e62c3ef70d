//! End-to-end tests of the command-line surface: output shapes, exit
//! codes, JSON schema, and byte-level determinism.

use std::process::{Command, Output};

use gjrs::report::JsonReport;

fn gjrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gjrs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn gjrs_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gjrs"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn lfactor_prints_atoms() {
    let out = gjrs(&["lfactor", "chiR(0,-1/2) x chiR(0,1/2)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "Gamma_R(s-1/2) * Gamma_R(s+1/2)\n");
}

#[test]
fn pole_reports_order_and_contributors() {
    let out = gjrs(&["pole", "chiR(0,-1/2)", "--at", "1/2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("pole order 1 at s = 1/2"), "{text}");
    assert!(text.contains("Gamma_R(s-1/2)"), "{text}");
}

#[test]
fn dual_prints_expression() {
    let out = gjrs(&["dual", "st(unram(-1/2),1)"]);
    assert_eq!(stdout(&out), "st(unram(1/2),1)\n");
    // the unitary Steinberg is self-dual
    let out = gjrs(&["dual", "st(unram(1/2),2)"]);
    assert_eq!(stdout(&out), "st(unram(1/2),2)\n");
}

#[test]
fn theta_check_gives_dual_side_reason() {
    let out = gjrs(&["theta-check", "st(unram(-1/2),2)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("certified: true"), "{text}");
    assert!(text.contains("dual side has no pole at 1/2"), "{text}");
}

#[test]
fn theta_check_declines_bad_pair() {
    let out = gjrs(&["theta-check", "chiR(0,-1/2) x chiR(0,1/2)"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("certified: false"));
}

#[test]
fn rs_json_has_exactly_the_expected_pole() {
    let out = gjrs(&["rs", "st(unram(-1/2),2)", "st(unram(-1/2),1)", "--json"]);
    assert!(out.status.success());
    let report: JsonReport = serde_json::from_str(&stdout(&out)).expect("valid envelope");
    assert_eq!(report.version, 1);
    assert_eq!(report.command, "rs");
    let poles = report.poles.expect("poles section");
    assert_eq!(poles.len(), 1);
    assert_eq!(poles[0].s.to_string(), "1");
    assert_eq!(poles[0].order, 1);
}

#[test]
fn reducible_verdicts() {
    let out = gjrs(&["reducible", "st(unram(1/2),1)", "st(unram(-1/2),1)"]);
    assert_eq!(stdout(&out), "reducible\n");
    let out = gjrs(&["reducible", "chiR(0,0)", "chiR(1,0)"]);
    assert_eq!(stdout(&out), "irreducible\n");
}

#[test]
fn parse_errors_exit_one_with_position() {
    let out = gjrs(&["lfactor", "chiR(2,0)"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte 5"), "{err}");
    assert!(err.contains("m in {0, 1}"), "{err}");

    let out = gjrs(&["lfactor", "indR(0,1)"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("reducible"), "{err}");

    // mixed fields are a usage error too
    let out = gjrs(&["rs", "chiR(0,0)", "st(unram(0),1)"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_passes_with_exit_zero() {
    let out = gjrs(&["sweep", "tempered-rs", "--field", "nonarch", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("tempered-rs nonarch: PASS"), "{text}");
}

#[test]
fn mutated_sweep_fails_with_exit_two() {
    let out = gjrs(&[
        "sweep",
        "pat1",
        "--field",
        "nonarch",
        "--mutate",
        "drop-tensor-summand",
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn sweep_writes_json_report_file() {
    let dir = std::env::temp_dir().join(format!("gjrs-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pat1.json");
    let out = gjrs(&[
        "sweep",
        "pat1",
        "--field",
        "real",
        "--no-timing",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&path).unwrap();
    let report: JsonReport = serde_json::from_str(&body).expect("valid envelope");
    assert_eq!(report.version, 1);
    assert_eq!(report.command, "sweep");
    let sweeps = report.sweeps.expect("sweep reports");
    assert_eq!(sweeps.len(), 1);
    assert!(sweeps[0].passed());
    assert!(sweeps[0].wall_ms.is_none());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn numeric_commands_pass_and_fail_by_tolerance() {
    let out = gjrs(&["numeric", "duplication"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));

    let out = gjrs(&["numeric", "tate", "--m", "0", "--s", "1/2"]);
    assert_eq!(out.status.code(), Some(0));

    // an unreachable tolerance must fail with exit 3
    let out = gjrs(&["numeric", "duplication", "--tolerance", "1e-30"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("FAIL"));

    // the divergent region is a usage error
    let out = gjrs(&["numeric", "tate", "--m", "0", "--s", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("converges only for Re(s) > 0"), "{err}");
}

#[test]
fn negative_rationals_accepted_as_values() {
    let out = gjrs(&["pole", "chiR(0,0)", "--at", "-2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("pole order 1 at s = -2"));
}

#[test]
fn stdout_is_byte_identical_across_runs_and_thread_counts() {
    let sweep_args = [
        "sweep",
        "generic",
        "--field",
        "nonarch",
        "--no-timing",
        "--json",
    ];
    let a = gjrs_with_threads(&sweep_args, "1");
    let b = gjrs_with_threads(&sweep_args, "1");
    let c = gjrs_with_threads(&sweep_args, "4");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same invocation must be byte-identical");
    assert_eq!(a.stdout, c.stdout, "worker count must not affect output");

    for args in [
        vec!["lfactor", "st(unram(-1/2),3)", "--json"],
        vec!["theta-check", "st(unram(-1/2),2)", "--json"],
        vec!["numeric", "duplication", "--json"],
    ] {
        let a = gjrs(&args);
        let b = gjrs(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = gjrs(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = gjrs(&["sweep", "--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_envelopes_roundtrip_through_serde() {
    for args in [
        vec!["lfactor", "chiC(-2,1/2+3/4i)", "--json"],
        vec!["pole", "st(unram(-1/2),4)", "--at", "1/2", "--json"],
        vec!["theta-check", "chiR(0,0)", "--json"],
        vec!["numeric", "tate", "--m", "1", "--s", "2", "--json"],
    ] {
        let out = gjrs(&args);
        assert!(out.status.success(), "{args:?}");
        let text = stdout(&out);
        let report: JsonReport = serde_json::from_str(&text).expect("valid envelope");
        let reserialized = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(reserialized.trim_end(), text.trim_end(), "{args:?}");
    }
}
