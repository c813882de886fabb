//! CLI contract beyond the golden files: every subcommand runs, config
//! files merge under flags, artifacts are atomic, and JSON output
//! round-trips byte-identically.

use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sqfl")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn every_subcommand_succeeds_on_a_smoke_invocation() {
    let cases: &[&[&str]] = &[
        &["count-q", "--x", "100"],
        &["count-ad", "--x", "100", "--d", "6"],
        &["count-qp", "--x", "100", "--epsilon", "0.5"],
        &["sift", "--x", "100", "--epsilon", "0.5"],
        &["count-a", "--x", "100", "--epsilon", "0.5", "--y", "50"],
        &["phi", "--y", "100", "--z", "5"],
        &["mertens", "--y", "50"],
        &["psi-product", "--y", "50"],
        &["zeta2", "--y", "50"],
        &["density", "--x", "1000", "--epsilon", "0.5"],
        &["requirement", "--eta", "2", "--xi", "10"],
        &["sd-gcoeffs", "--z-re", "0.5", "--z-im", "0.25", "--nu-max", "8"],
        &["sd-geval", "--d", "6", "--s", "1.5", "--truncation-prime", "10000"],
        &["sd-lambda0", "--d", "30"],
        &["sd-mconst", "--a", "0.5", "--density", "40"],
        &["scan-proposition", "--x-grid", "1e3", "--eps-grid", "0.5"],
        &["scan-lemma22", "--x-grid", "1e4", "--d-list", "2,6,30"],
        &["scan-lemma23", "--x-grid", "1e4,1e5", "--d-list", "2,6"],
        &["scan-abel", "--x-grid", "1e3,1e4"],
        &["scan-aratio", "--x-grid", "1e3", "--samples", "4"],
    ];
    for args in cases {
        let out = run(args);
        assert!(
            out.status.success(),
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
        let text = stdout(&out);
        assert!(text.ends_with('\n'), "{args:?} artifact must end in newline");
        // Default format is JSON for every subcommand.
        serde_json::from_str::<serde_json::Value>(&text)
            .unwrap_or_else(|e| panic!("{args:?} emitted invalid JSON: {e}"));
    }
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "# shared settings\nx = 100\nepsilon = 0.5\n").unwrap();
    let config = config.to_str().unwrap();

    // All parameters from the file.
    let from_file = run(&["count-qp", "--config", config]);
    assert!(from_file.status.success());
    let reference = run(&["count-qp", "--x", "100", "--epsilon", "0.5"]);
    assert_eq!(from_file.stdout, reference.stdout);

    // An explicit flag overrides the file value.
    let flag_wins = run(&["count-qp", "--x", "30", "--config", config]);
    assert_eq!(stdout(&flag_wins), "{\"count\":8}\n");

    // Environment variable names the config when the flag is absent.
    let via_env = Command::new(bin())
        .args(["count-qp"])
        .env("SQFL_CONFIG", config)
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, reference.stdout);

    // The --config flag beats the environment.
    let other = dir.path().join("other.conf");
    std::fs::write(&other, "x = 30\nepsilon = 0.5\n").unwrap();
    let flag_beats_env = Command::new(bin())
        .args(["count-qp", "--config", other.to_str().unwrap()])
        .env("SQFL_CONFIG", config)
        .output()
        .unwrap();
    assert_eq!(stdout(&flag_beats_env), "{\"count\":8}\n");

    // Unknown keys and malformed lines are domain errors.
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "frobnicate = 1\n").unwrap();
    let out = run(&["count-q", "--x", "10", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // A missing config file is a domain error, not a crash.
    let out = run(&["count-q", "--x", "10", "--config", "/nonexistent/sqfl.conf"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_the_file_and_nothing_on_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("artifact.json");
    let out = run(&["count-q", "--x", "10", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "artifact goes to the file, not stdout");
    let reference = run(&["count-q", "--x", "10"]);
    assert_eq!(std::fs::read(&path).unwrap(), reference.stdout);

    // A failing run must not leave a partial artifact behind.
    let failing = dir.path().join("never.json");
    let out = run(&["count-q", "--x=-1", "--output", failing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!failing.exists(), "failed run must not create an output file");
}

#[test]
fn scan_json_round_trips_byte_identically() {
    for args in [
        vec!["scan-abel", "--x-grid", "1e3,1e4"],
        vec!["scan-proposition", "--x-grid", "1e3,1e4", "--eps-grid", "0.3,0.5"],
        vec!["scan-lemma23", "--x-grid", "1e4,1e5", "--d-list", "2,6,30"],
    ] {
        let text = stdout(&run(&args));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let mut rebuilt = serde_json::to_string(&value).unwrap();
        rebuilt.push('\n');
        assert_eq!(text, rebuilt, "{args:?} JSON does not round-trip");
        // Top-level key order is part of the format contract.
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["rows", "summary", "params", "version"]);
    }
}

#[test]
fn scalar_json_round_trips_byte_identically() {
    for args in [
        vec!["count-q", "--x", "1000"],
        vec!["mertens", "--y", "1000"],
        vec!["requirement", "--eta", "2", "--xi", "100"],
        vec!["sd-geval", "--d", "2", "--s", "1.2", "--truncation-prime", "1000"],
    ] {
        let text = stdout(&run(&args));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let mut rebuilt = serde_json::to_string(&value).unwrap();
        rebuilt.push('\n');
        assert_eq!(text, rebuilt, "{args:?} JSON does not round-trip");
    }
}

#[test]
fn thread_count_never_changes_scan_bytes() {
    let single = run(&[
        "scan-lemma22", "--x-grid", "1e4,1e5", "--d-list", "2,6,30,210", "--threads", "1",
    ]);
    let pooled = run(&[
        "scan-lemma22", "--x-grid", "1e4,1e5", "--d-list", "2,6,30,210", "--threads", "4",
    ]);
    assert!(single.status.success() && pooled.status.success());
    assert_eq!(single.stdout, pooled.stdout);
}

#[test]
fn csv_is_for_scans_only() {
    let out = run(&["count-q", "--x", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["scan-abel", "--x-grid", "1e3", "--format", "csv"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("# scan=abel-tail\n"));
    let out = run(&["scan-abel", "--x-grid", "1e3", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2), "unknown format is a domain error");
}

#[test]
fn diagnostics_go_to_stderr_not_stdout() {
    let out = run(&["count-q", "--x=-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "error paths must not write to stdout");
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("error"),
        "diagnostic must reach stderr"
    );
}

#[test]
fn sd_geval_rejects_unfactorable_modulus() {
    // 101 exceeds the truncation prime, so the character cannot be
    // certified at every retained prime: domain error.
    let out = run(&["sd-geval", "--d", "101", "--s", "1.5", "--truncation-prime", "100"]);
    assert_eq!(out.status.code(), Some(2));
}
