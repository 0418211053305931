//! End-to-end tests of the chsh-lab binary: exit codes, output formats,
//! config-file merging and byte determinism.

use chsh_lab::audit::CLAIM_IDS;
use chsh_lab::config::{AngleSpec, CommandKind, OutputFormat, RunConfig};
use proptest::prelude::*;
use std::path::PathBuf;
use std::process::{Command, Output};

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_chsh-lab")
}

fn run(args: &[&str]) -> Output {
    Command::new(exe())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("chsh-lab-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn no_arguments_runs_the_audit() {
    let out = run(&["--n", "2000", "--reps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "claim_id,statement,expected,observed,verdict,dof_note"
    );
    for id in CLAIM_IDS {
        assert!(text.contains(id), "claim {id} missing from audit output");
    }
    assert!(!text.contains(",refuted,"), "audit reported a refutation");
}

#[test]
fn quantum_reports_the_tsirelson_value() {
    let out = run(&["quantum", "--angles", "0,90,45,135"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("s_weak_quantum,2.82842712474619"));
}

#[test]
fn invalid_n_exits_with_usage_code_and_writes_nothing() {
    let path = temp_path("invalid-n.csv");
    let _ = std::fs::remove_file(&path);
    let out = run(&["lhv", "--n", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists(), "output file must not be created");
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn unknown_command_is_a_usage_error() {
    let out = run(&["teleport"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_model_is_a_usage_error() {
    let out = run(&["lhv", "--model", "pilot-wave"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_path_is_an_io_error() {
    let out = run(&["quantum", "--out", "/nonexistent-dir/never/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("chsh-lab"));
}

#[test]
fn sweep_emits_one_row_per_decade() {
    let out = run(&["sweep", "--n", "10000", "--reps", "3", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,mean_s_weak,max_s_weak,stddev");
    assert_eq!(lines.len(), 4, "header plus three decades: {text}");
    assert!(lines[1].starts_with("100,"));
    assert!(lines[2].starts_with("1000,"));
    assert!(lines[3].starts_with("10000,"));
}

#[test]
fn config_file_supplies_values_and_flags_override() {
    let config_path = temp_path("config.json");
    std::fs::write(
        &config_path,
        r#"{"command":"sweep","n_pairs":1000,"reps":4,"seed":9}"#,
    )
    .unwrap();

    let from_file = run(&["--config", config_path.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0));
    let direct = run(&["sweep", "--n", "1000", "--reps", "4", "--seed", "9"]);
    assert_eq!(stdout(&from_file), stdout(&direct));

    // A flag beats the file value.
    let overridden = run(&["--config", config_path.to_str().unwrap(), "--seed", "10"]);
    let direct_10 = run(&["sweep", "--n", "1000", "--reps", "4", "--seed", "10"]);
    assert_eq!(stdout(&overridden), stdout(&direct_10));
    assert_ne!(stdout(&overridden), stdout(&from_file));
}

#[test]
fn malformed_config_file_is_a_usage_error() {
    let config_path = temp_path("broken-config.json");
    std::fs::write(&config_path, r#"{"command":"sweep","n_pair":1000}"#).unwrap();
    let out = run(&["--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = run(&["--config", "/nonexistent-dir/none.json"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn json_output_mirrors_csv_fields() {
    let csv = stdout(&run(&["sweep", "--n", "100", "--reps", "2", "--seed", "3"]));
    let json = stdout(&run(&[
        "sweep", "--n", "100", "--reps", "2", "--seed", "3", "--format", "json",
    ]));
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let row = &parsed[0];
    for column in header {
        assert!(
            row.get(column).is_some(),
            "JSON row lacks column {column}: {row}"
        );
    }
    assert_eq!(row["n"], 100);
}

#[test]
fn file_output_is_byte_identical_across_runs() {
    let a = temp_path("det-a.csv");
    let b = temp_path("det-b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "audit",
            "--n",
            "5000",
            "--reps",
            "3",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

proptest! {
    /// Rendering a configuration to JSON and reading it back is lossless.
    #[test]
    fn config_round_trips_through_json(
        command in prop::sample::select(vec![
            CommandKind::Quantum, CommandKind::Lhv, CommandKind::Sweep,
            CommandKind::Optimize, CommandKind::Audit,
        ]),
        planar in prop::array::uniform4(-360.0f64..360.0),
        spherical_slot in 0usize..4,
        theta in 0.0f64..180.0,
        phi in -180.0f64..180.0,
        model in prop::sample::select(vec!["sphere-sign", "constant", "adversarial-per-set"]),
        n_pairs in 1u64..1_000_000,
        reps in 2u64..500,
        seed in any::<u64>(),
        resolution in 8u32..64,
        format in prop::sample::select(vec![OutputFormat::Csv, OutputFormat::Json]),
        with_path in any::<bool>(),
    ) {
        let mut angles = planar.map(AngleSpec::Planar);
        angles[spherical_slot] = AngleSpec::Spherical { theta, phi };
        let cfg = RunConfig {
            command,
            angles,
            model: model.to_string(),
            n_pairs,
            reps,
            seed,
            resolution,
            output_path: with_path.then(|| PathBuf::from("/tmp/out.csv")),
            format,
        };
        let rendered = serde_json::to_string(&cfg).unwrap();
        let parsed: RunConfig = serde_json::from_str(&rendered).unwrap();
        prop_assert_eq!(parsed, cfg);
    }
}
