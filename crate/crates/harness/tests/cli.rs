//! End-to-end tests of the command-line interface: frozen outputs, seed
//! determinism, table shape, and error handling.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinlight"))
        .args(args)
        .env_remove("STEINLIGHT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

#[test]
fn exact_reports_frozen_law() {
    let out = run(&["exact", "--n", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mass,1,1.8740740740740741e-1"));
    assert!(text.contains("mass,3,6.2518518518518518e-1"));
    assert!(text.contains("mass,5,1.8740740740740741e-1"));
    assert!(text.contains("summary,mean,3.0000000000000000e0"));
    assert!(text.contains("summary,variance,1.4992592592592593e0"));
    assert!(text.contains("summary,kolmogorov,3.1259259259259259e-1"));
    // odd counts only: no even-count mass rows
    assert!(!text.contains("mass,0,"));
    assert!(!text.contains("mass,2,"));
}

#[test]
fn exact_accepts_custom_stage_sizes() {
    let out = run(&["exact", "--n", "5", "--stages", "5,5,4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // toggling all five bulbs twice then four leaves an even count
    assert!(text.contains("mass,4,"));
    assert!(!text.contains("mass,3,"));
}

#[test]
fn zero_bulbs_is_a_usage_error() {
    let out = run(&["exact", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_stage_is_reported() {
    let out = run(&["exact", "--n", "4", "--stages", "9"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).expect("utf8 stderr");
    assert!(err.contains("stage"), "stderr was: {err}");
}

#[test]
fn couple_output_is_seed_deterministic() {
    let first = run(&["couple", "--n", "6", "--draws", "2000", "--seed", "7"]);
    let second = run(&["couple", "--n", "6", "--draws", "2000", "--seed", "7"]);
    let other = run(&["couple", "--n", "6", "--draws", "2000", "--seed", "8"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn seed_env_var_matches_flag() {
    let flagged = run(&["couple", "--n", "7", "--draws", "500", "--seed", "123"]);
    let via_env = Command::new(env!("CARGO_BIN_EXE_steinlight"))
        .args(["couple", "--n", "7", "--draws", "500"])
        .env("STEINLIGHT_SEED", "123")
        .output()
        .expect("binary runs");
    assert!(flagged.status.success());
    assert_eq!(flagged.stdout, via_env.stdout);
}

#[test]
fn bound_table_is_stable_certified_and_decreasing() {
    let first = run(&["bound", "--n-min", "6", "--n-max", "21"]);
    let second = run(&["bound", "--n-min", "6", "--n-max", "21"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let text = stdout(&first);
    let mut lines = text.lines();
    let header = lines.next().expect("header row");
    assert_eq!(
        header.trim_end(),
        "n,parity,sigma2,delta_bar,term1,term2,term3,bound,ks_exact,certified"
    );
    let mut previous = [f64::INFINITY; 2];
    let mut rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.trim_end().split(',').collect();
        assert_eq!(cells.len(), 10, "row was: {line}");
        let slot = usize::from(cells[1] == "odd");
        let bound: f64 = cells[7].parse().expect("bound cell");
        assert!(bound < previous[slot], "bound not decreasing at {line}");
        previous[slot] = bound;
        assert_eq!(cells[9], "true", "row was: {line}");
        rows += 1;
    }
    assert_eq!(rows, 16);
}

#[test]
fn bound_writes_csv_file() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("bounds.csv");
    let out = run(&[
        "bound",
        "--n-min",
        "6",
        "--n-max",
        "9",
        "--csv",
        path.to_str().expect("utf8 path"),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).expect("csv written");
    assert!(content.starts_with("n,parity,sigma2"));
    assert_eq!(content.lines().count(), 5);
}

#[test]
fn verify_filter_selects_named_checks() {
    let out = run(&["verify", "--only", "pmf"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS pmf_enumeration (chain)"));
    assert!(text.contains("1 of 1 checks passed (seed 42)"));
}

#[test]
fn verify_rejects_unknown_filter() {
    let out = run(&["verify", "--only", "no_such_check"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).expect("utf8 stderr");
    assert!(err.contains("pmf_enumeration"), "stderr was: {err}");
}

#[test]
fn simulate_tracks_the_exact_law() {
    let out = run(&["simulate", "--n", "4", "--draws", "50000", "--seed", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let tv_line = text
        .lines()
        .find(|line| line.starts_with("summary,tv_vs_exact,"))
        .expect("tv row present");
    let tv: f64 = tv_line
        .trim_end()
        .rsplit(',')
        .next()
        .expect("value cell")
        .parse()
        .expect("tv parses");
    assert!(tv < 0.02, "tv was {tv}");
}

#[test]
fn spectral_table_includes_decay_rows() {
    let out = run(&["spectral", "--n", "8", "--order", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|line| line.starts_with("decay,")));
    for line in text.lines().filter(|line| line.starts_with("decay,")) {
        assert!(line.trim_end().ends_with(",true"), "row was: {line}");
    }
}
