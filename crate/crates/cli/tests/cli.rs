use std::process::Command;

use clap::CommandFactory;
use overres::bounds::{table1, table2, Table1Row, ThresholdReport};
use overres::groupgen::GroupReport;
use overres_cli::Cli;
use serde_json::Value;

fn overres(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_overres")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out) = overres(&full);
    assert_eq!(code, 0, "{args:?}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], 1);
    v["report"].clone()
}

#[test]
fn documented_examples() {
    assert_eq!(overres(&["centre", "A", "4", "5"]), (0, "dim Z = 1 (dagger)\n".into()));
    let (code, out) = overres(&["verify", "abs-chev", "--type", "A1", "--p", "5", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("PASS (all cone points × basis)"));
}

#[test]
fn same_request_gives_same_bytes() {
    for args in [
        vec!["table2", "--format", "json"],
        vec!["verify", "jacobi", "--type", "B3", "--p", "3", "--seed", "11"],
        vec!["over-restricted", "--type", "A2", "--p", "3", "--rep", "adjoint", "--samples", "30", "--format", "json"],
    ] {
        assert_eq!(overres(&args), overres(&args));
    }
    assert_ne!(
        overres(&["over-restricted", "--type", "B2", "--p", "5", "--rep", "adjoint", "--samples", "5", "--seed", "1", "--format", "json"]).1,
        overres(&["over-restricted", "--type", "B2", "--p", "5", "--rep", "adjoint", "--samples", "5", "--seed", "2", "--format", "json"]).1
    );
}

#[test]
fn json_round_trips() {
    let rows: Vec<ThresholdReport> = serde_json::from_value(report(&["table2"])).unwrap();
    assert_eq!(rows, table2().unwrap());
    let rows: Vec<Table1Row> = serde_json::from_value(report(&["table1"])).unwrap();
    assert_eq!(rows, table1().unwrap());
    let g: GroupReport = serde_json::from_value(report(&["group", "--p", "3", "--rep", "natural"])["group"].clone()).unwrap();
    assert_eq!(g.order, 24);
}

#[test]
fn csv_rows_match_tables() {
    let (_, csv) = overres(&["table2", "--format", "csv"]);
    assert_eq!(csv.lines().count(), table2().unwrap().len() + 1);
    assert!(csv.starts_with("type,rank,a,two_h_minus_2,p0_n2,p0_n3,p0_n4,p0_n5,n_p2,n_p3,n_p5,dagger_flags,discrepancies\n"));
    let (_, csv) = overres(&["table1", "--format", "csv"]);
    assert_eq!(csv.lines().count(), table1().unwrap().len() + 1);
}

#[test]
fn exit_codes() {
    assert_eq!(overres(&["centre", "Q", "4", "5"]).0, 2);
    assert_eq!(overres(&["centre", "A", "4", "6"]).0, 2);
    assert_eq!(overres(&["bogus"]).0, 2);
    assert_eq!(overres(&["verify", "abs-chev", "--p", "3", "--m", "3"]).0, 1);
    assert_eq!(overres(&["verify", "abs-n-chev", "--p", "2", "--n", "3", "--m", "4"]).0, 1);
    assert_eq!(overres(&["verify", "weyl-height", "--type", "G2", "--lambda", "1,0"]).0, 1);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("overres-cli-test-{}.txt", std::process::id()));
    let (code, stdout) = overres(&["table1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, overres(&["table1"]).1);
}

// Every library-level check has a subcommand, and every subcommand runs.
#[test]
fn coverage_audit() {
    let cmd = Cli::command();
    let mut top: Vec<String> = cmd.get_subcommands().map(|c| c.get_name().to_string()).collect();
    top.sort();
    let mut expected = vec![
        "table1", "table2", "centre", "height", "over-restricted", "group", "phi", "verify", "overenv-dim", "alcove", "thresholds",
    ];
    expected.sort();
    assert_eq!(top, expected);
    let verify = cmd.find_subcommand("verify").unwrap();
    let mut checks: Vec<String> = verify.get_subcommands().map(|c| c.get_name().to_string()).collect();
    checks.sort();
    let mut expected = vec!["abs-chev", "abs-n-chev", "hopf", "jacobi", "restricted", "tangent", "deviation", "weyl-height"];
    expected.sort();
    assert_eq!(checks, expected);

    let invocations: &[&[&str]] = &[
        &["table1"],
        &["table2"],
        &["centre", "G", "2", "3"],
        &["height", "--p", "5", "--m", "2"],
        &["height", "--type", "A2", "--lambda", "2,1"],
        &["height", "--type", "A1", "--p", "3", "--rep", "regular"],
        &["over-restricted", "--p", "5", "--m", "2"],
        &["group", "--p", "5", "--rep", "adjoint", "--compare"],
        &["phi", "--p", "5", "--rep", "natural"],
        &["phi", "--p", "2", "--m", "3", "--frobenius-n", "3"],
        &["overenv-dim", "--p", "3"],
        &["alcove"],
        &["alcove", "--type", "G2", "--p", "7", "--lambda", "3,3"],
        &["thresholds", "--type", "E8"],
        &["verify", "abs-chev", "--p", "7", "--m", "3"],
        &["verify", "abs-n-chev", "--p", "3", "--n", "2", "--m", "4"],
        &["verify", "hopf", "--p", "3"],
        &["verify", "jacobi", "--type", "F4", "--p", "5", "--samples", "20"],
        &["verify", "restricted", "--type", "B2", "--p", "3", "--rep", "adjoint"],
        &["verify", "tangent", "--p", "5", "--rep", "natural"],
        &["verify", "deviation", "--type", "A2", "--p", "3"],
        &["verify", "weyl-height", "--type", "A1", "--lambda", "3"],
    ];
    let mut seen = std::collections::BTreeSet::new();
    for args in invocations {
        let (code, out) = overres(args);
        assert_eq!(code, 0, "{args:?}\n{out}");
        seen.insert(if args[0] == "verify" { format!("verify {}", args[1]) } else { args[0].to_string() });
    }
    assert_eq!(seen.len(), top.len() - 1 + checks.len());
}
