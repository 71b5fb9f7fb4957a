use std::fs;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dna-evidence")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_rows(args: &[&str]) -> Vec<serde_json::Map<String, Json>> {
    let mut full = vec!["--format", "json-lines"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
        .lines()
        .map(|l| match serde_json::from_str(l).unwrap() {
            Json::Object(m) => m,
            other => panic!("not an object: {other}"),
        })
        .collect()
}

fn csv_rows(args: &[&str]) -> Vec<Vec<(String, String)>> {
    let mut full = vec!["--format", "csv"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    reader
        .records()
        .map(|r| header.iter().cloned().zip(r.unwrap().iter().map(String::from)).collect())
        .collect()
}

fn json_cell(v: &Json) -> String {
    match v {
        Json::Null => String::new(),
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn csv_and_json_lines_carry_identical_values() {
    let cases: [&[&str]; 4] = [
        &["compare", "--preset", "codis-felon"],
        &["compare", "--preset", "irrelevant-db"],
        &["sweep", "--p", "1e-6", "--psnd", "0.5", "--sweep-param", "d", "--sweep-start", "0", "--sweep-stop", "1000", "--sweep-scale", "linear"],
        &["simulate", "--p", "0.1", "--d", "4", "--trials", "20000", "--seed", "3"],
    ];
    for args in cases {
        let json = json_rows(args);
        let csv = csv_rows(args);
        assert_eq!(json.len(), csv.len(), "{args:?}");
        for (j, c) in json.iter().zip(&csv) {
            let j: Vec<(String, String)> = j.iter().map(|(k, v)| (k.clone(), json_cell(v))).collect();
            assert_eq!(&j, c, "{args:?}");
        }
    }
}

#[test]
fn simulation_output_is_reproducible() {
    let args = ["--format", "csv", "simulate", "--p", "0.05", "--d", "6", "--trials", "200000", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = run(&["--format", "csv", "simulate", "--p", "0.05", "--d", "6", "--trials", "200000", "--seed", "12"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn scenario_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("case.scenario");
    fs::write(&path, "# test case\nlabel = filed\np = 1e-6\nd = 999\npsnd = 0.25\n").unwrap();
    let path = path.to_str().unwrap();

    let base = json_rows(&["compare", "--scenario", path]);
    assert_eq!(base[0]["label"], "filed");
    assert_eq!(base[0]["d"], 999);
    assert_eq!(base[0]["psnd"], 0.25);

    let over = json_rows(&["compare", "--scenario", path, "--db-size", "10", "--n-outside", "90", "--m-factor", "1"]);
    assert_eq!(over[0]["label"], "filed");
    assert_eq!(over[0]["p"], 1e-6);
    assert_eq!(over[0]["d"], 9);
    // psnd = N / (mD + N) = 90 / 99
    assert!((over[0]["psnd"].as_f64().unwrap() - 90.0 / 99.0).abs() < 1e-15);
}

#[test]
fn presets_resolve() {
    let hot = json_rows(&["compare", "--preset", "hot-suspect"]);
    assert_eq!(hot[0]["d"], 0);
    assert_eq!(hot[0]["r1_log10"], 9.0);
    assert_eq!(hot[0]["rf_log10"], 9.0);

    let full = json_rows(&["compare", "--preset", "full-population"]);
    assert_eq!(full[0]["rb_log10"], "inf");
    assert_eq!(full[0]["bayes_degenerate"], false);

    let irrelevant = json_rows(&["compare", "--preset", "irrelevant-db"]);
    assert_eq!(irrelevant[0]["rb_log10"], irrelevant[0]["r1_log10"]);
    assert_eq!(irrelevant[0]["rt_log10"], "-inf");
    assert_eq!(irrelevant[0]["bayes_degenerate"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compare", "--preset", "codis-felon"]).status.code(), Some(0));
    // usage: missing, conflicting or unknown arguments
    assert_eq!(run(&["compare"]).status.code(), Some(2));
    assert_eq!(run(&["compare", "--p", "0.1", "--d", "3", "--psnd", "0.2", "--n-outside", "5"]).status.code(), Some(2));
    assert_eq!(run(&["compare", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["compare", "--scenario", "/nonexistent/file"]).status.code(), Some(2));
    // domain: values the model cannot accept
    let bad_p = run(&["compare", "--p", "2", "--d", "3"]);
    assert_eq!(bad_p.status.code(), Some(3));
    assert!(!bad_p.stderr.is_empty());
    assert_eq!(run(&["compare", "--p", "0.1", "--d", "3", "--psnd", "1.5"]).status.code(), Some(3));
    let capped = run(&["enumerate", "--p", "0.1", "--d", "25"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("Monte Carlo"));
}

#[test]
fn enumerate_reports_agreement() {
    let rows = json_rows(&["enumerate", "--p", "0.5", "--d", "3"]);
    assert_eq!(rows[0]["agrees"], true);
    assert_eq!(rows[0]["p_single_match_given_sid"], 0.125);
    assert_eq!(rows[0]["p_single_match_given_snd"], 0.25);
}

#[test]
fn paradox_subcommands() {
    let raffle = json_rows(&["paradox", "raffle", "--tickets", "100", "--threshold", "0.99"]);
    assert_eq!(raffle[0]["contradiction"], true);
    let birthday = json_rows(&["paradox", "birthday", "--n", "23"]);
    assert_eq!(birthday[0]["probability"], 0.5072972343239854);
    let card = json_rows(&["paradox", "card"]);
    assert_eq!(card[0]["pick_probability_exact"], "1/52");
    assert_eq!(card[0]["likelihood_ratio_exact"], "52");
}
