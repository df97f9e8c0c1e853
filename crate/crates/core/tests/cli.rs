use std::io::Write;
use std::process::{Command, Output};

use transit_core::io::parse_document;
use transit_core::report::Report;

fn transit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transit"))
        .args(args)
        .env("TRANSIT_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(contents: &str, suffix: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn fixture_file(name: &str) -> tempfile::NamedTempFile {
    file(transit_core::fixtures::by_name(name).unwrap().source, ".txt")
}

#[test]
fn fixtures_command_passes() {
    let o = transit(&["fixtures"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(", 0 failed"));
}

#[test]
fn classify_mm_not_w() {
    let f = fixture_file("mm-not-w");
    let o = transit(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = |tag: &str| text.lines().find(|l| l.split_whitespace().next() == Some(tag)).unwrap().to_string();
    assert!(line("binaryClustering").contains("holds"));
    assert!(line("MM").contains("holds"));
    assert!(line("weakHierarchy").contains("fails"));
}

#[test]
fn order_of_path_system() {
    let f = fixture_file("path-py-not-uc");
    let o = transit(&["order", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "order: 1 2 3 4");
    let cycle = fixture_file("four-cycle");
    let o = transit(&["--format", "json", "order", cycle.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pre_pyramidal"], false);
    assert_eq!(v["obstruction"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_battery_at_three() {
    let o = transit(&["verify-implications", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn refuted_implication_exits_one() {
    let claims = file("implies w => wp\n", ".txt");
    let o = transit(&["verify-implications", "--n", "4", "--claims", claims.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL implies w => wp: refuted"));
}

#[test]
fn long_run_is_required_at_five() {
    let o = transit(&["verify-implications", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("long-run"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(transit(&["bogus"]).status.code(), Some(2));
    let f = fixture_file("w-not-monotone");
    let o = transit(&["check", f.path().to_str().unwrap(), "--axiom", "zz"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = file("elements: x y\nx q\n", ".txt");
    let o = transit(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`q`"));
    assert_eq!(transit(&["check", "/nonexistent/file.txt"]).status.code(), Some(2));
}

#[test]
fn selected_checks_set_the_exit_status() {
    let f = fixture_file("xprime-not-w");
    let p = f.path().to_str().unwrap();
    assert_eq!(transit(&["check", p, "--axiom", "m", "--axiom", "x'"]).status.code(), Some(0));
    assert_eq!(transit(&["check", p, "--axiom", "w"]).status.code(), Some(1));
    assert_eq!(transit(&["check", p]).status.code(), Some(0));
}

#[test]
fn json_report_round_trips() {
    let f = fixture_file("w-not-monotone");
    let o = transit(&["--format", "json", "check", f.path().to_str().unwrap()]);
    let json = stdout(&o);
    let report: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap().trim(), json.trim());
    // the text rendering carries the same verdicts
    let text = stdout(&transit(&["check", f.path().to_str().unwrap()]));
    for c in &report.checks {
        let line = text.lines().find(|l| l.split_whitespace().next() == Some(c.tag.as_str())).unwrap();
        assert_eq!(line.contains("holds"), c.holds, "{}", c.tag);
    }
}

#[test]
fn closure_emits_a_parseable_system() {
    let f = file("elements: a b c d\na b\nb c\n", ".txt");
    let o = transit(&["closure", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc = parse_document(&stdout(&o)).unwrap();
    let transit_core::io::Body::System(s) = doc.body else { panic!() };
    let sets: Vec<String> = s.clusters().iter().map(|&c| s.format_cluster(c)).collect();
    assert_eq!(sets, ["{a}", "{b}", "{c}", "{d}", "{a, b}", "{b, c}", "{a, b, c}"]);
}

#[test]
fn complete_singletons_flag() {
    let f = file("elements: a b c\na b c\n", ".txt");
    let p = f.path().to_str().unwrap();
    assert_eq!(transit(&["check", p, "--axiom", "Tsystem"]).status.code(), Some(1));
    assert_eq!(transit(&["--complete-singletons", "check", p, "--axiom", "Tsystem"]).status.code(), Some(0));
}

#[test]
fn enumerate_counts() {
    let o = transit(&["enumerate", "--n", "4", "--filter", "Tsystem", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "400");
    let o = transit(&["enumerate", "--n", "3", "--filter", "Tsystem"]);
    assert_eq!(stdout(&o).lines().count(), 8);
    assert_eq!(transit(&["enumerate", "--n", "6", "--count-only"]).status.code(), Some(2));
}

#[test]
fn json_documents_are_accepted() {
    let f = file(r#"{"elements": ["a", "b"], "sets": [["a"], ["b"], ["a", "b"]]}"#, ".json");
    let o = transit(&["check", f.path().to_str().unwrap(), "--axiom", "Tsystem", "--axiom", "m"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
