//! Drives the compiled binary end to end: frozen human output, JSON shapes,
//! exit codes, and the promise that emitted files re-parse.

mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use borev::canonical::extract_canonical;
use borev::logic::{models, parse_formula};
use borev::postulates::OperatorUnderTest;
use borev::problem::ProblemFile;
use common::{ccm_failure_example, fixture_path};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borev")).args(args).output().expect("binary spawns")
}

fn out(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout is utf-8")
}

fn err(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("stderr is utf-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

fn fixture(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

/// Write a scratch problem file with a name unique to the calling test.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("borev-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(&out(o)).expect("stdout is one JSON document")
}

#[test]
fn revise_reports_a_destabilising_input() {
    let o = run(&["revise", &fixture("biorder_example.bk"), "p"]);
    assert_eq!(code(&o), 1);
    let text = out(&o);
    assert!(text.contains("K: !p & !q"), "echoes the belief set: {text}");
    assert!(text.contains("{-p-q}"), "echoes the belief models: {text}");
    assert!(text.contains("inconsistent (destabilising input)"), "{text}");
}

#[test]
fn revise_lists_models_and_formula() {
    let o = run(&["revise", &fixture("biorder_example.bk"), "p & q"]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    assert!(text.contains("models: {pq}"), "{text}");
    assert!(text.contains("formula: p & q"), "{text}");
}

#[test]
fn revise_json_is_machine_readable() {
    let o = run(&["revise", &fixture("biorder_example.bk"), "p & q", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["command"], "revise");
    assert_eq!(v["npr"], false);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["retained"], false);
    assert_eq!(v["models"], serde_json::json!(["11"]));
    assert_eq!(v["formula"], "p & q");
}

#[test]
fn npr_revision_retains_the_old_beliefs() {
    let o = run(&["revise", &fixture("biorder_example.bk"), "p", "--npr"]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    assert!(text.contains("input incredible: retained K"), "{text}");
    assert!(text.contains("models: {-p-q}"), "{text}");

    let o = run(&["revise", &fixture("biorder_example.bk"), "p", "--npr", "--json"]);
    let v = json_of(&o);
    assert_eq!(v["retained"], true);
    assert_eq!(v["models"], serde_json::json!(["00"]));
}

#[test]
fn agm_suite_fails_on_the_biorder_example() {
    let o = run(&["check", &fixture("biorder_example.bk"), "--suite", "AGM"]);
    assert_eq!(code(&o), 1);
    let text = out(&o);
    assert!(text.contains("suite AGM (exhaustive)"), "{text}");
    for line in ["P4", "P6", "P8"] {
        let failing = text
            .lines()
            .any(|l| l.trim_start().starts_with(line) && l.contains("fails"));
        assert!(failing, "{line} should fail:\n{text}");
    }
    assert!(text.contains("alpha:"), "failing reports carry witnesses: {text}");
    assert!(text.contains("suite AGM: 3 of 9 fail"), "{text}");
}

#[test]
fn bob_suite_holds_on_the_biorder_example() {
    let o = run(&["check", &fixture("biorder_example.bk"), "--suite", "BOB"]);
    assert_eq!(code(&o), 0);
    assert!(out(&o).contains("suite BOB: all 7 hold"), "{}", out(&o));
}

#[test]
fn npr_suites_wrap_the_state_automatically() {
    let o = run(&["check", &fixture("ccm_failure.bk"), "--suite", "BOB-NPR"]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    assert!(text.contains("npr operator"), "{text}");
    assert!(text.contains("all"), "{text}");
}

#[test]
fn sampled_mode_reports_its_parameters() {
    let o = run(&[
        "check",
        &fixture("biorder_example.bk"),
        "--suite",
        "BOB",
        "--mode",
        "sampled",
        "--seed",
        "9",
        "--count",
        "50",
    ]);
    assert_eq!(code(&o), 0);
    assert!(out(&o).contains("sampled seed=9 count=50"), "{}", out(&o));
}

#[test]
fn check_json_carries_reports_and_witnesses() {
    let o = run(&["check", &fixture("biorder_example.bk"), "--suite", "AGM", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    assert_eq!(v["all_hold"], false);
    let reports = v["reports"].as_array().expect("reports array");
    assert_eq!(reports.len(), 9);
    let vacuity = reports
        .iter()
        .find(|r| r["postulate"] == "P4")
        .expect("vacuity appears in the suite");
    assert_eq!(vacuity["verdict"], "fails");
    assert!(vacuity["witness"]["alpha"].is_string(), "witness formulas are rendered");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = run(&["check", &fixture("biorder_example.bk"), "--suite", "NOPE"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).starts_with("error:"), "{}", err(&o));
}

#[test]
fn missing_file_is_a_parse_failure() {
    let o = run(&["revise", "/no/such/problem.bk", "p"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("/no/such/problem.bk"), "{}", err(&o));
}

#[test]
fn syntax_errors_name_the_offending_line() {
    let path = scratch(
        "bad_rank.bk",
        "atoms: p,q\nbelief: !p & !q\nclass: bob\nL: 11=zero, 10=3, 01=4, 00=0\nU: 11=3, 10=1, 01=0, 00=4\n",
    );
    let o = run(&["revise", path.to_str().unwrap(), "p"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("line 4"), "{}", err(&o));
}

#[test]
fn invariant_breaches_exit_with_three() {
    let path = scratch(
        "not_normal.bk",
        "atoms: p,q\nL: 11=1, 10=1, 01=1, 00=1\nU: 11=1, 10=1, 01=1, 00=1\n",
    );
    let o = run(&["revise", path.to_str().unwrap(), "p"]);
    assert_eq!(code(&o), 3);
    assert!(err(&o).starts_with("error:"), "{}", err(&o));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&[])), 2);
}

#[test]
fn canonical_emits_a_reconsumable_file() {
    let o = run(&["canonical", &fixture("ccm_failure.bk")]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    assert!(text.starts_with("# u: "), "trace comments lead the output: {text}");
    assert!(text.contains("# v: "), "{text}");

    let reparsed = ProblemFile::parse(&text).expect("output is a valid problem file");
    reparsed.state().expect("output satisfies the invariants");
    let op = OperatorUnderTest::from_revision(&ccm_failure_example());
    let trace = extract_canonical(&op).unwrap();
    assert_eq!(*reparsed.interpretation(), trace.result);
}

#[test]
fn canonical_json_dumps_the_trace() {
    let o = run(&["canonical", &fixture("ccm_failure.bk"), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert!(v["trace"]["u_seq"].is_array());
    assert!(v["trace"]["v_seq"].is_array());
    let file = v["file"].as_str().expect("embedded problem file");
    ProblemFile::parse(file).expect("embedded file re-parses");
}

#[test]
fn classify_reports_ranks_black_box_and_roundtrip() {
    let o = run(&["classify", &fixture("z_transitive_example.bk")]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    assert!(text.contains("rank classes:"), "{text}");
    assert!(text.contains("black-box classes:"), "{text}");
    assert!(text.contains("ztbob"), "{text}");
    assert!(text.contains("round-trip: holds"), "{text}");
}

#[test]
fn transform_rejects_a_relation_that_is_not_z_transitive() {
    let o = run(&["transform", &fixture("biorder_example.bk"), "--target", "interval"]);
    assert_eq!(code(&o), 3);
    assert!(
        err(&o).contains("not z-transitive at (10, 00, 10)"),
        "{}",
        err(&o)
    );
}

#[test]
fn transform_emits_an_interval_file_with_its_pairs() {
    let o = run(&["transform", &fixture("z_transitive_example.bk"), "--target", "interval"]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    assert!(text.starts_with("# pairs: "), "{text}");
    let reparsed = ProblemFile::parse(&text).expect("output re-parses");
    let state = reparsed.state().expect("output is a valid state");
    assert_eq!(state.class().name(), "iob");
}

#[test]
fn transform_sphere_lists_the_system_of_spheres() {
    let gen = run(&[
        "random", "--atoms", "p,q", "--anchor", "p -> q", "--class", "tbob", "--seed", "11",
    ]);
    assert_eq!(code(&gen), 0);
    let path = scratch("sphere_base.bk", &out(&gen));

    let o = run(&["transform", path.to_str().unwrap(), "--target", "sphere"]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    assert!(text.contains("# sphere 0:"), "{text}");
    let reparsed = ProblemFile::parse(&text).expect("output re-parses");
    reparsed.state().expect("output is a valid state");

    let j = run(&["transform", path.to_str().unwrap(), "--target", "sphere", "--json"]);
    let v = json_of(&j);
    assert!(v["spheres"].as_array().is_some_and(|s| !s.is_empty()));
}

#[test]
fn transform_total_preorder_emits_the_rewritten_pairs() {
    let gen = run(&[
        "random", "--atoms", "p,q", "--anchor", "q", "--class", "tbob", "--seed", "4",
    ]);
    assert_eq!(code(&gen), 0);
    let path = scratch("preorder_base.bk", &out(&gen));

    let o = run(&["transform", path.to_str().unwrap(), "--target", "total-preorder", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert!(v["pairs"].as_array().is_some_and(|p| !p.is_empty()));
    ProblemFile::parse(v["file"].as_str().unwrap()).expect("embedded file re-parses");
}

#[test]
fn random_is_deterministic_per_seed_and_anchored() {
    let args = [
        "random", "--atoms", "p,q", "--anchor", "p -> q", "--class", "ztbob", "--seed", "7",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(out(&first), out(&second), "same seed, same file");

    let reparsed = ProblemFile::parse(&out(&first)).expect("output re-parses");
    let state = reparsed.state().expect("output is a valid state");
    let table = reparsed.table();
    let anchor = models(&parse_formula("p -> q", table).unwrap(), table);
    assert_eq!(*state.belief_models(), anchor, "the anchor formula names the belief set");
}
