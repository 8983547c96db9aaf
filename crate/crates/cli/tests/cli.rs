//! End-to-end tests of the `knotkit` binary: subcommand output, exit
//! codes, environment-variable defaults, and JSON round-trips.

use assert_cmd::Command;
use predicates::prelude::*;

fn knotkit() -> Command {
    let mut cmd = Command::cargo_bin("knotkit").unwrap();
    // Isolate from the caller's environment.
    for var in [
        "KNOTKIT_FIELD",
        "KNOTKIT_CEILING_KH",
        "KNOTKIT_CEILING_BRACKET",
        "KNOTKIT_QA_BUDGET",
        "KNOTKIT_CORPUS",
        "KNOTKIT_INJECTED",
    ] {
        cmd.env_remove(var);
    }
    cmd
}

#[test]
fn invariants_of_corpus_trefoil() {
    knotkit()
        .args(["invariants", "3_1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("determinant:          3"))
        .stdout(predicate::str::contains("signature:            -2"))
        .stdout(predicate::str::contains("turaev genus (diag):  0"));
}

#[test]
fn invariants_of_generated_pretzel() {
    knotkit()
        .args(["invariants", "pretzel", "2", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("turaev genus (diag):  1"))
        .stdout(predicate::str::contains("signature:            -2"))
        .stdout(predicate::str::contains("s-invariant:          2"));
}

#[test]
fn invariants_of_bare_unknot() {
    knotkit()
        .args(["invariants", "PD[]"])
        .assert()
        .success()
        .stdout(predicate::str::contains("determinant:          1"))
        .stdout(predicate::str::contains("turaev genus (diag):  0"));
}

#[test]
fn invariants_json_round_trips() {
    let out = knotkit()
        .args(["invariants", "4_1", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["name"], "4_1");
    assert_eq!(value["det"], "5");
    assert_eq!(value["signature"], 0);
    assert_eq!(value["s"], 0);
    // parse ∘ emit = identity on the JSON value.
    let re = serde_json::to_string_pretty(&value).unwrap();
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&re).unwrap(),
        value
    );
}

#[test]
fn unknown_name_is_an_input_error() {
    knotkit()
        .args(["invariants", "no_such_knot"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("unknown input"));
}

#[test]
fn malformed_pd_is_an_input_error() {
    knotkit()
        .args(["invariants", "PD[X[1,2,3]]"])
        .assert()
        .code(2);
}

#[test]
fn khovanov_ceiling_flag_skips_s() {
    knotkit()
        .args(["invariants", "4_1", "--ceiling-kh", "0"])
        .assert()
        .success()
        .stdout(predicate::str::contains(
            "skipped s: 4 crossings exceed the Khovanov ceiling 0",
        ));
}

#[test]
fn khovanov_ceiling_env_var_matches_flag() {
    let via_flag = knotkit()
        .args(["invariants", "4_1", "--ceiling-kh", "0"])
        .output()
        .unwrap();
    let via_env = knotkit()
        .args(["invariants", "4_1"])
        .env("KNOTKIT_CEILING_KH", "0")
        .output()
        .unwrap();
    assert!(via_flag.status.success() && via_env.status.success());
    assert_eq!(via_flag.stdout, via_env.stdout);
}

#[test]
fn qa_check_certifies_the_figure_eight() {
    knotkit()
        .args(["qa-check", "4_1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("certificate verified"));
}

#[test]
fn qa_check_budget_exhaustion_exits_3() {
    knotkit()
        .args(["qa-check", "8_18", "--qa-budget", "2"])
        .assert()
        .code(3)
        .stdout(predicate::str::contains("NOT a negative answer"));
}

#[test]
fn reduce_prints_the_bookkeeping_trace() {
    knotkit()
        .args(["reduce", "6_2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("all negative"))
        .stdout(predicate::str::contains("s_A(D') = s_A(D) - #E(T+)"))
        .stdout(predicate::str::contains("holds"));
}

#[test]
fn reproduce_theorem_a_passes() {
    knotkit()
        .args(["reproduce", "theoremA"])
        .assert()
        .success()
        .stdout(predicate::str::contains("#^3 K(2,2): 3 <= g_T <= 3 -> g_T = 3: ok"));
}

#[test]
fn reproduce_genus_two_corpus_reports_skips() {
    knotkit()
        .args(["reproduce", "genus_two_corpus"])
        .assert()
        .success()
        .stdout(predicate::str::contains("11n95: skipped"))
        .stdout(predicate::str::contains("12n873: skipped"));
}

#[test]
fn reproduce_lemma_checks_sweeps_cleanly() {
    // −σ on every corpus knot; s only where it is cheap.
    knotkit()
        .args(["reproduce", "lemma_checks", "--ceiling-kh", "7"])
        .assert()
        .success()
        .stdout(predicate::str::contains("0 violations"));
}

#[test]
fn table_is_sorted_and_deterministic() {
    let run = || {
        let out = knotkit()
            .args(["table", "--ceiling-kh", "0"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run();
    assert_eq!(a, run());
    let names: Vec<&str> = a
        .lines()
        .skip(1)
        .filter_map(|l| l.split_whitespace().next())
        .collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 84);
}

#[test]
fn custom_corpus_file_with_bad_row_names_the_row() {
    let dir = std::env::temp_dir().join("knotkit_cli_test_corpus");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.csv");
    std::fs::write(
        &path,
        "name,pd,components,citations\nok,\"PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]\",1,none\nbad,\"PD[X[1,2,3]]\",1,none\n",
    )
    .unwrap();
    knotkit()
        .args(["invariants", "ok"])
        .arg("--corpus")
        .arg(&path)
        .assert()
        .code(2)
        .stderr(predicate::str::contains("row 3"));
}
