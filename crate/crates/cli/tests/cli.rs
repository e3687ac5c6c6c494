use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn grl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grl"))
        .args(args)
        .env_remove("GRL_MAX_EXHAUSTIVE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn construct_thin_reproduces_the_bundled_groupoid() {
    let out = grl(&["construct", "thin", "--objects", "2"]);
    assert!(out.status.success());
    let bundled = std::fs::read_to_string(fixture("g2.json")).unwrap();
    let v = json(&out);
    let b: Value = serde_json::from_str(&bundled).unwrap();
    // The bundled file carries names; the tables agree.
    for key in ["objects", "morphisms", "dom", "cod", "compose", "inverse"] {
        assert_eq!(v[key], b[key], "{key}");
    }
}

#[test]
fn construct_theorem5_writes_fixture_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let algebra = dir.path().join("witness.json");
    let report = dir.path().join("report.json");
    let out = grl(&[
        "construct",
        "theorem5",
        "--groupoid",
        &fixture("g2.json"),
        "--field",
        "gf2",
        "--report",
        report.to_str().unwrap(),
        "--out",
        algebra.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["strongly_graded"], true);
    assert_eq!(r["non_free_witness_present"], true);
    assert_eq!(r["components"][0]["section"], serde_json::json!([1, 2, 3, 0, 0]));

    let v = grl(&["validate", algebra.to_str().unwrap()]);
    assert!(v.status.success());
    assert_eq!(json(&v)["valid"], true);
}

#[test]
fn empty_section_is_an_error() {
    let out = grl(&["construct", "matrix-graded", "--groupoid", &fixture("g2.json"), "--section"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("section"));
}

#[test]
fn analyze_center_gives_two_equal_bases() {
    let out = grl(&["analyze", &fixture("rex-q.json"), "--reports", "center,strong"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["strong"]["strongly_graded"], true);
    assert_eq!(v["center"]["equal"], true);
    assert_eq!(v["center"]["center_direct"]["dim"], 2);
    assert_eq!(v["center"]["center_direct"], v["center"]["center_via_sigma"]);
    assert_eq!(
        v["center"]["center_direct"]["rendered"],
        serde_json::json!(["e11 + e22", "e33 + e44 + e55"])
    );
}

#[test]
fn analyze_broken_fixture_lists_violations() {
    let out = grl(&["analyze", &fixture("broken-rex-q.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["grading"]["valid"], false);
    assert!(!v["grading"]["algebra"]["axioms"].as_array().unwrap().is_empty());
}

#[test]
fn check_theorem3_exhaustive_on_rex_gf2() {
    let out = grl(&["check", "t3", &fixture("rex-gf2.json"), "--mode", "exhaustive"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["instances_checked"], 8191);
}

#[test]
fn check_theorem4_both_branches() {
    let swap = json(&grl(&["check", "t4", &fixture("skew-swap-gf2.json")]));
    assert_eq!(swap["passed"], true);
    assert_eq!(swap["report"]["maximal_commutative"], true);
    assert_eq!(swap["report"]["all_ideals_meet"], true);

    let out = grl(&["check", "t4", &fixture("groupalg-gf2.json")]);
    assert!(out.status.success());
    let trivial = json(&out);
    assert_eq!(trivial["report"]["maximal_commutative"], false);
    assert_eq!(trivial["report"]["separating_ideal"]["intersection_dim"], 0);
}

#[test]
fn hypothesis_failures_exit_with_two() {
    let out = grl(&["check", "corollary", &fixture("kz2-gf2.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = grl(&["check", "t2", &fixture("crossed-degenerate-q.json"), "--mode", "sampled", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sampled_mode_needs_a_seed_and_is_reproducible() {
    let no_seed = grl(&["check", "t3", &fixture("rex-q.json"), "--mode", "sampled"]);
    assert_eq!(no_seed.status.code(), Some(1));
    let args = ["check", "t3", &fixture("rex-q.json"), "--mode", "sampled", "--trials", "16", "--seed", "9"];
    let (a, b) = (grl(&args), grl(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exhaustive_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_grl"))
        .args(["check", "t3", &fixture("rex-gf2.json")])
        .env("GRL_MAX_EXHAUSTIVE", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn validate_accepts_every_bundled_fixture_but_the_broken_one() {
    for name in [
        "g2.json",
        "z2.json",
        "rex-q.json",
        "rex-gf2.json",
        "kz2-q.json",
        "kz2-gf2.json",
        "skew-swap-gf2.json",
        "groupalg-gf2.json",
        "crossed-twist-q.json",
        "crossed-degenerate-q.json",
    ] {
        let out = grl(&["validate", &fixture(name)]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
    assert_eq!(grl(&["validate", &fixture("broken-rex-q.json")]).status.code(), Some(1));
}

#[test]
fn text_format_renders_leaves() {
    let out = grl(&["--format", "text", "analyze", &fixture("kz2-q.json"), "--reports", "strong"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "strong.failure: null\nstrong.strongly_graded: true\n");
}

#[test]
fn usage_errors_do_not_look_like_hypothesis_failures() {
    assert_eq!(grl(&["check", "t9", &fixture("rex-q.json")]).status.code(), Some(1));
    assert_eq!(grl(&["--help"]).status.code(), Some(0));
}
