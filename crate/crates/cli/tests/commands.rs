use std::process::Command;

use interp_cli::{cmd_reproduce, default_fixtures_dir, parse_theta, parse_weights, CliError, Property};
use interp_core::ParameterSelector;

fn interp(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_interp")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    default_fixtures_dir().join(name).to_string_lossy().into_owned()
}

#[test]
fn score_writes_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let o = interp(&["score", "--scenario", &fixture("fig1.scn"), "--path", "DDDDD", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "step,explicability,legibility_C,predictability_remaining,deception,obfuscation");
    assert_eq!(rows.len(), 7);
    // before any step explicability is the explicit prior mass
    assert!(rows[1].starts_with("0,0.900000,"));
    for (i, r) in rows[1..].iter().enumerate() {
        assert!(r.starts_with(&format!("{i},")));
        assert_eq!(r.split(',').count(), 6);
    }
}

#[test]
fn completed_path_is_fully_predictable() {
    let o = interp(&["score", "--scenario", &fixture("study2b.scn"), "--path", "ULLU"]);
    assert!(o.status.success());
    let csv = String::from_utf8(o.stdout).unwrap();
    let last: Vec<&str> = csv.lines().last().unwrap().split(',').collect();
    assert_eq!(last[0], "4");
    assert_eq!(last[3], "1.000000");
}

#[test]
fn theta_and_true_model_select_columns() {
    let o = interp(&[
        "score",
        "--scenario",
        &fixture("study2a.scn"),
        "--path",
        "UU",
        "--theta",
        "goal=M",
        "--true-model",
        "mail",
    ]);
    assert!(o.status.success());
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("step,explicability,legibility_M,"));
    assert!(csv.contains("2,0.992281,0.496141,"));
}

#[test]
fn illegal_step_is_reported_with_its_index() {
    let o = interp(&["score", "--scenario", &fixture("fig1.scn"), "--path", "DDU"]);
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: invalid-action: illegal action at step 2"), "{err}");
}

#[test]
fn unknown_letter_is_an_invalid_action() {
    let o = interp(&["score", "--scenario", &fixture("fig1.scn"), "--path", "DX"]);
    assert!(!o.status.success());
    assert!(String::from_utf8(o.stderr).unwrap().contains("invalid-action"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scn");
    std::fs::write(
        &bad,
        "grid 3 1\nstart 0 0\nmoves right\nnorevisit true\n.?G\nmodel g goal=G beta=1\nm0 prior=0.1\npriors 0.9\n",
    )
    .unwrap();
    let o = interp(&["score", "--scenario", bad.to_str().unwrap(), "--path", "R"]);
    assert!(!o.status.success());
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error: parse: line 5"));
}

#[test]
fn plan_prints_trace_and_scores() {
    let o = interp(&[
        "plan",
        "--scenario",
        &fixture("study3b.scn"),
        "--true-model",
        "coffee",
        "--weights",
        "e=1,l=1",
        "--agg",
        "final",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("# trace=RUUUU value="), "{text}");
    assert_eq!(text.lines().count(), 1 + 1 + 6);
}

#[test]
fn plan_rejects_unknown_model_and_bad_weights() {
    let o = interp(&["plan", "--scenario", &fixture("fig1.scn"), "--true-model", "tea", "--weights", "e=1"]);
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error: usage:"));
    let o = interp(&["plan", "--scenario", &fixture("fig1.scn"), "--true-model", "coffee", "--weights", "e=0"]);
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error: invalid-objective:"));
    assert!(parse_weights("x=1").is_err());
    assert!(parse_weights("e=one").is_err());
}

#[test]
fn theta_parsing() {
    assert_eq!(parse_theta("goal=C").unwrap(), ParameterSelector::goal('C'));
    assert_eq!(parse_theta("beta=inf").unwrap(), ParameterSelector::beta(f64::INFINITY));
    assert_eq!(parse_theta("beta=2").unwrap(), ParameterSelector::beta(2.0));
    assert!(parse_theta("goal=cc").is_err());
    assert!(parse_theta("cost=1").is_err());
}

#[test]
fn reproduce_passes_on_shipped_fixtures() {
    for p in ["p1", "p2", "p3", "appendix"] {
        let o = interp(&["reproduce", "--property", p]);
        assert!(o.status.success());
        let text = String::from_utf8(o.stdout).unwrap();
        assert!(text.ends_with(&format!("{p} PASS\n")), "{text}");
    }
}

#[test]
fn missing_fixture_is_a_fixture_error() {
    let dir = tempfile::tempdir().unwrap();
    let e = cmd_reproduce(Property::P1, dir.path()).unwrap_err();
    assert!(matches!(e, CliError::Fixture(_)));
    let o = interp(&["reproduce", "--property", "appendix", "--fixtures", dir.path().to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error: fixture: missing fixture"));
}
