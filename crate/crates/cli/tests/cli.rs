use std::io::Write;

use treefix_cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use treefix_core::dse::{solve, DseSpec};
use treefix_core::ptrees::{enumerate_by_leaves, Signature};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("treefix").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn solve_quadratic_prints_third_order() {
    let (code, out, _) = call(&["solve", "--spec", "quadratic", "--order", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "c_3 = 4*((())) + 1*(()())"), "{out}");
    assert_eq!(out, solve(&DseSpec::quadratic(3)).unwrap().to_string());
}

#[test]
fn enumerate_stable_four_leaves() {
    let (code, out, _) = call(&["enumerate", "--signature", "stable", "--by", "leaves", "--n", "4"]);
    assert_eq!(code, EXIT_OK);
    let expected: Vec<String> = enumerate_by_leaves(&Signature::stable(4), 4)
        .unwrap()
        .iter()
        .map(|t| t.code())
        .collect();
    assert_eq!(out.lines().collect::<Vec<_>>(), expected);
    assert_eq!(expected.len(), 11);
}

#[test]
fn check_coassociativity_line() {
    let (code, out, _) = call(&["check", "--law", "coassoc", "--degree", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "PASS (coassociativity, degree ≤ 4)\n");
}

#[test]
fn failing_check_exits_one_with_counterexamples() {
    let (code, out, _) = call(&["check", "--law", "op-cocycle", "--signature", "binary", "--bound", "1"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.starts_with("FAIL (operadic cocycle, nodes ≤ 1)"));
    assert!(out.contains("input: b(|,|)"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["solve", "--spec", "cubic"][..],
        &["solve", "--spec", "linear", "--order", "11"],
        &["enumerate", "--signature", "binary", "--n", "9"],
        &["enumerate", "--signature", "stable", "--by", "leaves", "--n", "11"],
        &["enumerate", "--signature", "list:3", "--by", "leaves", "--n", "2"],
        &["enumerate", "--signature", "stable:x", "--n", "2"],
        &["check", "--law", "coassoc"],
        &["frobnicate"],
        &["solve"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    let (_, _, err) = call(&["enumerate", "--signature", "binary", "--n", "9"]);
    assert!(err.contains("--n"), "{err}");
}

#[test]
fn spec_and_signature_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::File::create(&spec)
        .unwrap()
        .write_all(br#"{"terms": [{"alpha_power": 1, "coeff": 1, "x_power": 2}], "order": 3}"#)
        .unwrap();
    let (code, out, _) = call(&["solve", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("c_3 = 4*((())) + 1*(()())\n"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"terms": [{"alpha_power": 0, "coeff": 1, "x_power": 2}], "order": 3}"#).unwrap();
    let (code, _, err) = call(&["solve", "--spec", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("alpha_power"));

    let sig = dir.path().join("sig.json");
    std::fs::write(&sig, r#"{"ops": [{"name": "t", "arity": 3}]}"#).unwrap();
    let (code, out, _) = call(&["enumerate", "--signature", sig.to_str().unwrap(), "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.starts_with("t(")));
}

#[test]
fn census_and_green() {
    let (code, out, _) = call(&["census", "--signature", "stable", "--by", "leaves", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("(()): 2"));
    assert!(out.contains("total = 2*(()) + 1*()"));
    let (code, out, _) = call(&["green", "--signature", "binary", "--bound", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "g_1 = 1*|\ng_2 = 1*b(|,|)\ng_3 = 1*b(|,b(|,|)) + 1*b(b(|,|),|)\n"
    );
}

#[test]
fn fold_demos() {
    let (code, out, _) = call(&["fold-demo", "--demo", "nat", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "fold(|) = 0\nfold(s(|)) = 1\nfold(s(s(|))) = 2\n");
    let (_, out, _) = call(&["fold-demo", "--demo", "leaves", "--signature", "stable:3", "--n", "2"]);
    assert!(out.lines().all(|l| l.ends_with("= 3") || l.ends_with("= 4") || l.ends_with("= 5")));
}

#[test]
fn json_output_carries_same_numbers() {
    let (code, out, _) = call(&["--format", "json", "solve", "--spec", "quadratic", "--order", "3"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["series"]["coefficients"][3]["text"], "4*((())) + 1*(()())");
    let (_, out, _) = call(&["enumerate", "--signature", "comb", "--n", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["count"], 4);
    let (code, out, _) = call(&["check", "--law", "lambek", "--signature", "binary", "--bound", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["report"]["status"], "pass");
}
