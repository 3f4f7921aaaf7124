use std::process::Command;

use num_bigint::BigInt;
use pstiefel::cli::report::Report;
use pstiefel::cli::verify::VerifyOptions;
use pstiefel::cli::{run, run_with};
use pstiefel::WeightTuple;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["pstiefel"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Report {
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let (code, out, err) = call(&with_json);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn cohomology_json_example() {
    let r = json(&["cohomology", "--n", "4", "--k", "2", "--weights", "1,1", "--prime", "3"]);
    assert_eq!(r.command, "cohomology");
    assert_eq!(r.result["N"], "3");
    assert_eq!(r.result["relation"], "x^3");
    assert_eq!(r.result["exterior_degrees"], serde_json::json!(["7"]));
    assert_eq!(r.params["prime"], "3");
}

#[test]
fn mod2_cohomology() {
    let r = json(&["cohomology", "--n", "4", "--weights", "1,2", "--prime", "2"]);
    assert_eq!(r.result["square_relations"], true);
    let (code, _, err) = call(&["cohomology", "--n", "4", "--weights", "1,1,1", "--prime", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("p = 2"));
}

#[test]
fn span_text_example() {
    let (code, out, _) = call(&["span", "--n", "7", "--weights", "1,2", "--prime", "7"]);
    assert_eq!(code, 0);
    assert_eq!(out, "span ≤ 19, certificate p=7 i=2 witness 1\n");
}

#[test]
fn span_sweep_reports_every_certificate() {
    let r = json(&["span", "--n", "21", "--weights", "2,1", "--prime-bound", "7"]);
    let primes: Vec<&str> = r.certificates.iter().map(|c| c.prime.as_str()).collect();
    assert_eq!(primes, ["3", "5", "7"]);
    assert!(r.certificates.iter().all(|c| c.basis == "direct-series" && c.kind == "span"));
    assert_eq!(r.result["span_bound"], "61");
    let seven = &r.certificates[2];
    assert_eq!((seven.index.as_str(), seven.bound.as_str()), ("6", "67"));

    let default = json(&["span", "--n", "7", "--weights", "1,2"]);
    assert_eq!(default.params["prime_bound"], "28");
}

#[test]
fn no_certificate_is_an_answer() {
    let (code, out, _) = call(&["span", "--n", "3", "--weights", "1,-1"]);
    assert_eq!((code, out.as_str()), (0, "no span certificate\n"));
    let r = json(&["immersion", "--n", "3", "--weights", "1,-1", "--prime", "3"]);
    assert!(r.certificates.is_empty());
    assert!(r.result["non_immersion_dim"].is_null());
}

#[test]
fn immersion_reports_both_dimensions() {
    let r = json(&["immersion", "--n", "8", "--weights", "1,8", "--prime", "7"]);
    let c = &r.certificates[0];
    assert_eq!((c.index.as_str(), c.witness.as_str(), c.bound.as_str()), ("3", "4", "32"));
    assert_eq!(c.claimed_bound.as_deref(), Some("33"));
    assert!(!r.diagnostics.is_empty());
}

#[test]
fn check_claims_discrepancy_exits_zero() {
    let r = json(&["check-claims", "--n", "21", "--weights", "2,1"]);
    let part2 = r
        .claim_checks
        .iter()
        .find(|c| c.claim == "span-part-2" && c.prime == "7")
        .unwrap();
    assert_eq!(part2.verdict, "DISCREPANT");
    assert_eq!(part2.coefficient.as_deref(), Some("0"));
    assert_eq!(part2.class_survives, Some(true));

    let r = json(&["check-claims", "--n", "7", "--weights", "1,4"]);
    let imm = r.claim_checks.iter().find(|c| c.claim == "immersion").unwrap();
    assert_eq!((imm.prime.as_str(), imm.verdict.as_str()), ("3", "DISCREPANT"));

    let r = json(&["check-claims", "--n", "5", "--weights", "1,6"]);
    assert!(r.claim_checks.is_empty());
    assert!(!r.diagnostics.is_empty());
}

#[test]
fn complement_and_lens() {
    let r = json(&["complement", "--n", "3", "--weights", "1,-1"]);
    assert_eq!((r.result["lower_bound"].as_str(), r.result["achievable"].as_str()), (Some("2"), Some("2")));
    assert_eq!(r.result["achievable_reason"]["tag"], "top_class_vanishes");

    let r = json(&["lens", "--d", "3", "--m", "7", "--weights", "1,2"]);
    assert_eq!(r.result["lower_bound"], "3");
    assert_eq!(r.result["reason"]["phi"], "15");

    let r = json(&["lens", "--d", "2", "--m", "2", "--weights", "1,3"]);
    assert_eq!(r.result["sq2_criterion"]["satisfied"], false);
    assert!(r.diagnostics[0].contains("odd"));
}

#[test]
fn chern_and_pontrjagin_series() {
    let r = json(&["chern", "--n", "3", "--weights", "1,2"]);
    assert_eq!(r.result["complement"]["coefficients"], serde_json::json!(["1", "-3", "7", "-15"]));
    assert_eq!(r.result["h"], serde_json::json!(["1", "3", "7", "15"]));

    let r = json(&["pontrjagin", "--n", "7", "--weights", "1,2", "--modulus", "7"]);
    assert_eq!(r.result["tangent"]["coefficients"], serde_json::json!(["1", "0", "1", "0", "1", "0", "1"]));
    assert_eq!(r.result["normal"]["display"], "1 + 6x^2 + O(x^7)");
}

#[test]
fn big_numbers_survive_as_strings() {
    let r = json(&["chern", "--n", "3", "--weights", "1,100000000000000000000", "--truncation", "3"]);
    let c2: BigInt = r.result["complement"]["coefficients"][2].as_str().unwrap().parse().unwrap();
    let l: BigInt = "100000000000000000000".parse().unwrap();
    assert_eq!(c2, &l * &l + &l + 1);
}

#[test]
fn invalid_input_exits_one() {
    let (code, out, err) = call(&["cohomology", "--n", "4", "--k", "2", "--weights", "2,4", "--prime", "3"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("weights not primitive"));

    for args in [
        &["cohomology", "--n", "4", "--weights", "1,1", "--prime", "4"][..],
        &["span", "--n", "7", "--weights", "1,2", "--prime", "2"],
        &["span", "--n", "7", "--weights", "1,2,3", "--prime", "7"],
        &["lens", "--d", "3", "--m", "1", "--weights", "1,2"],
        &["pontrjagin", "--n", "3", "--weights", "1,2", "--modulus", "1"],
        &["cohomology", "--n", "1", "--weights", "1,1", "--prime", "3"],
    ] {
        assert_eq!(call(args).0, 1, "{args:?}");
    }
}

#[test]
fn malformed_flags_print_usage() {
    for args in [
        &["span", "--n", "x", "--weights", "1,2"][..],
        &["span", "--weights", "1,2"],
        &["frobnicate"],
        &["span", "--n", "7", "--weights", "1,2", "--prime", "7", "--prime-bound", "9"],
        &[],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty());
        assert!(err.contains("Usage"), "{args:?}: {err}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["span", "--n", "21", "--weights", "2,1", "--json"][..],
        &["immersion", "--n", "15", "--weights", "1,3", "--json"],
        &["verify", "--quick"],
    ] {
        assert_eq!(call(args), call(args));
    }
}

#[test]
fn reports_round_trip() {
    for args in [
        &["cohomology", "--n", "9", "--weights", "1,-2,3", "--prime", "5"][..],
        &["span", "--n", "21", "--weights", "2,1"],
        &["immersion", "--n", "8", "--weights", "1,8"],
        &["check-claims", "--n", "21", "--weights", "2,1"],
        &["lens", "--d", "4", "--m", "6", "--weights", "1,-1"],
        &["verify", "--quick"],
    ] {
        let r = json(args);
        let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(again, r);
    }
}

#[test]
fn verify_quick_passes() {
    let (code, out, _) = call(&["verify", "--quick"]);
    assert_eq!(code, 0);
    for name in pstiefel::cli::verify::suite_names() {
        assert!(out.contains(name), "{name} missing");
    }
    assert!(!out.contains("FAIL"));
}

fn flipped_recurrence(ell: &WeightTuple, r: usize) -> BigInt {
    let mut table = vec![BigInt::from(0); r + 1];
    table[0] = BigInt::from(1);
    for l in ell.weights() {
        for i in 1..=r {
            let prev = table[i - 1].clone();
            table[i] -= l * prev;
        }
    }
    table[r].clone()
}

#[test]
fn verify_catches_injected_fault() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&["pstiefel", "verify", "--quick"], &mut out, &mut err, |quick| VerifyOptions {
        quick,
        h_impl: flipped_recurrence,
    });
    assert_eq!(code, 2);
    let err = String::from_utf8(err).unwrap();
    assert!(err.contains("counterexample in symmetric-sums: h("), "{err}");
    assert!(String::from_utf8(out).unwrap().contains("FAIL"));
}

#[test]
fn binary_matches_library_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_pstiefel"))
        .args(["span", "--n", "7", "--weights", "1,2", "--prime", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "span ≤ 19, certificate p=7 i=2 witness 1\n");

    let out = Command::new(env!("CARGO_BIN_EXE_pstiefel"))
        .args(["cohomology", "--n", "4", "--weights", "2,4", "--prime", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = Command::new(env!("CARGO_BIN_EXE_pstiefel")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
