mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use common::q;
use conedual::convex_sep::{verify_outcome, ExtVec, SeparationOutcome, SeparationWeights};
use conedual::extreal::ExtReal;
use conedual::functionals::{dominated_by_max, LinFun, SublinFun};
use num_rational::BigRational;
use serde_json::{json, Value};

fn run(args: &[&str], input: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_conedual"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str], input: Value) -> (i32, Value) {
    let (code, out) = run(args, &input.to_string());
    (code, serde_json::from_str(&out).unwrap())
}

fn rationals(v: &Value) -> Vec<BigRational> {
    serde_json::from_value::<Vec<ExtReal>>(v.clone())
        .unwrap()
        .into_iter()
        .map(|x| x.as_rational().unwrap().clone())
        .collect()
}

#[test]
fn sep_meets_v_example() {
    let (code, out) = run(&["sep"], r#"{"dim":2,"generators":[["3","0"],["0","3"]]}"#);
    assert_eq!(code, 2);
    assert_eq!(out.trim(), r#"{"error":"meets_v","witness":[[0,"1/2"],[1,"1/2"]]}"#);
}

#[test]
fn sep_weights_reverify() {
    let gens = json!([["1", "0"], ["1/2", "inf"], ["0", "1"]]);
    let (code, out) = run_json(&["sep"], json!({"dim": 2, "generators": gens}));
    assert_eq!(code, 0);
    assert_eq!(out["outcome"], "separated");
    assert_eq!(out["weights"], json!(["1", "0"]));
    let weights = SeparationWeights::new(rationals(&out["weights"])).unwrap();
    let gens: Vec<ExtVec> = serde_json::from_value(gens).unwrap();
    assert!(verify_outcome(&gens, 2, &SeparationOutcome::Separated(weights)));
}

#[test]
fn ss_recover_example() {
    let input = r#"{"poset":{"size":2,"leq":[[0,1]]},"coeffs":["1","2"]}"#;
    let (code, out) = run(&["ss-recover"], input);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"f":["1","2"]}"#);
    let (code, out) = run_json(&["ss-recover"], json!({"poset": {"size": 2, "leq": [[0, 1]]}, "coeffs": ["3", "inf"]}));
    assert_eq!((code, out), (0, json!({"f": ["3", "inf"]})));
    let (code, out) = run_json(&["ss-recover"], json!({"poset": {"size": 2, "leq": [[0, 1]]}, "coeffs": ["2", "1"]}));
    assert_eq!((code, out), (2, json!({"error": "not_lsc", "witness": [0, 1]})));
}

#[test]
fn interpolate_certificates_reverify() {
    let input = json!({
        "c_gens": [["2", "0"], ["0", "2"], ["1", "1"]],
        "clauses": [[0, 1], [2]],
        "phi": {"kind": "max", "branches": [["1", "1"]]},
    });
    let (code, out) = run_json(&["interpolate"], input.clone());
    assert_eq!(code, 0, "{out}");
    let gens: Vec<LinFun> = serde_json::from_value(input["c_gens"].clone()).unwrap();
    let phi = SublinFun::new(vec![LinFun::from_integers(&[1, 1])]).unwrap();
    for (clause, w) in [vec![0, 1], vec![2]].iter().zip(out["witnesses"].as_array().unwrap()) {
        let x: LinFun = serde_json::from_value(w["x"].clone()).unwrap();
        let a = rationals(&w["a"]);
        let members: Vec<LinFun> = clause.iter().map(|&i| gens[i].clone()).collect();
        assert_eq!(LinFun::combine(&a, &members), x);
        assert!(dominated_by_max(&x, &phi).unwrap().is_some());
    }
    assert_eq!(out["witnesses"][0]["a"], json!(["1/2", "1/2"]));
    assert_eq!(out["certificates"][0]["lambda"], json!(["1"]));

    let bad = json!({"c_gens": [["3", "3"]], "clauses": [[0]], "phi": {"kind": "lin", "coeffs": ["1", "1"]}});
    let (code, out) = run_json(&["interpolate"], bad);
    assert_eq!(code, 2);
    assert_eq!(out["error"], "precondition_violated");
    let y: ExtVec = serde_json::from_value(out["witness"].clone()).unwrap();
    let g = LinFun::from_integers(&[3, 3]);
    let h = LinFun::from_integers(&[1, 1]);
    assert!(g.eval(&y).unwrap() > h.eval(&y).unwrap());
}

#[test]
fn dominates_minkowski_spec_order() {
    let (code, out) = run_json(&["dominates"], json!({
        "phi": {"kind": "lin", "coeffs": ["1", "1"]},
        "psi": {"kind": "max", "branches": [["2", "0"], ["0", "2"]]},
    }));
    assert_eq!(code, 0);
    assert_eq!(out, json!({"result": "holds", "exact": true, "lambda": ["1/2", "1/2"]}));

    let (code, out) = run_json(&["dominates"], json!({
        "phi": {"kind": "lin", "coeffs": ["2", "2"]},
        "psi": {"kind": "lin", "coeffs": ["1", "1"]},
    }));
    assert_eq!((code, &out["result"]), (0, &json!("violated")));

    let (code, out) = run_json(&["minkowski"], json!({
        "open": {"blocks": [[["1", "0"], ["0", "1"]]]},
        "points": [["2", "3"], ["1/2", "inf"], ["0", "0"]],
    }));
    assert_eq!(code, 0);
    assert_eq!(out, json!({"values": ["2", "1/2", "0"], "contains": [true, false, false]}));

    let (code, out) = run_json(&["spec-order"], json!({
        "gens": [["1", "0"], ["1", "1"]], "y": ["1", "1"], "y2": ["2", "0"],
    }));
    assert_eq!((code, out), (0, json!({"leq": true, "violated_by": null})));
    let (_, out) = run_json(&["spec-order"], json!({
        "gens": [["1", "0"], ["0", "1"]], "y": ["1", "1"], "y2": ["2", "0"],
    }));
    assert_eq!(out, json!({"leq": false, "violated_by": 1}));
}

#[test]
fn mobius_both_directions() {
    let poset = json!({"size": 2, "leq": [[0, 1]]});
    let (code, out) = run_json(&["mobius"], json!({"poset": poset, "weights": ["3", "2"]}));
    assert_eq!(code, 0);
    assert_eq!(out, json!({"opens": [
        {"set": [], "value": "0"},
        {"set": [1], "value": "2"},
        {"set": [0, 1], "value": "5"},
    ]}));
    let (code, out) = run_json(&["mobius"], json!({"poset": poset, "opens": out["opens"]}));
    assert_eq!((code, out), (0, json!({"weights": ["3", "2"]})));
    let (code, out) = run_json(&["mobius"], json!({"poset": poset, "opens": [
        {"set": [1], "value": "3"}, {"set": [0, 1], "value": "2"},
    ]}));
    assert_eq!((code, &out["error"]), (2, &json!("not_a_valuation")));
    let (code, out) = run_json(&["mobius"], json!({"poset": poset, "opens": [
        {"set": [1], "value": "inf"}, {"set": [0, 1], "value": "inf"},
    ]}));
    assert_eq!((code, &out["error"]), (2, &json!("undefined_difference")));
}

#[test]
fn malformed_inputs_exit_one_with_path() {
    let (code, out) = run_json(&["sep"], json!({"dim": 2, "generators": [["1", "-2"]]}));
    assert_eq!(code, 1);
    assert_eq!(out["error"], "malformed_input");
    assert_eq!(out["path"], "generators[0][1]");
    let (code, _) = run(&["sep"], "{not json");
    assert_eq!(code, 1);
    let (code, out) = run_json(&["sep"], json!({"dim": 3, "generators": [["1", "2"]]}));
    assert_eq!((code, &out["error"]), (1, &json!("malformed_input")));
    let (code, out) = run_json(&["ss-recover"], json!({"poset": {"size": 20}, "coeffs": []}));
    assert_eq!((code, &out["path"]), (1, &json!("poset.size")));
    let (code, _) = run(&["no-such-command"], "");
    assert_eq!(code, 1);
    let (code, out) = run(&["check", "--suite", "nope"], "");
    assert_eq!(code, 1, "{out}");
}

#[test]
fn check_suite_reports_counts() {
    let (code, out) = run(&["check", "--suite", "extreal"], "");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["suites"][0]["checks"].as_u64().unwrap() > 1000);
    assert_eq!(v["suites"][0]["failed"], 0);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["check", "--suite", "separation", "--seed", "42"], "");
    let b = run(&["check", "--suite", "separation", "--seed", "42"], "");
    assert_eq!(a, b);
    let input = r#"{"dim":3,"generators":[["1","2","inf"],["1/3","0","5"],["4","4","0"]]}"#;
    assert_eq!(run(&["sep"], input), run(&["sep"], input));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("conedual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"{"dim":1,"generators":[["1/2"]]}"#).unwrap();
    let (code, stdout) = run(
        &["sep", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()],
        "",
    );
    assert_eq!((code, stdout.as_str()), (0, ""));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(written, json!({"outcome": "separated", "weights": ["1"]}));
    assert_eq!(rationals(&written["weights"]), vec![q(1, 1)]);
    std::fs::remove_dir_all(&dir).unwrap();
}
