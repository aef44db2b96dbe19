use std::process::Command;

use chebroot_cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("chebroot").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = call(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn newton_third_iterate() {
    let (code, out, _) = call(&["sqrt", "--x", "51", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("fraction: 49980001/6998600\n"), "{out}");
    assert!(out.contains("decimal: 7.141428428542851427428342811419\n"), "{out}");
}

#[test]
fn dyck_count_example() {
    let v = json(&["dyck", "--n", "4", "--h", "2"]);
    assert_eq!(v["value_fraction"], "8");
    let (_, out, _) = call(&["dyck", "--n", "4", "--h", "2"]);
    assert!(out.contains("fraction: 8\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["sqrt", "--x", "49", "--n", "1"]).0, 1);
    assert_eq!(call(&["sqrt", "--x=-3"]).0, 1);
    assert_eq!(call(&["sqrt", "--x", "abc"]).0, 2);
    assert_eq!(call(&["sqrt"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["sqrt", "--x", "51", "--form", "nonsense"]).0, 2);
    assert_eq!(call(&["sqrt", "--x", "51", "--d", "2", "--form", "factoredodd"]).0, 2);
    assert_eq!(call(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(call(&["sqrt", "--x", "51", "--d", "7", "--n", "7"]).0, 3);
    assert_eq!(call(&["sqrt", "--x", "51", "--n", "8", "--guard-bits", "64"]).0, 3);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn json_key_order_and_string_fields() {
    let (_, out, _) = call(&["sqrt", "--x", "51", "--n", "2", "--format", "json"]);
    let keys = ["\"method\"", "\"params\"", "\"value_fraction\"", "\"value_decimal\"", "\"trace\""];
    let pos: Vec<usize> = keys.iter().map(|k| out.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value_fraction"], "4999/700");
    for (_, p) in v["params"].as_object().unwrap() {
        assert!(p.is_string());
    }
}

fn all_leaves_are_strings(v: &Value) -> bool {
    match v {
        Value::String(_) => true,
        Value::Array(a) => a.iter().all(all_leaves_are_strings),
        Value::Object(o) => o.values().all(all_leaves_are_strings),
        _ => false,
    }
}

#[test]
fn trace_reports_order() {
    let v = json(&["trace", "--x", "51", "--d", "4", "--n", "3"]);
    assert!(all_leaves_are_strings(&v));
    assert_eq!(v["trace"].as_array().unwrap().len(), 4);
    assert_eq!(v["order"]["pair"], "1,2");
    let est: f64 = v["order"]["estimate"].as_str().unwrap().parse().unwrap();
    assert!((4.5..=5.5).contains(&est));
}

#[test]
fn trace_with_too_few_iterates_still_succeeds() {
    let v = json(&["trace", "--x", "51", "--n", "1"]);
    assert_eq!(v["order"]["estimate"], "unavailable");
}

#[test]
fn pth_root_trace_and_value() {
    let v = json(&["nthroot", "--x", "10", "--p", "3", "--d", "2", "--n", "2"]);
    assert_eq!(v["value_fraction"], "307496/142727");
    let t = json(&["trace", "--x", "10", "--p", "3", "--d", "1", "--n", "5"]);
    assert!(all_leaves_are_strings(&t));
    assert_eq!(t["trace"].as_array().unwrap().len(), 6);
}

#[test]
fn cosine_forms_match_the_exact_iterate() {
    let exact = json(&["sqrt", "--x", "51", "--d", "3", "--n", "2", "--digits", "40"]);
    let mono = json(&["sqrt", "--x", "51", "--d", "3", "--n", "2", "--digits", "40", "--form", "monomial"]);
    let a = exact["value_decimal"].as_str().unwrap();
    let b = mono["value_decimal"].as_str().unwrap();
    assert_eq!(a[..40], b[..40]);
    let newton = json(&["sqrt", "--x", "51", "--n", "3", "--form", "monomial"]);
    assert_eq!(newton["method"], "newton/Monomial");
    assert!(newton["value_decimal"].as_str().unwrap().starts_with("7.14142842854285142742834281"));
}

#[test]
fn series_table() {
    let v = json(&["series", "--family", "f", "--d", "3", "--terms", "4", "--x", "2"]);
    assert_eq!(v["value_fraction"], "15/112");
    let rows = v["trace"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["coefficient"], "1/2");
    let (code, out, _) = call(&["series", "--family", "g", "--d", "2", "--terms", "3", "--x", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("n/a"));
    assert_eq!(call(&["series", "--family", "h", "--d", "2", "--terms", "3", "--x", "2"]).0, 2);
}

#[test]
fn csv_output() {
    let (code, out, _) = call(&["dyck", "--n", "3", "--h", "1", "--enumerate", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "i,path\n0,UDUDUD\n");
    let (_, out, _) = call(&["sqrt", "--x", "51", "--n", "1", "--format", "csv"]);
    assert_eq!(out, "method,value_fraction,value_decimal\nnewton/Iterate,50/7,7.142857142857142857142857142857\n");
}

#[test]
fn verify_subset() {
    let (code, out, _) = call(&["verify", "--suite", "dyck,nthroot"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("127 passed, 0 failed\n"), "{out}");
    assert!(out.rfind(" nthroot ").unwrap() < out.find(" dyck ").unwrap());
}

#[test]
fn binary_default_verify_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_chebroot")).arg("verify").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with(" 0 failed\n"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_chebroot");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["sqrt", "--x", "51", "--n", "3"]), Some(0));
    assert_eq!(code(&["sqrt", "--x", "49", "--n", "1"]), Some(1));
    assert_eq!(code(&["sqrt", "--x", "51", "--bogus"]), Some(2));
    assert_eq!(code(&["sqrt", "--x", "51", "--d", "7", "--n", "7"]), Some(3));
}
