use std::process::{Command, Output};

use serde_json::Value;

fn mvop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvop")).args(args).output().expect("run mvop")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const AW_SD: &str = "q=1/3,t=1/2,t0=1,t1=1/5,t2=2/7,t3=-1/3";

#[test]
fn jacobi_poly_example() {
    let out = mvop(&["poly", "--family", "J", "--n", "1", "--params", "nu0=1,nu1=1/2", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let coeffs = v["monic"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs[0]["partition"], serde_json::json!([1]));
    assert_eq!(coeffs[0]["value"], "1");
    assert_eq!(coeffs[1]["partition"], serde_json::json!([0]));
    assert_eq!(coeffs[1]["value"], "2/5");
}

#[test]
fn zero_partition_is_the_unit_polynomial() {
    let out = mvop(&["poly", "--family", "W", "--n", "2", "--params", "nu=1/2,nu0=1,nu1=1,nu2=1,nu3=1", "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let coeffs = json(&out)["monic"]["coeffs"].clone();
    assert_eq!(coeffs, serde_json::json!([{ "partition": [0, 0], "value": "1" }]));
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["table", "norms", "--family", "AW", "--n", "2", "--params", AW_SD, "--lambda-max", "2,1"];
    let a = mvop(&args);
    let b = mvop(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn self_dual_recurrence_passes() {
    let out = mvop(&[
        "verify", "recurrence", "--family", "AW", "--n", "2", "--r", "2", "--lambda", "1,1", "--params", AW_SD,
        "--self-dual-params",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn violated_condition_is_a_math_error() {
    let params = "nu=1/3,nu0=1,nu1=2/3,nu2=1/2,nu3=3/2";
    let out = mvop(&["verify", "recurrence", "--family", "W", "--n", "2", "--r", "1", "--lambda", "1", "--params", params]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "condition_violated");
    let forced = mvop(&[
        "verify", "recurrence", "--family", "W", "--n", "1", "--r", "1", "--lambda", "2", "--params", "nu0=1,nu1=2/3,nu2=1/2,nu3=3/2",
        "--override-condition",
    ]);
    assert_eq!(forced.status.code(), Some(0));
    assert_eq!(json(&forced)["conditions"]["overridden"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mvop(&["poly", "--family", "X", "--n", "1", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(mvop(&["poly", "--family", "J", "--n", "1", "--params", "nu0=1/0", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(mvop(&["poly", "--family", "J", "--n", "1", "--params", "nu0=1,nu1=1", "--lambda", "1,1"]).status.code(), Some(2));
    assert_eq!(mvop(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mvop(&["suite", "--criterion", "9"]).status.code(), Some(2));
}

#[test]
fn eigenvalue_collision_is_reported_as_json() {
    let out = mvop(&["poly", "--family", "J", "--n", "1", "--params", "nu0=-1/2,nu1=-1/2", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "eigenvalue_collision");
}

#[test]
fn failed_verification_exits_1() {
    // the displayed d_w- of cH is off by (-1)^k
    let params = "nu=1/2,nu0p=1,nu1p=2/3+1/2i,nu0m=1/3,nu1m=2/3-1/2i";
    let out = mvop(&["verify", "diffeq", "--family", "CH", "--n", "2", "--params", params, "--self-dual-params"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn limits_csv() {
    let out = mvop(&["verify", "limits", "--family", "J", "--n", "1", "--params", "nu0=1,nu1=1/2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda,scale,discrepancy");
    assert_eq!(lines.len(), 1 + 3 * 4);
}

#[test]
fn norms_and_specialization_pass() {
    let norms = mvop(&["verify", "norms", "--family", "AW", "--n", "2", "--params", AW_SD, "--self-dual-params", "--lambda", "2,1"]);
    assert_eq!(norms.status.code(), Some(0));
    assert_eq!(json(&norms).as_array().unwrap().len(), 2);
    let spec = mvop(&["verify", "specialization", "--family", "J", "--n", "1", "--params", "nu0=1,nu1=1/2", "--lambda", "1"]);
    assert_eq!(spec.status.code(), Some(0));
}

#[test]
fn suite_runs_one_criterion() {
    let out = mvop(&["suite", "--criterion", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["criteria"][0]["name"], "commutativity");
    assert_eq!(v["criteria"][0]["sub_results"].as_array().unwrap().len(), 3);
}
