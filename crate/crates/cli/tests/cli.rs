use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chemtree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&o)));
    assert_eq!(v["schema_version"], "1", "{args:?}");
    (o.status.code().unwrap(), v)
}

#[test]
fn minimize_distance_at_five() {
    let o = run(&["minimize", "--order", "5", "--objective", "wio", "--rooted", "--method", "brute"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, v) = run_json(&["minimize", "--order", "5", "--objective", "wio", "--rooted", "--method", "brute"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["value"], 7.0);
    assert_eq!(v["members"][0], "O(C(C,C,C))");
}

#[test]
fn condition_report_for_basic_model() {
    let (code, v) = run_json(&["verify", "--check", "c-conditions", "--model", "basic"]);
    assert_eq!(code, 0);
    let c = &v["models"][0]["conditions"];
    for k in ["cond_23", "cond_22", "cond_33", "cond_23bis"] {
        assert_eq!(c[k], false, "{k}");
    }
    let (_, v) = run_json(&["verify", "--check", "c-conditions", "--model", "reg1"]);
    let c = &v["models"][0]["conditions"];
    assert_eq!(
        [&c["cond_23"], &c["cond_22"], &c["cond_33"], &c["cond_23bis"]],
        [&Value::Bool(false), &Value::Bool(true), &Value::Bool(true), &Value::Bool(true)]
    );
}

#[test]
fn index_values() {
    let o = run(&["index", "--tree", "O(C(C))", "--index", "wio"]);
    assert_eq!(stdout(&o).trim(), "3");
    let (_, v) = run_json(&["index", "--tree", "C(C,C,C,C)", "--index", "c"]);
    assert!((v["value"].as_f64().unwrap() - 33.015).abs() < 1e-9);
    let (_, v) = run_json(&["index", "--tree", "C(C(C(C)))", "--index", "c1", "--coeffs", "0,14.534,20.172,17.015"]);
    assert!((v["value"].as_f64().unwrap() - 29.068).abs() < 1e-9);
    let (_, v) = run_json(&["index", "--tree", "O(C(C,C))", "--index", "s3"]);
    assert_eq!(v["value"], 1);
}

#[test]
fn descriptors_and_prediction() {
    let (_, v) = run_json(&["descriptors", "--tree", "O(C(C,C,C))"]);
    assert_eq!(v["descriptors"]["wio"], 7);
    assert_eq!(v["descriptors"]["m2"], 16);
    let (_, v) = run_json(&["predict", "--model", "basic", "--tree", "O(C(C))"]);
    assert!((v["bp_celsius"].as_f64().unwrap() - 77.516).abs() < 5e-4);
}

#[test]
fn enumeration_output() {
    let o = run(&["enumerate", "--order", "7", "--rooted", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "17");
    let (_, v) = run_json(&["enumerate", "--order", "4"]);
    assert_eq!(v["count"], 2);
    assert_eq!(v["trees"].as_array().unwrap().len(), 2);
    let o = run(&["enumerate", "--order", "5", "--rooted"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn huffman_example() {
    let (code, v) = run_json(&["huffman", "--weights", "1,2,3,4,1,2", "--degrees", "1,1,1,1,3,3", "--trace"]);
    assert_eq!(code, 0);
    assert_eq!(v["vwwi"], 136.0);
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
    let (_, v) = run_json(&["huffman", "--weights", "1,1,1,1,1,1", "--degrees", "1,1,1,1,3,3", "--all"]);
    assert!(v["count"].as_u64().unwrap() >= 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["index", "--tree", "C(C)(C)", "--index", "m1"]).status.code(), Some(2));
    assert_eq!(run(&["index", "--tree", "C(C)", "--index", "m1", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["huffman", "--weights", "1,1", "--degrees", "1,1", "--trace", "--all"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["minimize", "--order", "9", "--objective", "bp0", "--method", "theory"]).status.code(),
        Some(3)
    );
    let (code, v) = run_json(&["minimize", "--order", "9", "--objective", "c0", "--method", "theory"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "precondition");
    // The audit reports the order-13 minimizer that is not extremely branched.
    let (code, v) = run_json(&["verify", "--check", "conjecture-bp0", "--orders", "13"]);
    assert_eq!(code, 4);
    assert_eq!(v["rows"][0]["all_extremely_branched"], false);
    let (code, _) = run_json(&["verify", "--check", "conjecture-bp0", "--orders", "4..8"]);
    assert_eq!(code, 0);
}

#[test]
fn verification_checks() {
    let (code, v) = run_json(&["verify", "--check", "majorization", "--trials", "200", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["seed"], 7);
    assert_eq!(v["passed"], true);
    let (code, _) = run_json(&["verify", "--check", "huffman-optimality", "--max-order", "7", "--trials", "50"]);
    assert_eq!(code, 0);
    let (code, _) = run_json(&["verify", "--check", "directed-identity", "--max-order", "7"]);
    assert_eq!(code, 0);
    let (code, _) = run_json(&["verify", "--check", "enumeration", "--max-order", "8"]);
    assert_eq!(code, 0);
    let (code, _) = run_json(&["verify", "--check", "degree-shift", "--max-order", "6", "--trials", "30"]);
    assert_eq!(code, 0);
    let (code, v) = run_json(&["verify", "--check", "epsilon-reduction", "--orders", "4..6"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let (code, _) = run_json(&["verify", "--check", "epsilon-reduction", "--orders", "7"]);
    assert_eq!(code, 4);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--check", "majorization", "--trials", "300", "--seed", "11"][..],
        &["--json", "verify", "--check", "huffman-optimality", "--max-order", "7", "--trials", "40", "--seed", "3"],
        &["--json", "minimize", "--order", "10", "--objective", "bp1", "--rooted"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn fit_and_stats_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    let model = dir.path().join("model.json");
    // Observations generated from the basic model over all rooted trees of order 6 and 7.
    let mut csv = String::from("name,skeleton,bp_celsius\n");
    for n in ["6", "7"] {
        let o = run(&["enumerate", "--order", n, "--rooted"]);
        for (i, line) in stdout(&o).lines().enumerate() {
            let (_, p) = run_json(&["predict", "--tree", line]);
            csv.push_str(&format!("t{n}_{i},{line},{}\n", p["bp_celsius"].as_f64().unwrap()));
        }
    }
    std::fs::write(&data, csv).unwrap();
    let (code, v) = run_json(&[
        "fit",
        "--data",
        data.to_str().unwrap(),
        "--active",
        "wio3,n2,n3,s2,m2",
        "--out",
        model.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!((v["model"]["b1"].as_f64().unwrap() - 12.233).abs() < 1e-6);
    assert!(v["training"]["sd"].as_f64().unwrap() < 1e-6);
    let (code, v) = run_json(&["stats", "--model", model.to_str().unwrap(), "--data", data.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((v["stats"]["correlation"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "name,skeleton,bp_celsius\nethanol,O(C(C),78.0\n").unwrap();
    let o = run(&["stats", "--model", "basic", "--data", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
