use std::io::Write as _;
use std::process::Command;

use serde_json::Value;
use tempfile::NamedTempFile;

const TRIANGLE: &str = "n 3\n1 2 1\n2 3 1\n1 3 1\n";
const PATH: &str = "# path 1-2-3\nn 3\n1 2 1\n2 3 1\n";

fn graph_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dampwalk").chain(args.iter().copied());
    let code = dampwalk_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn ratio_examples() {
    let tri = graph_file(TRIANGLE);
    let v = json(&["ratio", "--graph", tri.path().to_str().unwrap(), "--lambda", "1"]);
    assert!((v["ratio"].as_f64().unwrap() + 0.04).abs() < 1e-12);
    assert_eq!(v["c_lambda_sign"], -1);
    assert!((v["c_lambda_log"].as_f64().unwrap() - 50f64.ln()).abs() < 1e-12);

    let path = graph_file(PATH);
    let v = json(&["ratio", "--graph", path.path().to_str().unwrap(), "--lambda", "1"]);
    assert_eq!(v["ratio"].as_f64().unwrap(), 0.0);
    assert_eq!(v["c_minus_lambda_sign"], 0);
    assert!(v["c_minus_lambda_log"].is_null());

    let (code, _, err) = run(&["ratio", "--graph", path.path().to_str().unwrap(), "--lambda", "-1"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn estimate_schema_and_determinism() {
    let tri = graph_file(TRIANGLE);
    let p = tri.path().to_str().unwrap();
    let args = ["estimate", "--graph", p, "--lambda", "1", "--trials", "2e4", "--seed", "9", "--format", "json"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);

    let v: Value = serde_json::from_str(&first).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(
        keys,
        [
            "schema", "method", "lambda", "k", "trials", "mean", "std_error", "exact_ratio", "discrepancy",
            "bound_2_over_nc", "pass", "seed"
        ]
    );
    assert_eq!(v["schema"], 1);
    assert_eq!(v["method"], "product");
    assert_eq!(v["k"], 7);
    assert_eq!(v["trials"], 20_000);
    assert_eq!(v["seed"], 9);

    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "8"]);
    let (_, eight, _) = run(&threaded);
    let last = threaded.len() - 1;
    threaded[last] = "1";
    let (_, one, _) = run(&threaded);
    assert_eq!(one, eight);
    assert_eq!(one, first);
}

#[test]
fn estimate_options() {
    let tri = graph_file(TRIANGLE);
    let p = tri.path().to_str().unwrap();
    let v = json(&["estimate", "--graph", p, "--lambda", "1", "--trials", "100", "--k", "12"]);
    assert_eq!(v["k"], 12);
    let v = json(&["estimate", "--graph", p, "--lambda", "1", "--trials", "100", "--c", "2"]);
    assert!((v["bound_2_over_nc"].as_f64().unwrap() - 2.0 / 9.0).abs() < 1e-15);
    let (code, _, _) = run(&["estimate", "--graph", p, "--lambda", "1", "--c", "1", "--k", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["estimate", "--graph", p, "--lambda", "1", "--k", "1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["estimate", "--graph", p, "--lambda", "1", "--trials", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["estimate", "--graph", p, "--lambda", "1", "--method", "other"]);
    assert_eq!(code, 2);
}

#[test]
fn tree_sign_on_disconnected_graph() {
    let g = graph_file("n 4\n1 2 1\n3 4 2\n");
    let v = json(&[
        "estimate", "--graph", g.path().to_str().unwrap(), "--lambda", "1", "--method", "tree-sign", "--trials", "20000",
    ]);
    assert_eq!(v["method"], "tree-sign");
    assert!(v["k"].is_null());
    assert!(v["bound_2_over_nc"].is_null());
    // two disjoint edges: ratio (-1/3)^2
    assert!((v["exact_ratio"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-12);
    assert_eq!(v["pass"], true);
}

#[test]
fn csv_and_text_formats() {
    let tri = graph_file(TRIANGLE);
    let p = tri.path().to_str().unwrap();
    let (code, out, _) = run(&["estimate", "--graph", p, "--lambda", "1", "--trials", "50", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "schema,method,lambda,k,trials,mean,std_error,exact_ratio,discrepancy,bound_2_over_nc,pass,seed"
    );
    assert!(lines.next().unwrap().starts_with("1,product,1.0,7,50,"));
    let (_, out, _) = run(&["estimate", "--graph", p, "--lambda", "1", "--trials", "50"]);
    assert!(out.contains("mean"));
    assert!(!out.contains("schema"));
}

#[test]
fn scan_examples() {
    let path = graph_file(PATH);
    let v = json(&["scan", "--graph", path.path().to_str().unwrap()]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 100);
    let candidates = v["candidates"].as_array().unwrap();
    for target in [1.0, 2.0] {
        assert!(candidates.iter().any(|c| {
            c["source"] == "exact_sign_change"
                && c["lambda_lo"].as_f64().unwrap() <= target
                && target <= c["lambda_hi"].as_f64().unwrap()
        }));
    }

    let tri = graph_file(TRIANGLE);
    let v = json(&["scan", "--graph", tri.path().to_str().unwrap()]);
    let even: Vec<_> = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["source"] == "eigenvalue_even_multiplicity")
        .collect();
    assert_eq!(even.len(), 1);
    assert!((even[0]["lambda_lo"].as_f64().unwrap() - 1.5).abs() < 1e-6);

    let (code, out, _) = run(&["scan", "--graph", tri.path().to_str().unwrap(), "--format", "csv", "--steps", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "lambda,exact_ratio,estimate,std_error,sign_change,ci_straddles_zero");
    assert_eq!(out.lines().count(), 4);

    for bad in [["--steps", "1"], ["--lambda-min", "3"]] {
        let (code, _, _) = run(&["scan", "--graph", tri.path().to_str().unwrap(), bad[0], bad[1]]);
        assert_eq!(code, 2);
    }
}

#[test]
fn scan_with_estimates() {
    let path = graph_file(PATH);
    let v = json(&[
        "scan", "--graph", path.path().to_str().unwrap(), "--steps", "4", "--estimates", "--trials", "500",
    ]);
    assert_eq!(v["k"], 14);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["std_error"].is_f64()));
}

#[test]
fn verify_examples() {
    let tri = graph_file(TRIANGLE);
    let (code, out, err) = run(&["verify", "--graph", tri.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("FAIL"));

    let edges: String = (1..11).map(|i| format!("{i} {} 1\n", i + 1)).collect();
    let big = graph_file(&format!("n 11\n{edges}"));
    let (code, _, err) = run(&["verify", "--graph", big.path().to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");

    let (code, out, _) = run(&["verify", "--random", "4", "--count", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "graph,check,pass,detail");

    let (code, _, _) = run(&["verify"]);
    assert_eq!(code, 2);
}

#[test]
fn sample_tree_examples() {
    let path = graph_file(PATH);
    let v = json(&["sample-tree", "--graph", path.path().to_str().unwrap()]);
    assert_eq!(v["edges"], serde_json::json!([[1, 2, 1.0], [2, 3, 1.0]]));
    assert!(v["deg_infinity"].is_null());

    let tri = graph_file(TRIANGLE);
    let p = tri.path().to_str().unwrap();
    for seed in 0..20 {
        let s = seed.to_string();
        let v = json(&["sample-tree", "--graph", p, "--lambda", "1", "--seed", &s]);
        let edges = v["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 3);
        let spokes = edges.iter().filter(|e| e[1] == 4).count();
        assert!(spokes >= 1);
        assert_eq!(v["deg_infinity"], spokes);
        assert_eq!(v, json(&["sample-tree", "--graph", p, "--lambda", "1", "--seed", &s]));
    }

    let disconnected = graph_file("n 4\n1 2 1\n3 4 1\n");
    let (code, _, _) = run(&["sample-tree", "--graph", disconnected.path().to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn input_errors() {
    let (code, _, err) = run(&["ratio", "--graph", "/nonexistent/graph.txt", "--lambda", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));

    let bad = graph_file("n 3\n1 2 1\n1 2 2\n");
    let (code, _, err) = run(&["ratio", "--graph", bad.path().to_str().unwrap(), "--lambda", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("DAMPWALK_"));
}

#[test]
fn binary_exit_codes_and_env() {
    let bin = env!("CARGO_BIN_EXE_dampwalk");
    let tri = graph_file(TRIANGLE);
    let p = tri.path().to_str().unwrap();

    let status = Command::new(bin).args(["ratio", "--graph", p, "--lambda", "-1"]).status().unwrap();
    assert_eq!(status.code(), Some(2));

    let by_flag = Command::new(bin)
        .args(["sample-tree", "--graph", p, "--lambda", "1", "--seed", "5", "--format", "json"])
        .output()
        .unwrap();
    let by_env = Command::new(bin)
        .args(["sample-tree", "--lambda", "1"])
        .env("DAMPWALK_GRAPH", p)
        .env("DAMPWALK_SEED", "5")
        .env("DAMPWALK_FORMAT", "json")
        .output()
        .unwrap();
    assert!(by_flag.status.success());
    assert_eq!(by_flag.stdout, by_env.stdout);
}
