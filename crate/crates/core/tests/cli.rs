mod common;

use std::process::{Command, Output};

use common::data_file;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge-forge")).args(args).output().unwrap()
}

fn run_on(sub: &str, name: &str, extra: &[&str]) -> Output {
    let path = data_file(name);
    let mut args = vec![sub, "--matroid", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn info_uniform() {
    let o = run_on("info", "u34", &["--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("rank: 3"), "{s}");
    assert!(s.contains("coloops: none"));
    assert!(s.contains("|S_4| = 3"));
    let v = json(&run_on("info", "u34", &[]));
    assert_eq!(v["flat_counts_by_rank"], serde_json::json!([1, 4, 6, 1]));
}

#[test]
fn info_boolean() {
    let o = run_on("info", "b3", &["--format", "text"]);
    assert!(stdout(&o).contains("coloops: all"));
    assert_eq!(json(&run_on("info", "b3", &[]))["deletion_pairs"], serde_json::json!([]));
}

#[test]
fn malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"ground_size\": 3,\n \"flats\": [[1,]]}").unwrap();
    let o = run(&["info", "--matroid", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");

    let o = run(&["verify", "--matroid", common::data_dir().join("corrupt/u34.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("intersection-closure"));

    let o = run(&["info", "--matroid", "/nonexistent/m.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_tower_text() {
    let o = run_on("verify", "u34", &["--mode", "tower", "--element", "4", "--format", "text", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("k = 3"), "{s}");
    assert!(s.contains("PASS ortho-decomp τ_1"));
    assert!(s.contains("all checks passed"));
}

#[test]
fn verify_direct_json() {
    let v = json(&run_on("verify", "b4", &["--mode", "direct"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["mode"], "direct");
    assert_eq!(v["hilbert"], serde_json::json!([1, 11, 11, 1]));
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in ["poincare-duality", "hard-lefschetz", "hodge-riemann", "HR-signature", "HR-implies-HL"] {
        assert!(names.contains(&n), "{n} missing from {names:?}");
    }
}

#[test]
fn verify_rejects_bad_element() {
    assert_eq!(run_on("verify", "u34", &["--mode", "tower", "--element", "9"]).status.code(), Some(2));
    assert_eq!(run_on("verify", "b3", &["--mode", "tower", "--element", "1"]).status.code(), Some(2));
    assert_eq!(run_on("verify", "u34", &["--steps", "0"]).status.code(), Some(2));
}

#[test]
fn witness_files() {
    let dir = tempfile::tempdir().unwrap();
    // f(S) = |S|(4 − |S|) on the flats of U(2,4): strictly convex.
    let good = dir.path().join("good.json");
    let values: Vec<String> = (1..=4).map(|e| format!("{{\"flat\": [{e}], \"value\": \"3/1\"}}")).collect();
    std::fs::write(&good, format!("{{\"values\": [{}]}}", values.join(", "))).unwrap();
    let o = run_on("verify", "u24", &["--witness", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let flat = dir.path().join("flat.json");
    let values: Vec<String> = (1..=4).map(|e| format!("{{\"flat\": [{e}], \"value\": \"0\"}}")).collect();
    std::fs::write(&flat, format!("{{\"values\": [{}]}}", values.join(", "))).unwrap();
    let o = run_on("verify", "u24", &["--witness", flat.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL convexity"));

    let partial = dir.path().join("partial.json");
    std::fs::write(&partial, "{\"values\": [{\"flat\": [1], \"value\": \"1\"}]}").unwrap();
    assert_eq!(run_on("verify", "u24", &["--witness", partial.to_str().unwrap()]).status.code(), Some(2));

    let cubic = run_on("verify", "u34", &["--witness", "cubic", "--mode", "tower", "--steps", "2"]);
    assert_eq!(cubic.status.code(), Some(0));
}

#[test]
fn fan_dump() {
    let v = json(&run_on("fan", "u23", &[]));
    assert_eq!(v["rays"].as_array().unwrap().len(), 3);
    assert_eq!(v["rays"][2], serde_json::json!(["-1/1", "-1/1"]));
    assert_eq!(v["max_cones"], serde_json::json!([[0], [1], [2]]));
}

#[test]
fn chow_report() {
    let v = json(&run_on("chow", "b3", &[]));
    assert_eq!(v["hilbert"], serde_json::json!([1, 4, 1]));
    assert_eq!(v["basis"][0], serde_json::json!(["1"]));
    assert_eq!(v["basis"][1].as_array().unwrap().len(), 4);
}

#[test]
fn tower_dump() {
    let v = json(&run_on("tower", "u34", &["--element", "4"]));
    assert_eq!(v["subdivisions"], 3);
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    assert_eq!(v["projection"].as_array().unwrap().len(), 2);
    assert_eq!(v["projection"][0].as_array().unwrap().len(), 3);
    assert_eq!(run_on("tower", "b3", &[]).status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "3"] {
        let p = dir.path().join(format!("r{jobs}.json"));
        let o = run_on("verify", "u34", &["--mode", "tower", "--steps", "3", "--jobs", jobs, "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        outputs.push(std::fs::read(&p).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    for sub in ["fan", "chow", "tower"] {
        assert_eq!(run_on(sub, "u34", &["--jobs", "1"]).stdout, run_on(sub, "u34", &["--jobs", "4"]).stdout);
    }
}

#[test]
fn help_and_version() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(2));
}
