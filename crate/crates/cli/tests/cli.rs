//! End-to-end tests of the command-line surface: exit codes, golden-file
//! regressions, plan handling, and JSON round trips through the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fglforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file")
}

#[test]
fn koszul_output_matches_golden_bytes() {
    let out = run(&["koszul", "rost", "--n", "4", "--tor", "--syzygy-report", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("koszul_n4.json"));
}

#[test]
fn p_series_output_matches_golden_bytes() {
    let out = run(&["bp", "p-series", "--prime", "2", "--dimbound", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("p_series_p2_d6.json"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: passing check
    let ok = run(&["verify", "prop31", "--prime", "2", "--monomial", "1", "--dimbound", "6"]);
    assert_eq!(ok.status.code(), Some(0));
    // 2: configuration error names the problem
    let config = run(&["verify", "prop31", "--prime", "2", "--monomial", "3", "--dimbound", "5"]);
    assert_eq!(config.status.code(), Some(2));
    let err = String::from_utf8_lossy(&config.stderr);
    assert!(err.contains("truncation insufficient"), "stderr: {err}");
    // 2: bad prime
    let bad_prime = run(&["bp", "generators", "--prime", "4", "--dimbound", "6"]);
    assert_eq!(bad_prime.status.code(), Some(2));
    // 2: malformed element JSON
    let bad_json = run(&["bp", "member", "--element", "{oops", "--power", "1"]);
    assert_eq!(bad_json.status.code(), Some(2));
}

#[test]
fn element_json_round_trips_through_the_binary() {
    let st = run(&["ops", "steenrod", "--prime", "2", "--element", "v1", "--dimbound", "4"]);
    assert!(st.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&st)).unwrap();
    let value = doc["value"].to_string();
    // feed the emitted coefficient of t^{-1} back in as a member query
    let coeff = doc["value"]["coeffs"]["-1"].to_string();
    let member = run(&["bp", "member", "--element", &coeff, "--power", "1", "--dimbound", "4"]);
    assert!(member.status.success(), "member query on {value}");
    let answer: serde_json::Value = serde_json::from_str(&stdout(&member)).unwrap();
    assert_eq!(answer["member"], serde_json::Value::Bool(true));
}

#[test]
fn plan_file_runs_and_empty_plan_passes() {
    let dir = std::env::temp_dir();
    let empty = dir.join("fglforge-test-empty-plan.json");
    std::fs::write(&empty, r#"{"checks":[]}"#).unwrap();
    let out = run(&["verify", "all", "--plan", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pass"], serde_json::Value::Bool(true));
    assert_eq!(doc["results"].as_array().unwrap().len(), 0);

    let single = dir.join("fglforge-test-single-plan.json");
    std::fs::write(
        &single,
        r#"{"checks":[{"name":"eq1","prime":2,"dimBound":6}]}"#,
    )
    .unwrap();
    let out = run(&["verify", "all", "--plan", single.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["results"].as_array().unwrap().len(), 1);
    assert_eq!(doc["results"][0]["check"], "eq1[p=2,D=6]");
}

#[test]
fn prime_filter_restricts_the_suite() {
    let dir = std::env::temp_dir();
    let plan = dir.join("fglforge-test-two-prime-plan.json");
    std::fs::write(
        &plan,
        r#"{"checks":[
            {"name":"eq1","prime":2,"dimBound":6},
            {"name":"eq1","prime":3,"dimBound":6}
        ]}"#,
    )
    .unwrap();
    let out = run(&[
        "verify", "all", "--plan", plan.to_str().unwrap(), "--prime", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0]["check"], "eq1[p=3,D=6]");
}

#[test]
fn descent_runs_from_the_command_line() {
    let relation = r#"{
        "support": ["e0"],
        "codimR": 3,
        "filtrationM": 2,
        "coeffs": [{
            "alphabet": "v", "prime": 2, "dimBound": 8,
            "terms": [{"coeff": "2", "exps": {"2": 1}}]
        }]
    }"#;
    let out = run(&["koszul", "descent", "--prime", "2", "--n", "3", "--relation", relation]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pass"], serde_json::Value::Bool(true));
    assert_eq!(doc["congruence"], serde_json::Value::Bool(true));
}

#[test]
fn jobs_env_fallback_is_accepted() {
    let dir = std::env::temp_dir();
    let plan = dir.join("fglforge-test-env-plan.json");
    std::fs::write(&plan, r#"{"checks":[{"name":"eq1","prime":2,"dimBound":6}]}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fglforge"))
        .args(["verify", "all", "--plan", plan.to_str().unwrap()])
        .env("FGLFORGE_JOBS", "2")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}
