use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
}

fn fatpoint(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fatpoint"))
        .args(args)
        .env_remove("FATPOINT_PRIME")
        .env_remove("FATPOINT_THREADS")
        .output()
        .expect("binary runs");
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).expect("utf8") }
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = fatpoint(&full);
    (r.code, serde_json::from_str(&r.stdout).expect("json report"))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("duration_ms");
    v
}

/// Compares against a pinned report; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let (_, v) = report(args);
    let actual = serde_json::to_string_pretty(&without_timing(v)).unwrap() + "\n";
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "report for {args:?} drifted from {name}");
}

#[test]
fn section_counts() {
    assert_eq!(fatpoint(&["dims", "h0-surface", "--d", "4", "--e", "5"]).stdout.lines().next(), Some("52"));
    assert_eq!(fatpoint(&["dims", "h0-curve", "--s", "1", "--t", "4", "--k", "6"]).stdout.lines().next(), Some("22"));
    let (code, v) = report(&["dims", "vdim", "--d", "4", "--e", "2", "--mults", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["vdim"], 0);
    assert_eq!(v["payload"]["h0"], 10);
}

#[test]
fn report_fields() {
    let (_, v) = report(&["dims", "h0-surface", "--d", "4", "--e", "5"]);
    for key in ["command", "version", "config", "rules", "verdict", "exit_code", "payload", "duration_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["verdict"], "verified");
    assert!(!v["rules"].as_array().unwrap().is_empty());
}

#[test]
fn classify_examples() {
    let (code, v) = report(&["classify", "--d", "2", "--e", "6", "--mults", "4^5"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["special"], true);
    let (_, v) = report(&["classify", "--d", "3", "--e", "2", "--mults", "4"]);
    assert_eq!((v["payload"]["special"].clone(), v["payload"]["dim"].clone()), (Value::Bool(true), Value::from(1)));
    let (_, v) = report(&["classify", "--d", "1", "--e", "9", "--mults", "3,2,2"]);
    assert_eq!(v["payload"]["special"], false);
}

#[test]
fn classify_routes_quartics_to_the_case_analysis() {
    let (code, v) = report(&["classify", "--d", "4", "--e", "2", "--mults", "4", "--expect", "special"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["outcome"], "complete");
    assert_eq!(v["payload"]["conclusion"]["dim"], 1);
}

#[test]
fn expectation_mismatch_exits_one() {
    assert_eq!(fatpoint(&["classify", "--d", "3", "--e", "2", "--mults", "4", "--expect", "nonspecial"]).code, 1);
    assert_eq!(fatpoint(&["classify", "--d", "4", "--e", "3", "--mults", "4^2", "--expect", "special"]).code, 1);
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(fatpoint(&["classify", "--d", "2"]).code, 3);
    assert_eq!(fatpoint(&["classify", "--d", "2", "--e", "3", "--mults", "4^x"]).code, 3);
    assert_eq!(fatpoint(&["nonsense"]).code, 3);
    assert_eq!(fatpoint(&["degen", "verify-theorem-b", "--d", "4", "--e", "6", "--mults", "4^3"]).code, 3);
    assert_eq!(fatpoint(&["degen", "verify-theorem-b", "--d", "5", "--e", "6", "--mults", "5", "--pad"]).code, 3);
    assert_eq!(fatpoint(&["--help"]).code, 0);
}

#[test]
fn budget_overrun_is_inconclusive() {
    let (code, v) = report(&["oracle", "--d", "4", "--e", "9", "--mults", "4", "--max-columns", "100"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "inconclusive");
}

#[test]
fn oracle_two_quadruple_points() {
    let (code, v) = report(&["oracle", "--d", "4", "--e", "3", "--mults", "4,4", "--prime2", "31013", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["observed_dim"], 0);
    assert_eq!(v["payload"]["certified"], "nonspecial-certified");
    assert_eq!(v["payload"]["trials"].as_array().unwrap().len(), 6);
}

#[test]
fn prime_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fatpoint"))
        .args(["--json", "oracle", "--d", "2", "--e", "2", "--mults", "2"])
        .env("FATPOINT_PRIME", "31013")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["oracle"]["p"], 31013);
    let (_, v) = report(&["oracle", "--d", "2", "--e", "2", "--mults", "2"]);
    assert_eq!(v["config"]["oracle"]["p"], 32003);
}

#[test]
fn payload_is_reproducible() {
    let args = ["oracle", "--d", "4", "--e", "2", "--mults", "4", "--seed", "11", "--prime2", "31013"];
    let (_, a) = report(&args);
    let (_, b) = report(&args);
    assert_eq!(serde_json::to_string(&a["payload"]).unwrap(), serde_json::to_string(&b["payload"]).unwrap());
}

#[test]
fn ledger_leaves_a_triple_point() {
    let (code, v) = report(&["degen", "ledger", "--thresholds", "4", "--queue", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["final_residuals"], serde_json::json!([{ "kind": "fat", "m": 3 }]));
}

#[test]
fn exhausted_ledger_is_inconclusive() {
    let (code, v) = report(&["degen", "ledger", "--thresholds", "1,8,16", "--queue", "4,4,4"]);
    assert_eq!(code, 2);
    assert_eq!(v["payload"]["partial"]["splits"].as_array().unwrap().len(), 2);
}

#[test]
fn cubic_table_text() {
    let r = fatpoint(&["enumerate-special", "--d", "3", "--emax", "8"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("L_2^3(4) [vdim 0, dim 1]"));
    let csv = fatpoint(&["enumerate-special", "--d", "3", "--emax", "8", "--csv"]).stdout;
    assert_eq!(csv, "d,e,mults,vdim,dim\n3,2,4,0,1\n");
    let quadric = fatpoint(&["enumerate-special", "--d", "2", "--emax", "8", "--csv"]).stdout;
    assert!(quadric.contains("2,6,\"4^4,2^3\",0,1\n"));
}

#[test]
fn inequality_check_for_quintics() {
    let (code, v) = report(&["check", "inequalities", "--d", "5", "--amax", "60", "--samples", "2000"]);
    assert_eq!(code, 0);
    let diffs: Vec<f64> = serde_json::from_value(v["payload"]["g_differences"].clone()).unwrap();
    for (x, want) in diffs.iter().zip([1.77, 1.91, 2.08]) {
        assert!((x - want).abs() <= 0.01);
    }
}

#[test]
fn delta_count_on_a_quartic() {
    let (code, v) = report(&["check", "delta", "--d", "4", "--e", "5", "--m", "9", "--n", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["conditions"], 51);
}

#[test]
fn golden_quadric_table() {
    golden("enumerate_d2.json", &["enumerate-special", "--d", "2", "--emax", "8", "--slack", "20"]);
}

#[test]
fn golden_cubic_table() {
    golden("enumerate_d3.json", &["enumerate-special", "--d", "3", "--emax", "8", "--slack", "20"]);
}

#[test]
fn golden_three_quadruple_ledger() {
    golden("ledger_4x3.json", &["degen", "ledger", "--thresholds", "1,8", "--queue", "4^3"]);
}

#[test]
fn golden_three_quadruple_trace() {
    golden("trace_quartic_4x3.json", &["degen", "verify-theorem-b", "--d", "4", "--e", "6", "--mults", "4^3", "--pad"]);
}
