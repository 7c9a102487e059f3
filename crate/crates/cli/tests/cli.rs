use std::process::{Command, Output};

use serde_json::Value;

fn qcg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcg")).args(args).output().expect("run qcg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

const STRETCHED: [&str; 14] =
    ["cgc", "--q", "0.5", "--j1", "1/2", "--m1", "1/2", "--j2", "1/2", "--m2", "1/2", "--j", "1", "--m"];

#[test]
fn stretched_coefficient_is_one() {
    let mut a = STRETCHED.to_vec();
    a.push("1");
    let o = qcg(&a);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let (value, tag) = out.trim().split_once('\t').unwrap();
    assert_eq!(value.parse::<f64>().unwrap(), 1.0);
    assert!(value.starts_with("1.0000000000000000000000000000000000000000000000000"));
    assert_eq!(tag, "racah");
}

#[test]
fn selection_failure_prints_zero_and_reason() {
    let mut a = STRETCHED.to_vec();
    a.push("0");
    let o = qcg(&a);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "0\tselection: m ≠ m1+m2");
}

#[test]
fn verify_flag_appends_deviation() {
    let o = qcg(&["cgc", "--q", "0.7", "--j1", "3/2", "--m1", "-1/2", "--j2", "1", "--m2", "1", "--j", "3/2", "--m", "1/2", "--verify"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let dev = out.trim().rsplit_once("max_deviation=").unwrap().1;
    assert!(dev.parse::<f64>().unwrap() < 1e-40);
}

#[test]
fn table_for_two_spin_halves() {
    let o = qcg(&["table", "--j1", "1/2", "--j2", "1/2", "--checksums"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "j1,m1,j2,m2,j,m,value,q,precision,checksum");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows.iter().filter(|r| r[4] == "1").count(), 4);
    assert_eq!(rows.iter().filter(|r| r[4] == "0").count(), 2);
    for r in &rows {
        assert!((r[9].parse::<f64>().unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(r[7], "0.5");
    }
}

#[test]
fn csv_and_json_tables_agree() {
    let args = ["table", "--q", "1.3", "--j1", "1", "--j2", "3/2", "--precision", "40"];
    let csv_out = stdout(&qcg(&args));
    let mut j = args.to_vec();
    j.extend(["--format", "json"]);
    let doc = json(&qcg(&j));
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["config"]["command"], "table");
    assert_eq!(doc["config"]["spins"]["j2"], "3/2");
    assert_eq!(doc["config"]["precision"], 40);
    let rows = doc["rows"].as_array().unwrap();
    let csv_rows: Vec<&str> = csv_out.lines().skip(1).collect();
    assert_eq!(rows.len(), csv_rows.len());
    let cols = ["j1", "m1", "j2", "m2", "j", "m", "value", "q", "precision"];
    for (r, line) in rows.iter().zip(csv_rows) {
        for (c, field) in cols.iter().zip(line.split(',')) {
            assert_eq!(r[c].as_str().unwrap(), field);
        }
    }
    for s in doc["checksums"]["unitarity"].as_array().unwrap() {
        assert!((s["norm"].as_str().unwrap().parse::<f64>().unwrap() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn triangle_violating_filter_gives_header_only() {
    let o = qcg(&["table", "--j1", "1/2", "--j2", "1/2", "--j", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "j1,m1,j2,m2,j,m,value,q,precision\n");
}

#[test]
fn output_is_deterministic() {
    let a = ["table", "--q", "0.3", "--j1", "2", "--j2", "1", "--format", "json"];
    assert_eq!(qcg(&a).stdout, qcg(&a).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&qcg(&["table", "--j1", "4", "--j2", "1"])), 2);
    assert_eq!(code(&qcg(&["cgc", "--q", "0.5"])), 2);
    assert_eq!(code(&qcg(&["table", "--j1", "1/3", "--j2", "1"])), 2);
    assert_eq!(code(&qcg(&["table", "--q", "-1", "--j1", "1", "--j2", "1"])), 2);
    assert_eq!(code(&qcg(&["verify", "--suite", "nonsense"])), 2);
    assert_eq!(code(&qcg(&["frobnicate"])), 2);
}

#[test]
fn verify_hahn_group_only() {
    let o = qcg(&["verify", "--suite", "hahn", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    let rows = doc["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["group"] == "hahn" && r["pass"] == "true"));
    assert_eq!(doc["checksums"]["failed_suites"].as_array().unwrap().len(), 0);
}

#[test]
fn perturbation_is_detected() {
    let o = qcg(&["verify", "--suite", "projector", "--perturb", "1e-10"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("projector"));
}

#[test]
fn default_desk_run_passes() {
    let o = qcg(&["verify"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn limit_reports_convergence() {
    let o = qcg(&["limit", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    let rows = doc["rows"].as_array().unwrap();
    let pick = |name: &str| -> Vec<&Value> { rows.iter().filter(|r| r["quantity"] == name).collect() };
    let odd = pick("<1 0, 1 0 | 1 0>");
    assert_eq!(odd.len(), 5);
    assert_eq!(odd[0]["limit"], "0");
    let errs: Vec<f64> = odd.iter().map(|r| r["error"].as_str().unwrap().parse().unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]));
    let even = pick("<1 0, 1 0 | 2 0>");
    assert_eq!(even[0]["limit_formula"], "dixon");
    assert!(even[0]["limit"].as_str().unwrap().starts_with("8.16496580927726032732428024901963797"));
    let half = pick("[1/2]");
    let order: f64 = half[4]["order"].as_str().unwrap().parse().unwrap();
    assert!((order - 2.0).abs() < 0.01);
}

#[test]
fn hahn_table_shape() {
    let o = qcg(&["hahn", "--points", "5", "--alpha", "1", "--beta", "2", "--q", "0.9", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 25);
    let off: f64 = doc["checksums"]["orthogonality_max_offdiagonal"].as_str().unwrap().parse().unwrap();
    assert!(off < 1e-40);
    assert_eq!(code(&qcg(&["hahn", "--points", "3", "--alpha", "-1", "--beta", "0"])), 2);
}
