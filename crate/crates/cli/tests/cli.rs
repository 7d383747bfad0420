use std::path::PathBuf;
use std::process::{Command, Output};

const ROMAN_SIX: &str = "0,5,1,4,2,3\n1,0,2,5,3,4\n2,1,3,0,4,5\n3,2,4,1,5,0\n4,3,5,2,0,1\n5,4,0,3,1,2\n";
const VATICAN_PAIR_FIVE: &str = "0,1,3,4,2\n1,2,4,0,3\n2,3,0,1,4\n3,4,1,2,0\n4,0,2,3,1\n\
                                 0,4,2,1,3\n1,0,3,2,4\n2,1,4,3,0\n3,2,0,4,1\n4,3,1,0,2\n";

fn vatican(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vatican"))
        .args(args)
        .env_remove("VATICAN_NODE_BUDGET")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("vatican-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn sorted_lines(text: &str) -> Vec<String> {
    let mut v: Vec<String> = text
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_owned)
        .collect();
    v.sort();
    v
}

#[test]
fn walecki_design_is_the_roman_square() {
    let path = scratch("walecki.csv", "");
    let out = vatican(&["construct", "--method", "walecki", "--t", "6", "--design", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(sorted_lines(&csv), sorted_lines(ROMAN_SIX));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_reports_and_enforces_thresholds() {
    let right = scratch("right.csv", VATICAN_PAIR_FIVE);
    let out = vatican(&["verify", right.to_str().unwrap(), "--require-vatican"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["vatican"], true);

    let left = scratch("left.csv", ROMAN_SIX);
    let out = vatican(&["verify", left.to_str().unwrap(), "--require-k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["max_k"], 1);

    let empty = scratch("empty.csv", "");
    assert_eq!(vatican(&["verify", empty.to_str().unwrap()]).status.code(), Some(2));
    for p in [right, left, empty] {
        std::fs::remove_file(p).unwrap();
    }
}

#[test]
fn primitive_root_certificate_and_expansion() {
    let out = vatican(&["construct", "--method", "primitive-root", "--p", "11", "--rho", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(5,10,8,9)"), "{}", stdout(&out));

    let out = vatican(&["construct", "--method", "primitive-root", "--p", "11", "--rho", "8", "--expand", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = sorted_lines(&stdout(&out));
    assert!(rows.iter().filter(|r| r.split(',').count() == 11).count() >= 55);
}

#[test]
fn bad_parameters_are_usage_errors() {
    assert_eq!(vatican(&["construct", "--method", "prescott", "--t", "8"]).status.code(), Some(2));
    assert_eq!(vatican(&["construct", "--method", "primitive-root", "--p", "11", "--rho", "3"]).status.code(), Some(2));
    assert_eq!(vatican(&["tables", "9"]).status.code(), Some(2));
}

#[test]
fn triples_table_passes() {
    let out = vatican(&["tables", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 3);
}

#[test]
fn short_prime_list_keeps_its_rows_and_flags_the_sweep() {
    let out = vatican(&["tables", "list-1000"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 21, "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 1, "{text}");
}

#[test]
fn sweep_json_lines() {
    let out = vatican(&["sweep", "--p-min", "7", "--p-max", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[0], serde_json::json!({"p": 7, "ell": 2}));
    let p11 = rows.iter().find(|r| r["p"] == 11 && r["ell"] == 5).unwrap();
    assert_eq!(p11["best_k"], 10);

    let out = vatican(&["sweep", "--p-min", "5", "--p-max", "7", "--paper-format"]);
    let text = stdout(&out);
    assert!(text.contains("(2,4,3,4)") && text.contains("(2) (3)"), "{text}");
}

#[test]
fn search_exit_codes() {
    let found = vatican(&["search", "--group", "Z6", "--ell", "2", "--aut", "1->5", "--limit", "1"]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).contains("1 found"));

    let none = vatican(&["search", "--group", "Z9", "--ell", "3"]);
    assert_eq!(none.status.code(), Some(1));
    assert!(stdout(&none).contains("none exist (search complete)"));

    let truncated = Command::new(env!("CARGO_BIN_EXE_vatican"))
        .args(["search", "--group", "Z3xZ3", "--ell", "2"])
        .env("VATICAN_NODE_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(truncated.status.code(), Some(3));
    assert!(!stdout(&truncated).contains("none exist"));
}
