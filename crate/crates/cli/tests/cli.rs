use std::path::Path;
use std::process::{Command, Output};

use normord::coeff::int;
use normord::json::{self, BivarJson, MatrixJson};
use normord::verify::{TABLE_HOMOGRAPHY, TABLE_STIRLING, TABLE_TWO_ANNIHILATORS};

fn normord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normord"))
        .args(args)
        .env_remove("NORMORD_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Parses `stirling --format csv` output into rows without the index column.
fn csv_rows(text: &str) -> Vec<Vec<u64>> {
    text.lines().skip(1).map(|l| l.split(',').skip(1).map(|c| c.parse().unwrap()).collect()).collect()
}

fn expect_table(word: &str, n: &str, table: &[&[u64]]) {
    let o = normord(&["stirling", "--word", word, "--n", n, "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), table.len());
    for (row, expected) in rows.iter().zip(table) {
        assert_eq!(&row[..expected.len()], *expected);
        assert!(row[expected.len()..].iter().all(|&c| c == 0));
    }
}

#[test]
fn stirling_tables_from_the_command_line() {
    expect_table("a+ a", "6", &TABLE_STIRLING);
    expect_table("a+ a a+", "6", &TABLE_HOMOGRAPHY);
    expect_table("a+ a a a+ a+", "4", &TABLE_TWO_ANNIHILATORS);
}

#[test]
fn stirling_csv_layout() {
    let o = normord(&["stirling", "--word", "a+ a", "--n", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,0,1,2,3\n0,1,0,0,0\n1,0,1,0,0\n2,0,1,1,0\n3,0,1,3,1\n");
}

#[test]
fn default_order_is_eight() {
    let o = normord(&["stirling", "--word", "a+ a", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn homography_flow_json() {
    let o = normord(&["flow", "--field", "x^2", "--orders", "6", "4", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let grid = json::from_str::<BivarJson>(&stdout(&o)).unwrap().to_bivar().unwrap();
    for i in 0..=6 {
        for j in 0..=4 {
            let expected = i64::from(i >= 1 && j == i - 1);
            assert_eq!(grid.plain(i, j), &int(expected), "x^{i} lambda^{j}");
        }
    }
}

#[test]
fn correspondence_report() {
    let o = normord(&["correspond", "--op", "a+ a a+", "--n", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("g   = EGF[1, 1, 2, 6, 24, 120, 720]"), "{text}");
    assert!(text.contains("PASS"));

    let o = normord(&["correspond", "--op", "a", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two_with_offset() {
    let o = normord(&["correspond", "--op", "(a+)^2 a + a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("byte 9"), "{}", stderr(&o));
    let o = normord(&["stirling", "--word", "(a+ a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("byte 0"));
    let o = normord(&["stirling", "--word", "a+ a", "--n", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sheffer_check_exit_codes() {
    let o = normord(&["sheffer-check", "--word", "a+ a a+", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let o = normord(&["sheffer-check", "--word", "a+ a a a+ a+", "--n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"holds\": false"));
}

#[test]
fn json_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let p = dir.path().join("p.json");
    let m2 = dir.path().join("m2.json");
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let o = normord(&["riordan-build", "--phi", "0,1,2,3,4,5,6", "--n", "6", "--format", "json", "--output", &s(&m)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let matrix = json::from_str::<MatrixJson>(&std::fs::read_to_string(&m).unwrap()).unwrap();
    assert_eq!(matrix.entries[5][2], "80");
    assert_eq!(matrix.to_matrix().unwrap().get(6, 3), int(540));

    let o = normord(&["riordan-recover", "--matrix", &s(&m), "--format", "json", "--output", &s(&p)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = normord(&["riordan-build", "--pair", &s(&p), "--n", "6", "--format", "json", "--output", &s(&m2)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read(&m).unwrap(), std::fs::read(&m2).unwrap());
}

#[test]
fn polynomial_pair_arguments() {
    // column k of M(1 + x, x) is (1 + x) x^k
    let o = normord(&["riordan-build", "--g", "1 + x", "--phi", "x", "--convention", "ogf", "--n", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,0,1,2,3\n0,1,0,0,0\n1,1,1,0,0\n2,0,1,1,0\n3,0,0,1,1\n");
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_normord"))
        .args(["stirling", "--word", "a+ a", "--n", "2", "--format", "csv"])
        .env("NORMORD_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("stirling.csv")).unwrap();
    assert_eq!(written, "n,0,1,2\n0,1,0,0\n1,0,1,0\n2,0,1,1\n");
}

#[test]
fn io_errors_exit_three() {
    let o = normord(&["stirling", "--word", "a+ a", "--output", "/nonexistent-dir/x.txt"]);
    assert_eq!(o.status.code(), Some(3));
    let o = normord(&["riordan-recover", "--matrix", "/nonexistent-dir/m.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn csv_unavailable_is_a_usage_error() {
    let o = normord(&["correspond", "--op", "a+ a", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["correspond", "--op", "(a+)^2 a a+", "--n", "5", "--format", "json"];
    assert_eq!(normord(&args).stdout, normord(&args).stdout);
    let args = ["verify", "--criterion", "5", "--criterion", "7", "--format", "json"];
    let a = normord(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, normord(&args).stdout);
}

#[test]
fn group_action_routes_agree() {
    let by_op = normord(&["group-action", "--op", "a+ a a+", "--f", "x^2", "--orders", "6", "4", "--format", "json"]);
    let by_u = normord(&["group-action", "--u1", "x", "--u2", "x", "--f", "x^2", "--orders", "6", "4", "--format", "json"]);
    assert!(by_op.status.success(), "{}", stderr(&by_op));
    assert_eq!(by_op.stdout, by_u.stdout);
    let o = normord(&["group-action", "--u1", "x", "--u2", "x + x^2", "--f", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normal_order_output() {
    let o = normord(&["normal-order", "--word", "a a+"]);
    assert_eq!(stdout(&o).trim(), "N(a a+) = a+ a + 1");
    let o = normord(&["normal-order", "--word", "a+ a a+", "--format", "csv"]);
    assert_eq!(stdout(&o), "creators,annihilators,coeff\n2,1,1\n1,0,1\n");
}

#[test]
fn verify_subset_passes() {
    let o = normord(&["verify", "--criterion", "1", "--criterion", "2", "--criterion", "3", "--criterion", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("PASS")).count(), 4);
    let o = normord(&["verify", "--criterion", "11"]);
    assert_eq!(o.status.code(), Some(2));
}
