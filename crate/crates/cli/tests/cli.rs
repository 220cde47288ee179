use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_brute_and_series_agree() {
    let brute = stdout(&[
        "count",
        "--basis",
        "4213,2143",
        "--n",
        "7",
        "--method",
        "brute",
    ]);
    assert_eq!(brute.trim(), "1 2 6 22 88 366 1556");
    let series = stdout(&[
        "count",
        "--basis",
        "4213,2143",
        "--n",
        "7",
        "--method",
        "series",
    ]);
    assert_eq!(brute, series);
    let h = stdout(&[
        "count",
        "--basis",
        "2143,2413,4213",
        "--n",
        "6",
        "--method",
        "series",
    ]);
    assert_eq!(h.trim(), "1 2 6 21 79 311");
}

#[test]
fn count_json() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "count", "--n", "4"])).unwrap();
    assert_eq!(v["counts"], serde_json::json!(["1", "2", "6", "22"]));
    assert_eq!(v["method"], "brute");
}

#[test]
fn series_counts_need_a_known_basis() {
    let out = run(&["count", "--basis", "123", "--n", "5", "--method", "series"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn grid_small_example() {
    let text = stdout(&["grid", "--perm", "2 4 1 3"]);
    assert!(text.contains("c=1 r=4"));
    assert!(text.contains("left={2}"));
    assert!(text.contains("top={}"));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["grid", "--perm", "2 4 1 3", "--json"])).unwrap();
    assert_eq!(v["c"], 1);
    assert_eq!(v["left_values"], serde_json::json!([2]));
    assert_eq!(
        v["trees"],
        serde_json::json!([[2, 4, []], [3, 1, [[4, 3, []]]]])
    );
}

#[test]
fn grid_rejects_non_members() {
    assert_eq!(run(&["grid", "--perm", "2 1 4 3"]).status.code(), Some(1));
    assert_eq!(
        run(&["grid", "--perm", "2 4 1 3", "--class", "H"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["grid", "--perm", "1 1"]).status.code(), Some(2));
    assert_eq!(run(&["count"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn series_json_shapes() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "--json", "series", "--class", "D", "--order", "5",
    ]))
    .unwrap();
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["0", "1", "2", "6", "22", "88"])
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "--json",
        "series",
        "--order",
        "4",
        "--markers",
        "t,l",
    ]))
    .unwrap();
    assert_eq!(
        v["coefficients"][4],
        serde_json::json!({"1": "14", "l": "1", "t": "6", "t^2": "1"})
    );
    assert_eq!(v["marker_spec"], "t,l");
}

#[test]
fn series_limits() {
    assert_eq!(
        run(&["series", "--order", "61", "--markers", "t,l"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["series", "--class", "H", "--order", "5", "--markers", "l"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn stats_csv() {
    let text = stdout(&["stats", "--class", "D", "--n", "4", "--stat", "left"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,num,den,float");
    assert!(lines[1].starts_with("4,0,21,22,"));
    assert!(lines[2].starts_with("4,1,1,22,"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn sample_is_reproducible() {
    let a = stdout(&["sample", "--n", "12", "--count", "5", "--seed", "3"]);
    let b = stdout(&[
        "sample",
        "--n",
        "12",
        "--count",
        "5",
        "--seed",
        "3",
        "--threads",
        "1",
    ]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 5);
    for line in a.lines() {
        let p: permclass::Permutation = line.parse().unwrap();
        assert_eq!(p.len(), 12);
        assert!(permclass::avoids_all(
            &p,
            &permclass::PatternBasis::class_d()
        ));
    }
}

#[test]
fn sample_stats_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "sample", "--n", "10", "--count", "50", "--stats", "--class", "H",
    ]))
    .unwrap();
    assert_eq!(v["trials"], 50);
    assert_eq!(v["fraction_in_h"], 1.0);
}

#[test]
fn verify_fast_passes() {
    let text = stdout(&["verify", "--suite", "fast"]);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
