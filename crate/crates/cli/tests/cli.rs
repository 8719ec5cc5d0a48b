use std::collections::BTreeMap;

use assert_cmd::Command;
use fairness_cli::ranking_from_csv;
use predicates::str::contains;

fn fairness() -> Command {
    Command::cargo_bin("fairness").unwrap()
}

fn stdout_of(cmd: &mut Command) -> String {
    let output = cmd.assert().success().get_output().stdout.clone();
    String::from_utf8(output).unwrap()
}

#[test]
fn metrics_prints_six_significant_digits() {
    let out = stdout_of(fairness().args(["metrics", "--values", "1,3", "--metric", "gini"]));
    assert_eq!(out, "gini  0.25\n");
    let out = stdout_of(fairness().args(["metrics", "--values", "5,5", "--metric", "theil_t"]));
    assert_eq!(out, "theil_t  0\n");
    let out = stdout_of(fairness().args([
        "metrics",
        "--values",
        "1,3",
        "--metric",
        "atkinson:1,hoover",
    ]));
    assert_eq!(out, "atkinson:1  0.133975\nhoover      0.25\n");
}

#[test]
fn metrics_domain_error_exits_2_with_kind() {
    fairness()
        .args(["metrics", "--values", "0,1", "--metric", "theil_l"])
        .assert()
        .code(2)
        .stderr(contains("ZeroElement"));
    fairness()
        .args(["metrics", "--values", "1,x", "--metric", "gini"])
        .assert()
        .code(2);
    fairness()
        .args(["metrics", "--values", "1,2", "--metric", "nope"])
        .assert()
        .code(2);
}

#[test]
fn evaluate_cake_preset_verdicts() {
    let out = stdout_of(fairness().args(["evaluate", "--preset", "cake"]));
    let rank_one = |principle: &str| -> Vec<String> {
        let scores = out.split("Scores (rank)\n").nth(1).unwrap();
        let header: Vec<&str> = scores.lines().next().unwrap().split_whitespace().collect();
        let row = scores.lines().find(|l| l.starts_with(principle)).unwrap();
        let cells: Vec<&str> = row.split_whitespace().collect();
        // Cells after the label and direction come in `value (rank)` pairs.
        cells[2..]
            .chunks(2)
            .zip(&header[2..])
            .filter(|(cell, _)| cell[1] == "(1)")
            .map(|(_, c)| c.to_string())
            .collect()
    };
    assert_eq!(rank_one("greater_good"), ["s5"]);
    assert_eq!(rank_one("difference"), ["s5"]);
    assert_eq!(rank_one("equality"), ["s3"]);
    assert_eq!(rank_one("proportion"), ["s1"]);
    assert_eq!(rank_one("sufficiency"), ["s3", "s4", "s5"]);
}

#[test]
fn evaluate_fishermen_preset_optima() {
    let out = stdout_of(fairness().args(["evaluate", "--preset", "fishermen"]));
    let candidates = out.split("\n\n").next().unwrap();
    assert!(
        candidates.contains("difference+equality      3.5     3.5"),
        "{candidates}"
    );
    assert!(
        candidates.contains("proportion               2.8     4.2"),
        "{candidates}"
    );
    assert!(
        candidates.contains("greater_good             7       0"),
        "{candidates}"
    );
}

#[test]
fn csv_round_trip_reproduces_printed_ranking() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    for preset in ["cake", "fishermen"] {
        let out = stdout_of(
            fairness()
                .args(["evaluate", "--preset", preset, "--out"])
                .arg(&path),
        );
        let printed: Vec<String> = out
            .split("Combined ranking\n")
            .nth(1)
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
            .collect();
        let csv = std::fs::read_to_string(&path).unwrap();
        assert!(csv.starts_with("candidate,principle,score,direction,rank\n"));
        assert!(!csv.contains('\r'));
        let table = ranking_from_csv(&csv, &BTreeMap::new()).unwrap();
        let rebuilt: Vec<String> = table
            .aggregate
            .order
            .iter()
            .map(|&c| table.candidates[c].clone())
            .collect();
        assert_eq!(rebuilt, printed, "{preset}");
    }
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "{}").unwrap();
    fairness()
        .args(["evaluate", "--config"])
        .arg(&empty)
        .assert()
        .code(2);
    fairness()
        .args(["evaluate", "--config"])
        .arg(dir.path().join("missing.json"))
        .assert()
        .code(2);

    let typo = dir.path().join("typo.json");
    std::fs::write(
        &typo,
        r#"{"kind": "continuous", "agents": [{"id": "A", "input": 1}, {"id": "B", "input": 1}],
            "total": 2, "principles": [{"principle": "sufficiency", "treshold": 1}]}"#,
    )
    .unwrap();
    fairness()
        .args(["evaluate", "--config"])
        .arg(&typo)
        .assert()
        .code(2)
        .stderr(contains("principles[0].treshold"));
}

#[test]
fn scoring_errors_exit_3_naming_principle_and_candidate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theil.json");
    std::fs::write(
        &path,
        r#"{"kind": "discrete",
            "agents": [{"id": "A", "input": 1}, {"id": "B", "input": 1}],
            "pieces": [{"amount": 0.5}, {"amount": 0.5}],
            "principles": [{"principle": "equality", "metric": "theil_l", "label": "mld"}]}"#,
    )
    .unwrap();
    fairness()
        .args(["evaluate", "--config"])
        .arg(&path)
        .assert()
        .code(3)
        .stderr(contains("ZeroElement: principle \"mld\", candidate \"s1\""));
}

#[test]
fn heatmap_rows_and_errors() {
    let out = stdout_of(fairness().args([
        "heatmap",
        "--preset",
        "fishermen",
        "--principle",
        "sufficiency",
        "--grid",
        "1",
    ]));
    assert_eq!(
        out,
        "y_a,y_b,score,on_frontier\n0,0,0,true\n0,7,0.5,true\n7,0,0.5,true\n7,7,1,true\n"
    );
    fairness()
        .args(["heatmap", "--preset", "cake", "--grid", "4"])
        .assert()
        .code(2);
    fairness()
        .args(["heatmap", "--preset", "fishermen"])
        .assert()
        .code(2);
}

#[test]
fn heatmap_out_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        fairness()
            .args([
                "heatmap",
                "--preset",
                "fishermen",
                "--principle",
                "greater_good",
                "--grid",
                "20",
                "--out",
            ])
            .arg(path)
            .assert()
            .success();
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    assert_eq!(
        String::from_utf8(first).unwrap().lines().count(),
        21 * 21 + 1
    );
}
