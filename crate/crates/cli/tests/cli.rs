use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn lpgst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpgst"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn classify_table_csv() {
    let o = lpgst(&["classify", "--n", "2..16", "--a", "all", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# lpgst classify schema_version=1"));
    assert_eq!(lines.next(), Some("n,a,verdict,rule"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    // one row per (n, a) with 1 <= a < n
    assert_eq!(rows.len(), (2..=16).map(|n| n - 1).sum::<usize>());
    for r in &rows {
        let n: usize = r[0].parse().unwrap();
        let a: usize = r[1].parse().unwrap();
        if 2 * a == n {
            assert_eq!(&r[2..], ["invalid", "same-pair"]);
        } else {
            assert!(r[2] == "yes" || r[2] == "no");
        }
    }
    let nine: Vec<_> = rows.iter().filter(|r| r[0] == "9").collect();
    assert_eq!(nine.len(), 8);
    assert!(nine.iter().all(|r| r[2] == "no" && r[3] == "odd-composite-factor"));
}

#[test]
fn classify_single_instance() {
    let o = lpgst(&["classify", "--n", "12", "--a", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "12,2,yes,two-power-times-prime"));
    let o = lpgst(&["classify", "--n", "12", "--a", "1"]);
    assert!(stdout(&o).lines().any(|l| l == "12,1,no,two-power-times-prime"));
}

#[test]
fn classify_cross_check_and_json() {
    let o = lpgst(&["classify", "--n", "2..20", "--cross-check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().nth(1) == Some("n,a,verdict,rule,lattice,agree"));
    for l in text.lines().skip(2) {
        let r: Vec<&str> = l.split(',').collect();
        if r[2] == "invalid" {
            assert_eq!(&r[4..], ["n/a", "n/a"]);
        } else {
            assert_eq!(r[2], r[4], "{l}");
            assert_eq!(r[5], "true", "{l}");
        }
    }

    let o = lpgst(&["classify", "--n", "6", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "classify");
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 5);
    assert_eq!(recs[2]["verdict"], "invalid");
    assert_eq!(recs[0]["rule"], "two-power-times-prime");
}

#[test]
fn classify_usage_errors() {
    for args in [
        &["classify", "--n", "16..2"][..],
        &["classify", "--n", "x"],
        &["classify", "--n", "4", "--a", "1..x"],
        &["classify", "--n", "0..1"],
        &["classify"],
    ] {
        let o = lpgst(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn decide_negative_with_certificate() {
    let o = lpgst(&["decide", "--n", "9", "--a", "1", "--certificate"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["closed_form"]["has_lpgst"], false);
    assert_eq!(v["lattice"]["has_lpgst"], false);
    assert_eq!(v["agree"], true);
    let cert = &v["certificate"];
    let vector: Vec<i64> = cert["vector"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    assert_eq!(vector.len(), 8);
    assert_eq!(vector.iter().sum::<i64>(), 0);
    // σ picks the even k (none excluded for a = 1, n = 9)
    let sigma: i64 = vector
        .iter()
        .enumerate()
        .filter(|(i, _)| (i + 1) % 2 == 0)
        .map(|(_, x)| x)
        .sum();
    assert_eq!(cert["sigma_sum"].as_i64().unwrap(), sigma);
    assert_eq!(sigma.rem_euclid(2), 1);
    assert_eq!(v["witness"]["case"], "odd-prime-period");
    assert_eq!(v["witness"]["vector"], serde_json::json!([1, -1, 0, -1, 1, 0, 1, -1]));
}

#[test]
fn decide_positive_and_errors() {
    let o = lpgst(&["decide", "--n", "4", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["closed_form"]["has_lpgst"], true);
    assert_eq!(v["lattice"]["has_lpgst"], true);
    assert_eq!(v["agree"], true);
    assert!(v.get("certificate").is_none());

    let o = lpgst(&["decide", "--n", "4", "--a", "1", "--certificate"]);
    assert!(json(&o)["certificate"].is_null());

    let o = lpgst(&["decide", "--n", "6", "--a", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("same edge"));
    assert_eq!(lpgst(&["decide", "--n", "6", "--a", "9"]).status.code(), Some(2));
    assert_eq!(lpgst(&["decide", "--n", "1", "--a", "1"]).status.code(), Some(2));
}

fn summary_value(text: &str, key: &str) -> f64 {
    let prefix = format!("# {key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn sweep_path_three() {
    let o = lpgst(&[
        "sweep", "--path", "3", "--from", "1,2", "--to", "2,3", "--tmax", "10", "--steps", "10000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(summary_value(&text, "sup_estimate") > 1.0 - 1e-9);
    let t = summary_value(&text, "argmax_time");
    let m = t / std::f64::consts::FRAC_PI_2;
    assert!((m - m.round()).abs() < 1e-6 && m.round() as i64 % 2 == 1);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "t,fidelity");
    assert_eq!(body.len(), 10_001);
    assert_eq!(body[1], "0,0.25");
}

#[test]
fn sweep_graph_file_json() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# P4\nn 4\ne 1 2\ne 2 3\ne 3 4").unwrap();
    let path = f.path().to_str().unwrap();
    let o = lpgst(&[
        "sweep", "--graph", path, "--from", "1,2", "--to", "3,4", "--tmax", "50", "--steps", "100000", "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["input"]["source"]["kind"], "graph");
    assert_eq!(v["trace"]["t"].as_array().unwrap().len(), 100_000);
    assert!(v["sup_estimate"].as_f64().unwrap() > 1.0 - 1e-9);

    let o = lpgst(&[
        "sweep",
        "--graph",
        path,
        "--from",
        "1,2",
        "--to",
        "3,4",
        "--tmax",
        "5",
        "--steps",
        "10",
        "--format",
        "json",
        "--summary",
    ]);
    assert!(json(&o).get("trace").is_none());
}

#[test]
fn sweep_errors() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "n 3\ne 1 9").unwrap();
    let path = bad.path().to_str().unwrap();
    for args in [
        &["sweep", "--graph", path, "--from", "1,2", "--to", "2,3", "--tmax", "1"][..],
        &[
            "sweep",
            "--graph",
            "/nonexistent/graph.txt",
            "--from",
            "1,2",
            "--to",
            "2,3",
            "--tmax",
            "1",
        ],
        &["sweep", "--path", "3", "--from", "1,2", "--to", "2,3", "--tmax", "-1"],
        &["sweep", "--path", "3", "--from", "1,7", "--to", "2,3", "--tmax", "1"],
        &["sweep", "--path", "3", "--from", "1", "--to", "2,3", "--tmax", "1"],
        &["sweep", "--from", "1,2", "--to", "2,3", "--tmax", "1"],
        &[
            "sweep", "--path", "3", "--graph", path, "--from", "1,2", "--to", "2,3", "--tmax", "1",
        ],
    ] {
        assert_eq!(lpgst(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "--n", "2..24", "--cross-check"][..],
        &["decide", "--n", "45", "--a", "7", "--certificate"],
        &[
            "sweep", "--path", "7", "--from", "2,3", "--to", "5,6", "--tmax", "30", "--steps", "2000", "--format",
            "json",
        ],
    ] {
        let first = lpgst(args);
        let second = lpgst(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert!(!first.stdout.is_empty());
    }
}

#[test]
fn timing_goes_to_stderr() {
    let o = lpgst(&["--timing", "decide", "--n", "5", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("elapsed"));
    assert!(!stdout(&o).contains("elapsed"));
}

#[test]
fn sweep_non_transfer_stays_below_one() {
    let o = lpgst(&[
        "sweep",
        "--path",
        "9",
        "--from",
        "1,2",
        "--to",
        "8,9",
        "--tmax",
        "500",
        "--steps",
        "1000000",
        "--summary",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(summary_value(&stdout(&o), "sup_estimate") < 0.999);
}
