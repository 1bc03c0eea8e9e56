use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn meyniel(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meyniel")).current_dir(dir).args(args).output().expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = meyniel(dir, args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(dir: &Path, args: &[&str]) -> Value {
    serde_json::from_str(&ok(dir, args)).unwrap()
}

#[test]
fn construct_then_inspect() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["construct", "incidence", "--q", "2", "--out", "fano.txt", "--labels", "fano.json"]);
    let text = std::fs::read_to_string(d.join("fano.txt")).unwrap();
    assert_eq!(text.lines().next(), Some("14 21"));
    assert_eq!(text.lines().count(), 22);
    let labels: Value = serde_json::from_str(&std::fs::read_to_string(d.join("fano.json")).unwrap()).unwrap();
    let labels = labels.as_array().unwrap();
    assert_eq!(labels.len(), 14);
    assert_eq!(labels[0]["type"], "point");
    assert_eq!(labels[13]["type"], "line");

    let m = json(d, &["metrics", "fano.txt"]);
    assert_eq!(m["metrics"]["girth"], 6);
    assert_eq!(m["metrics"]["diameter"], 3);
    assert_eq!(m["census"]["c6"], 28);
    assert_eq!(m["c4_free"], true);

    let c = json(d, &["copnumber", "fano.txt", "--kmax", "3"]);
    assert_eq!(c["cop_number"], 3);
    let c = json(d, &["copnumber", "fano.txt", "--kmax", "2"]);
    assert_eq!(c["cop_number"], Value::Null);
}

#[test]
fn certificate_and_cover_json_shapes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["construct", "petersen", "--out", "p.txt"]);
    ok(d, &["certify", "p.txt", "--kind", "girth5", "--out", "cert.json"]);
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(d.join("cert.json")).unwrap()).unwrap();
    assert_eq!(cert["kind"], "GIRTH5_LOWER");
    assert_eq!((cert["bound_num"].as_i64(), cert["bound_den"].as_i64()), (Some(3), Some(1)));
    for key in ["params", "witness"] {
        assert!(cert.get(key).is_some());
    }
    let k2t = json(d, &["certify", "p.txt", "--kind", "k2t", "--t", "2"]);
    assert_eq!(k2t["kind"], "K2T_LOWER");

    let cover = json(d, &["cover", "p.txt", "--mode", "domination"]);
    for key in ["tau", "tau_star_num", "tau_star_den", "greedy_size", "bound", "witness"] {
        assert!(cover.get(key).is_some(), "missing {key}");
    }
    assert_eq!(cover["tau"], 4);
    assert_eq!((cover["tau_star_num"].as_str(), cover["tau_star_den"].as_str()), (Some("10"), Some("3")));
    let dlc = json(d, &["cover", "p.txt", "--mode", "dlc"]);
    assert_eq!(dlc["witness"]["kind"], "DLC_UPPER");
    let buckets = json(d, &["cover", "p.txt", "--mode", "buckets", "--omega", "2"]);
    assert_eq!(buckets["witness"]["feasible"], true);
}

#[test]
fn simulate_writes_trace() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["construct", "cycle", "--n", "5", "--out", "c5.txt"]);
    let s = json(d, &["simulate", "c5.txt", "--cop", "table", "--robber", "stationary", "--k", "2", "--trace", "t.json"]);
    assert_eq!(s["outcome"]["result"], "CAPTURED");
    let trace: Value = serde_json::from_str(&std::fs::read_to_string(d.join("t.json")).unwrap()).unwrap();
    let rounds = trace["rounds"].as_array().unwrap();
    assert!(!rounds.is_empty());
    assert_eq!(rounds[0]["cops"].as_array().unwrap().len(), 2);
    assert!(rounds[0].get("robber").is_some());

    let s = json(d, &["simulate", "c5.txt", "--cop", "greedy", "--robber", "table", "--k", "1", "--rounds", "30"]);
    assert_eq!(s["outcome"]["result"], "SURVIVED");
}

#[test]
fn sweep_and_audit() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let out = meyniel(d, &["--out-dir", "sw", "sweep", "--family", "incidence", "--qs", "2,3", "--exact-kmax", "3"]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(d.join("sw/sweep.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("family,params,n,order"));
    assert!(rows[1].starts_with("incidence,q=2,2,14,21"));
    assert!(rows.iter().skip(1).all(|r| r.ends_with(",ok")));
    assert!(d.join("sw/incidence_q_2.txt").exists());

    std::fs::write(d.join("rows.csv"), "n,order,bound\n2,14,3\n3,26,4\n").unwrap();
    let stdout = ok(d, &["family-audit", "rows.csv", "--out", "audit.csv"]);
    assert_eq!(stdout.trim(), "constant,0.784465,8/13");
    let audit = std::fs::read_to_string(d.join("audit.csv")).unwrap();
    assert_eq!(audit.lines().count(), 3);
}

#[test]
fn count_verifies_small_profiles() {
    let tmp = tempfile::tempdir().unwrap();
    let v = json(tmp.path(), &["count", "--a", "4", "--d", "2", "--verify"]);
    assert_eq!(v["count"]["exact_count"], "5");
    assert_eq!(v["verification"]["holds"], true);
}

#[test]
fn bad_input_exits_nonzero() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    std::fs::write(d.join("bad.txt"), "3 2\n0 1\n").unwrap();
    let out = meyniel(d, &["metrics", "bad.txt"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = meyniel(d, &["construct", "incidence", "--q", "6"]);
    assert!(!out.status.success());
    let out = meyniel(d, &["construct", "petersen", "--labels", "x.json"]);
    assert!(!out.status.success());
}
