use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotlocus")).args(args).env_remove("QUOTLOCUS_CAP").output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn fixture(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let mut args = vec!["fixtures", "--name", name];
    args.extend_from_slice(extra);
    std::fs::write(&path, ok(&args)).unwrap();
    path
}

#[test]
fn enumerate_csv_has_one_row_per_partition() {
    let out = ok(&["enumerate", "--r", "1", "--d", "2", "--n", "4", "--format", "csv"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    let all = json(&["enumerate", "--r", "2", "--d", "2", "--n", "4"]);
    assert_eq!(all.as_array().unwrap().len(), 10);
}

#[test]
fn planar_functions_are_smooth() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = fixture(dir.path(), "planar3", &[]);
    let v = json(&["smooth", "--in", p3.to_str().unwrap(), "--r", "3"]);
    assert_eq!(v["verdict"], "Smooth");
    assert!(v["reason"].as_str().unwrap().contains("d <= 2"));
}

#[test]
fn identity_report_is_all_ok() {
    let v = json(&["verify", "identity", "--r", "3", "--d", "3", "--nmax", "5"]);
    let lines = v["per_n"].as_array().unwrap();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l["ok"] == true && l["lhs"] == l["rhs"]));
    assert_eq!(v["params"]["r"], 3);
    let series = json(&["verify", "series", "--r", "2", "--nmax", "5"]);
    let lhs: Vec<u64> = series["per_n"].as_array().unwrap().iter().map(|l| l["lhs"].as_u64().unwrap()).collect();
    assert_eq!(lhs, vec![1, 2, 5, 10, 20, 36]);
}

#[test]
fn parallel_verify_is_byte_identical() {
    let a = ok(&["verify", "identity", "--r", "2", "--d", "3", "--nmax", "5", "--jobs", "3"]);
    let b = ok(&["verify", "identity", "--r", "2", "--d", "3", "--nmax", "5"]);
    assert_eq!(a, b);
}

#[test]
fn singular_example_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let ds = fixture(dir.path(), "dim3sing", &[]);
    let p = ds.to_str().unwrap();
    assert_eq!(json(&["euler", "--in", p, "--r", "3"])["euler"], 18);
    assert_eq!(json(&["count-fq", "--in", p, "--r", "3", "--q", "2"])["points"], 105);
    let s = json(&["structure", "--in", p, "--r", "3"]);
    assert_eq!(s["structure"]["parts"], serde_json::json!([[0, 1], [2, 3]]));
    assert_eq!(s["structure"]["edges"].as_array().unwrap().len(), 4);
    let verdict = ok(&["smooth", "--in", p, "--r", "3", "--seed", "5"]);
    assert_eq!(verdict, ok(&["smooth", "--in", p, "--r", "3", "--seed", "5"]));
    let v: Value = serde_json::from_str(&verdict).unwrap();
    assert_eq!(v["verdict"], "SingularWitness");
    // the witness configuration is itself a valid tangent input
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, v["config"].to_string()).unwrap();
    let t = json(&["tangent", "--in", cfg.to_str().unwrap()]);
    assert_eq!(t["tangent_dimension"], v["tangent"]);
}

#[test]
fn planar3_counts_and_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = fixture(dir.path(), "planar3", &[]);
    let p = p3.to_str().unwrap();
    assert_eq!(json(&["dimension", "--in", p, "--r", "3"])["dimension"], 5);
    assert_eq!(json(&["euler", "--in", p, "--r", "3"])["euler"], 24);
    let csv = ok(&["count-fq", "--in", p, "--r", "3", "--q", "2", "--format", "csv"]);
    assert_eq!(csv, "points,q,r\n189,2,3\n");
    let dot = ok(&["structure", "--in", p, "--r", "3", "--format", "dot"]);
    assert!(dot.starts_with("graph"));
    let regions = json(&["regions", "--in", p, "--r", "3"]);
    assert_eq!(regions["intersection"]["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn fixtures_round_trip_through_their_parsers() {
    let dir = tempfile::tempdir().unwrap();
    let all = json(&["fixtures", "--r", "5"]);
    for (name, doc) in all.as_object().unwrap() {
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(doc).unwrap()).unwrap();
        let p = path.to_str().unwrap();
        if doc.get("entries").is_some() {
            let r = doc["entries"].as_array().unwrap().iter().map(|e| e["value"].as_u64().unwrap()).max().unwrap();
            let s = json(&["structure", "--in", p, "--r", &r.to_string()]);
            assert!(s["structure"]["rank"].as_u64().unwrap() + 1 == r, "{name}");
        } else {
            let e = json(&["euler", "--in", p]);
            assert!(e["euler"].as_u64().unwrap() > 0, "{name}");
        }
    }
    assert_eq!(all["dim3sing_r"]["entries"][0]["value"], 5);
}

#[test]
fn graphs_realize_from_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("path.txt");
    std::fs::write(&g, "# a point on a line\nparts: 0 | 1\n0 1\n").unwrap();
    let chi = ok(&["realize", "--in", g.to_str().unwrap(), "--d", "4"]);
    let chi_path = dir.path().join("chi.json");
    std::fs::write(&chi_path, &chi).unwrap();
    let s = json(&["structure", "--in", chi_path.to_str().unwrap(), "--r", "3"]);
    assert_eq!(s["structure"]["edges"], serde_json::json!([[0, 1]]));
    let out = run(&["realize", "--in", g.to_str().unwrap(), "--d", "4", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn intervals_realize() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("iv.json");
    std::fs::write(&doc, r#"{"r": 3, "levels": [1, 1, 2], "intervals": [["0", "1"], ["3", "7/2"], ["1/2", "3"]]}"#)
        .unwrap();
    let chi = ok(&["intervals", "--in", doc.to_str().unwrap()]);
    let chi_path = dir.path().join("chi.json");
    std::fs::write(&chi_path, &chi).unwrap();
    let s = json(&["structure", "--in", chi_path.to_str().unwrap(), "--r", "3"]);
    assert_eq!(s["structure"]["parts"], serde_json::json!([[0, 1], [2]]));
    assert_eq!(s["structure"]["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "--r", "1", "--d", "2", "--n", "4", "--bogus"]).status.code(), Some(2));
    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(!unknown.stderr.is_empty());
    assert_eq!(run(&["enumerate", "--r", "1", "--d", "2"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--r", "3", "--d", "3", "--n", "10", "--cap", "5"]).status.code(), Some(3));
    assert_eq!(run(&["euler", "--in", "/nonexistent/file.json"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_quotlocus"))
        .args(["enumerate", "--r", "3", "--d", "3", "--n", "10"])
        .env("QUOTLOCUS_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(run(&["fixtures", "--name", "nope"]).status.code(), Some(2));
}
