use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cycpres(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycpres"))
        .args(args)
        .env("CYCPRES_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(cache: &Path, args: &[&str]) -> Value {
    let out = cycpres(cache, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn triple(v: &Value) -> (u64, u64, u64) {
    (v["n"].as_u64().unwrap(), v["k"].as_u64().unwrap(), v["l"].as_u64().unwrap())
}

#[test]
fn classify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(dir.path(), &["classify", "8", "1", "3", "--json"]);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["invariants"]["torsion"], serde_json::json!(["3", "3", "3"]));
    assert_eq!(r["smallcanc"]["c3t6"], false);

    let r = json(dir.path(), &["classify", "7", "1", "3", "--json"]);
    assert_eq!(r["smallcanc"]["special"], true);

    let r = json(dir.path(), &["classify", "6", "2", "4", "--json"]);
    assert_eq!(r["normalization"]["kind"], "free-product");
    assert_eq!(triple(&r["normalization"]["inner"]), (3, 1, 2));
    assert!(r["notes"][0].as_str().unwrap().contains("free product"));
}

#[test]
fn enumerate_examples() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(json(dir.path(), &["enumerate", "4", "--json"])["f_upper"], 1);

    let e = json(dir.path(), &["enumerate", "8", "--json"]);
    let reps: Vec<_> = e["classes"].as_array().unwrap().iter().map(|c| triple(&c["representative"])).collect();
    assert_eq!(reps, [(8, 1, 2), (8, 1, 3), (8, 1, 4)]);

    let e = json(dir.path(), &["enumerate", "22", "--collisions", "--json"]);
    let cs = e["collisions"].as_array().unwrap();
    assert_eq!(cs.len(), 1);
    assert_eq!((triple(&cs[0]["first"]), triple(&cs[0]["second"])), ((22, 1, 4), (22, 1, 5)));
}

#[test]
fn enumerate_csv_has_one_row_per_class() {
    let dir = tempfile::tempdir().unwrap();
    let out = cycpres(dir.path(), &["enumerate", "12", "--csv"]);
    assert!(out.status.success());
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(r.headers().unwrap().get(2), Some("l"));
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    let ls: Vec<&str> = rows.iter().map(|row| row.get(2).unwrap()).collect();
    assert_eq!(ls, ["2", "3", "4", "5", "6"]);
}

#[test]
fn stargraph_examples_and_stable_dot() {
    let dir = tempfile::tempdir().unwrap();
    let g = json(dir.path(), &["stargraph", "7", "1", "3", "--json"]);
    assert_eq!((g["girth"].as_u64(), g["heawood"].as_bool()), (Some(6), Some(true)));
    assert_eq!(json(dir.path(), &["stargraph", "5", "1", "4", "--json"])["girth"], 2);

    let (a, b) = (dir.path().join("a.dot"), dir.path().join("b.dot"));
    for path in [&a, &b] {
        let out = cycpres(dir.path(), &["stargraph", "10", "1", "5", "--dot", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let vertices = text.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("--") && l.contains("\"x")).count();
    assert_eq!(vertices, 20);
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["classify", "16", "1", "7", "--json"];
    let fresh = cycpres(dir.path(), &[&args[..], &["--no-cache"]].concat());
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none(), "--no-cache wrote an entry");
    let miss = cycpres(dir.path(), &args);
    let hit = cycpres(dir.path(), &args);
    assert_eq!(fresh.stdout, miss.stdout);
    assert_eq!(miss.stdout, hit.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

    // A corrupted entry is recomputed, not trusted.
    let sub = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let entry = std::fs::read_dir(sub).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "{\"schema\": 1}").unwrap();
    assert_eq!(cycpres(dir.path(), &args).stdout, fresh.stdout);
}

#[test]
fn job_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |jobs: &str| {
        let mut v = json(dir.path(), &["verify", "--suite", "partition", "--max-n", "30", "--json", "--jobs", jobs]);
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    assert_eq!(strip("1"), strip("4"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| cycpres(dir.path(), args).status.code();
    assert_eq!(code(&["verify", "--suite", "closedforms", "--max-n", "64"]), Some(0));
    // The printed Lucas form disagrees with the determinant.
    assert_eq!(code(&["verify", "--suite", "lucas", "--max-n", "40"]), Some(1));
    assert_eq!(code(&["verify", "--suite", "nonsense"]), Some(2));
    assert_eq!(code(&["classify", "8", "1"]), Some(2));
    assert_eq!(code(&["classify", "2", "1", "1"]), Some(2));
    assert_eq!(code(&["subgroups", "8", "2", "4"]), Some(2));

    let out = cycpres(dir.path(), &["classify", "2", "1", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain error"));
    assert!(out.stdout.is_empty());
}

#[test]
fn subgroups_separate_a_table_pair() {
    let dir = tempfile::tempdir().unwrap();
    let s = json(dir.path(), &["subgroups", "22", "1", "4", "--against", "1", "5", "--json"]);
    assert_eq!(s["families"][0]["kernels"], serde_json::json!([]));
    assert_eq!(s["families"][1]["kernels"][0]["torsion"], serde_json::json!(["23", "1323719"]));
    assert_eq!(s["against"]["witness"], "index-3 subgroup abelianisations");
}

#[test]
fn abelianise_reports_every_route() {
    let dir = tempfile::tempdir().unwrap();
    let a = json(dir.path(), &["abelianise", "10", "1", "5", "--json"]);
    assert_eq!(a["invariants"]["torsion"], serde_json::json!(["33"]));
    assert_eq!(a["order_determinant"], "33");
    assert_eq!(a["betti_polynomial"], 0);
    assert_eq!(a["min_generators"], 1);
}
