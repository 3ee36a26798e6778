use std::path::Path;
use std::process::{Command, Output};

fn tpg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpg"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn tp_of_catalog_id_and_expression() {
    let dir = tempfile::tempdir().unwrap();
    let out = tpg(dir.path(), &["tp", "a5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["tp"]["num"], "1");
    assert_eq!(v["tp"]["den"], "16384");

    let out = tpg(dir.path(), &["tp", "sdp (cyclic 7) (cyclic 3) power 2", "--sequential"]);
    assert_eq!(json(&out)["tp"]["den"], "81");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tpg(dir.path(), &["tp", "psl3_2", "--cap-order", "100"]).status.code(), Some(3));
    assert_eq!(tpg(dir.path(), &["tp", "dihedral"]).status.code(), Some(2));
    assert_eq!(tpg(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(tpg(dir.path(), &["pg", "d04", "--h", "1", "--k", "4"]).status.code(), Some(2));
    assert_eq!(tpg(dir.path(), &["verify", "nope"]).status.code(), Some(2));
    assert_eq!(tpg(dir.path(), &["nt", "prodpi", "--max-sum", "99"]).status.code(), Some(3));

    std::fs::write(dir.path().join("cat.txt"), "d5\tdihedral 5\ttp=1/2\n").unwrap();
    let out = tpg(dir.path(), &["verify", "d5", "--catalog", "cat.txt", "--checks", "lemma-values"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d5"));
}

#[test]
fn pg_with_oracles_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = tpg(dir.path(), &["pg", "sym 4", "--h", "@1", "--oracles", "--bounds"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["oracles"]["agree"], true);
    assert_eq!(v["bounds"]["all_hold"], true);
}

#[test]
fn graph_dot_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = tpg(dir.path(), &["graph", "dihedral 3", "--h", "@1", "--dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph coset_intersection {"));
    assert_eq!(text.matches(" -- ").count(), 5);

    let out = tpg(dir.path(), &["group", "subgroups", "alt 4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn group_make_round_trips_through_table_builder() {
    let dir = tempfile::tempdir().unwrap();
    let out = tpg(dir.path(), &["group", "make", "quaternion 16", "--report", "q16.tab"]);
    assert!(out.status.success());
    let out = tpg(dir.path(), &["tp", "table q16.tab"]);
    assert_eq!(json(&out)["tp"]["den"], "2");
}

#[test]
fn scan_uses_cache_unless_disabled() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("cat.txt"),
        "s3\tdihedral 3\ttp=1/2\nq8\tquaternion 8\ttp=1\nbig\tsym 6\n",
    )
    .unwrap();
    let args = ["scan", "--catalog", "cat.txt", "--cap-order", "120", "--jobs", "2", "--report", "r1.json"];
    let first = tpg(dir.path(), &args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert!(dir.path().join(".tpg-cache.ndjson").exists());
    let mut again = args;
    again[8] = "r2.json";
    let second = tpg(dir.path(), &again);
    assert!(String::from_utf8_lossy(&second.stderr).contains("2 hits"));

    let strip = |p: &str| {
        let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join(p)).unwrap()).unwrap();
        for e in v["entries"].as_array_mut().unwrap() {
            e["millis"] = 0.into();
        }
        v
    };
    let r1 = strip("r1.json");
    assert_eq!(r1, strip("r2.json"));
    assert_eq!(r1["skipped"][0]["id"], "big");

    let third = tpg(dir.path(), &["scan", "--catalog", "cat.txt", "--no-cache", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&third.stderr).contains("0 hits"));
    assert!(String::from_utf8_lossy(&third.stdout).starts_with("id,order,tp_num"));
}

#[test]
fn nt_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = tpg(dir.path(), &["nt", "prodpi", "--max-sum", "16"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["prime_product_violations"].as_array().unwrap().len(), 0);

    let out = tpg(dir.path(), &["nt", "bounds", "--n", "8", "--s", "3"]);
    let v = json(&out);
    assert_eq!(v["gamma_below_refinement"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(tpg(dir.path(), &["nt", "bounds", "--n", "3", "--s", "4"]).status.code(), Some(2));
}
