use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K4: &str = "# K4\np 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n";

fn pfd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfd"))
        .args(args)
        .output()
        .expect("pfd runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn mad_of_k4_and_five_cycle() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = pfd(&["mad", s(&k4)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3/1\n0 1 2 3\n");

    let c5 = write(&dir, "c5.txt", "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    let out = pfd(&["mad", s(&c5)]);
    assert!(stdout(&out).starts_with("2/1\n"));
}

#[test]
fn malformed_header_cites_line_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "q 4 6\n");
    let out = pfd(&["mad", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn decompose_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = pfd(&[
        "decompose",
        s(&k4),
        "--k",
        "1",
        "--d",
        "2",
        "--assert-potential",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"], "decomposition");
    assert_eq!(doc["threshold"], "3/1");
    let mut ids: Vec<u64> = doc["parts"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|p| p.as_array().unwrap().iter().map(|e| e.as_u64().unwrap()))
        .collect();
    ids.sort_unstable();
    assert_eq!(ids, [0, 1, 2, 3, 4, 5]);

    let result = write(&dir, "r.json", &stdout(&out));
    let out = pfd(&["verify", s(&k4), s(&result), "--k", "1", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn tampered_parts_fail_verification() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = pfd(&["decompose", s(&k4), "--k", "1", "--d", "2"]);
    let mut doc = json(&out);
    let special = doc["special_index"].as_u64().unwrap() as usize;
    let other = 1 - special;
    let moved = doc["parts"][other].as_array_mut().unwrap().pop().unwrap();
    doc["parts"][special].as_array_mut().unwrap().push(moved);
    let result = write(&dir, "r.json", &doc.to_string());
    let out = pfd(&["verify", s(&k4), s(&result), "--k", "1", "--d", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["valid"], false);
    assert!(report["violation"]
        .as_str()
        .unwrap()
        .contains("special part"));
}

#[test]
fn parameter_mismatch_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = pfd(&["decompose", s(&k4), "--k", "1", "--d", "2"]);
    let result = write(&dir, "r.json", &stdout(&out));
    let out = pfd(&["verify", s(&k4), s(&result), "--k", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parallel_bundle_gives_certificate() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "b.txt", "p 2 5\ne 0 1\ne 0 1\ne 0 1\ne 0 1\ne 0 1\n");
    let out = pfd(&["decompose", s(&g), "--k", "1", "--d", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let doc = json(&out);
    assert_eq!(doc["result"], "certificate");
    assert_eq!(doc["witness_density"], "5/1");
    assert!(doc.get("parts").is_none());

    let result = write(&dir, "r.json", &stdout(&out));
    let out = pfd(&["verify", s(&g), s(&result), "--k", "1", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = pfd(&["export-dot", s(&g), s(&result)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn four_cycle_with_matching_special_part() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.txt", "p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n");
    let out = pfd(&["decompose", s(&c4), "--k", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).is_empty());
}

#[test]
fn large_d_warns() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = pfd(&["decompose", s(&k4), "--k", "1", "--d", "5"]);
    assert!(stderr(&out).contains("warning"));
}

#[test]
fn iteration_cap_exit_code() {
    let dir = TempDir::new().unwrap();
    // a long red path in the initial colouring needs moves to fix
    let out = pfd(&[
        "gen", "below", "--n", "30", "--k", "1", "--d", "2", "--seed", "5",
    ]);
    let g = write(&dir, "g.txt", &stdout(&out));
    let mut capped = false;
    for seed in 0..20 {
        let seed = seed.to_string();
        let out = pfd(&[
            "decompose",
            s(&g),
            "--k",
            "1",
            "--d",
            "2",
            "--seed",
            &seed,
            "--max-iters",
            "0",
        ]);
        match out.status.code() {
            Some(4) => {
                capped = true;
                assert!(stdout(&out).is_empty());
                break;
            }
            Some(0) => assert_eq!(json(&out)["stats"]["moves"], 0),
            other => panic!("unexpected exit {other:?}"),
        }
    }
    assert!(capped);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let out = pfd(&[
        "gen", "below", "--n", "25", "--k", "2", "--d", "4", "--seed", "11",
    ]);
    let g = write(&dir, "g.txt", &stdout(&out));
    let a = pfd(&["decompose", s(&g), "--k", "2", "--d", "4", "--seed", "9"]);
    let b = pfd(&["decompose", s(&g), "--k", "2", "--d", "4", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn dot_export_styles() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = pfd(&["decompose", s(&k4), "--k", "1", "--d", "2"]);
    let result = write(&dir, "r.json", &stdout(&out));
    let out = pfd(&["export-dot", s(&k4), s(&result)]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges.len(), 6);
    let dashed = edges
        .iter()
        .filter(|l| l.contains("color=red, style=dashed"))
        .count();
    let solid = edges.iter().filter(|l| l.contains("#1f77b4")).count();
    assert_eq!(dashed + solid, 6);
    assert!(dashed > 0 && solid > 0);

    let empty = write(&dir, "e.txt", "p 0 0\n");
    let doc = r#"{"k":1,"d":2,"threshold":"3/1","result":"decomposition","parts":[[],[]],
        "special_index":1,"stats":{"moves":0,"flips":0,"iterations":1,"seed":0}}"#;
    let result = write(&dir, "e.json", doc);
    let out = pfd(&["export-dot", s(&empty), s(&result)]);
    assert_eq!(stdout(&out), "digraph G {\n}\n");
}

#[test]
fn gen_round_trips_through_mad() {
    let dir = TempDir::new().unwrap();
    let meta = dir.path().join("meta.json");
    let out = pfd(&[
        "gen",
        "union",
        "--n",
        "12",
        "--k",
        "2",
        "--d",
        "3",
        "--seed",
        "4",
        "--meta",
        s(&meta),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let g = write(&dir, "g.txt", &stdout(&out));
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&meta).unwrap()).unwrap();
    let out = pfd(&["mad", s(&g)]);
    let density = stdout(&out).lines().next().unwrap().to_string();
    assert_eq!(meta["mad"], density.as_str());
    assert_eq!(meta["generator"], "pseudoforest_union");
}

#[test]
fn orient_reports_dense_sets() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = pfd(&["orient", s(&k4), "--cap", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["tails"].as_array().unwrap().len(), 6);
    let out = pfd(&["orient", s(&k4), "--cap", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["witness_density"], "3/1");
}

#[test]
fn missing_arguments_are_usage_errors() {
    let out = pfd(&["decompose"]);
    assert_eq!(out.status.code(), Some(2));
}
