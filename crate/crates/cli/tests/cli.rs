use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    doc: Value,
}

fn olc(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_olc")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).expect("one JSON document") };
    Run { code: out.status.code().unwrap(), doc }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EDGE: &str = r#"{"n":2,"edges":[[0,1]],"lists":[[1,2],[1,2]]}"#;
const FORK: &str = r#"{"n":3,"edges":[[0,1],[0,2]],"lists":[[1,2,3],[1,2,3],[1,2,3]]}"#;

#[test]
fn solve_edge_with_oracle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "edge.json", EDGE);
    let r = olc(&["solve", "--algo", "oracle", s(&f)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.doc, json!({"status": "sat", "colors": [1, 2]}));
}

#[test]
fn fork_pattern_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fork.json", FORK);
    let r = olc(&["pattern", "--name", "fork", s(&f)]);
    assert_eq!(r.doc, json!({"free": false, "witness": [0, 1, 2]}));
    let r = olc(&["pattern", "--name", "nested-pair", s(&f)]);
    assert_eq!(r.doc, json!({"free": true}));
}

#[test]
fn unsat_still_exits_zero() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k3.json", r#"{"n":3,"edges":[[0,1],[0,2],[1,2]],"lists":[[1,2],[1,2],[1,2]]}"#);
    for algo in ["oracle", "two-list", "chordal", "clique-matching", "auto"] {
        let r = olc(&["solve", "--algo", algo, s(&f)]);
        assert_eq!(r.code, 0, "{algo}");
        assert_eq!(r.doc["status"], "unsat", "{algo}");
    }
}

#[test]
fn auto_reports_its_route() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (EDGE, "two-list"),
        (r#"{"n":3,"edges":[[0,1],[0,2],[1,2]],"lists":[[1,2,3],[1,2,3],[2,3,4]]}"#, "clique-matching"),
        (r#"{"n":3,"edges":[[0,2],[1,2]],"lists":[[1,2,3],[1,2,3],[1,2,3]]}"#, "chordal"),
        (FORK, "single-edge"),
    ];
    for (i, (text, route)) in cases.into_iter().enumerate() {
        let f = write(&dir, &format!("a{i}.json"), text);
        let r = olc(&["solve", s(&f)]);
        assert_eq!(r.doc["route"], route);
        assert_eq!(r.doc["status"], "sat");
    }
}

#[test]
fn solve_then_verify_round_trips() {
    let dir = TempDir::new().unwrap();
    let fork = write(&dir, "fork.json", FORK);
    let mirror = write(&dir, "mirror.json", r#"{"n":3,"edges":[[0,2],[1,2]],"lists":[[1,2,3],[1,2,3],[1,2,3]]}"#);
    let runs = [
        ("oracle", &fork),
        ("chordal", &mirror),
        ("single-edge", &fork),
        ("ljj4", &fork),
        ("auto", &fork),
    ];
    for (algo, inst) in runs {
        let r = olc(&["solve", "--algo", algo, s(inst)]);
        assert_eq!(r.code, 0, "{algo}");
        assert_eq!(r.doc["status"], "sat", "{algo}");
        let col = write(&dir, "c.json", &r.doc.to_string());
        assert_eq!(olc(&["verify", s(inst), s(&col)]).doc, json!({"valid": true}), "{algo}");
    }
}

#[test]
fn verify_names_the_violation() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "edge.json", EDGE);
    let col = write(&dir, "bad.json", r#"{"status":"sat","colors":[1,1]}"#);
    let r = olc(&["verify", s(&inst), s(&col)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.doc["valid"], false);
    assert!(r.doc["reason"].as_str().unwrap().contains("monochromatic"));
}

#[test]
fn pattern_found_is_a_data_error_with_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fork.json", FORK);
    let r = olc(&["solve", "--algo", "chordal", s(&f)]);
    assert_eq!(r.code, 65);
    assert_eq!(r.doc["witness"], json!([0, 1, 2]));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "edge.json", EDGE);
    assert_eq!(olc(&["solve", "--no-such-flag", s(&f)]).code, 64);
    assert_eq!(olc(&["pattern", "--name", "triangle", s(&f)]).code, 64);
    assert_eq!(olc(&["solve", s(&dir.path().join("missing.json"))]).code, 66);
    let bad = write(&dir, "bad.json", r#"{"n":2,"edges":[[0,0]],"lists":[[1],[1]]}"#);
    assert_eq!(olc(&["solve", s(&bad)]).code, 65);
    let wrong = write(&dir, "wrong.json", r#"{"format":"other","n":1,"edges":[],"lists":[[1]]}"#);
    assert_eq!(olc(&["solve", s(&wrong)]).code, 65);
}

#[test]
fn kernelize_writes_instance_and_trace() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k.json", r#"{"n":3,"edges":[[0,1],[1,2]],"lists":[[1],[1,2],[1,2,3]]}"#);
    let out = dir.path().join("out.json");
    let trace = dir.path().join("trace.json");
    let r = olc(&["kernelize", s(&f), "-o", s(&out), "--trace", s(&trace)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.doc["status"], "reduced");
    assert_eq!(r.doc["trace"], json!([[0, 1], [1, 2]]));
    assert_eq!(r.doc["index_map"], json!([2]));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, json!({"n": 1, "edges": [], "lists": [[1, 3]]}));
    let side: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(side["trace"], r.doc["trace"]);

    let no = write(&dir, "no.json", r#"{"n":2,"edges":[[0,1]],"lists":[[1],[1]]}"#);
    assert_eq!(olc(&["kernelize", s(&no)]).doc, json!({"status": "no"}));
}

#[test]
fn cnf_gadget_compiles_and_decodes() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "one.cnf", "p cnf 3 1\n1 2 -3 0\n");
    let r = olc(&["gadget", "jj1", s(&cnf)]);
    assert_eq!(r.code, 0);
    // three variables plus thirteen vertices for the clause
    assert_eq!(r.doc["n"], 16);

    let inst = dir.path().join("inst.json");
    let map = dir.path().join("map.json");
    let r = olc(&["gadget", "jj1", s(&cnf), "-o", s(&inst), "--layout", s(&map)]);
    assert_eq!(r.doc["n"], 16);
    let sol = olc(&["solve", "--algo", "oracle", s(&inst)]);
    assert_eq!(sol.doc["status"], "sat");
    let col = write(&dir, "col.json", &sol.doc.to_string());
    let a = olc(&["decode", "--layout", s(&map), "--coloring", s(&col)]);
    let a: Vec<bool> = serde_json::from_value(a.doc["assignment"].clone()).unwrap();
    assert!(a[0] || a[1] || !a[2]);
}

#[test]
fn nae_gadget_compiles_and_decodes() {
    let dir = TempDir::new().unwrap();
    let nae = write(&dir, "f.nae", "p nae 4 2\n1 2 3 0\n2 3 4 0\n");
    let inst = dir.path().join("inst.json");
    let map = dir.path().join("map.json");
    let r = olc(&["gadget", "rainbow", s(&nae), "-o", s(&inst), "--decode", s(&map)]);
    assert_eq!(r.code, 0);
    let kind: Value = serde_json::from_str(&std::fs::read_to_string(&map).unwrap()).unwrap();
    assert_eq!(kind["kind"], "rainbow");
    assert_eq!(olc(&["pattern", "--name", "nested-pair", s(&inst)]).doc, json!({"free": true}));
    let sol = olc(&["solve", "--algo", "oracle", s(&inst)]);
    let col = write(&dir, "col.json", &sol.doc.to_string());
    let a = olc(&["decode", "--layout", s(&map), "--coloring", s(&col)]).doc["assignment"].clone();
    let a: Vec<bool> = serde_json::from_value(a).unwrap();
    assert!(a[0..3].contains(&true) && a[0..3].contains(&false));
    assert!(a[1..4].contains(&true) && a[1..4].contains(&false));
}

#[test]
fn fano_compiles_to_unsat() {
    let dir = TempDir::new().unwrap();
    let text = "p nae 7 7\n1 2 3 0\n1 4 5 0\n1 6 7 0\n2 4 6 0\n2 5 7 0\n3 4 7 0\n3 5 6 0\n";
    let nae = write(&dir, "fano.nae", text);
    let inst = dir.path().join("inst.json");
    olc(&["gadget", "rainbow", s(&nae), "-o", s(&inst)]);
    let r = olc(&["solve", "--algo", "oracle", s(&inst)]);
    assert_eq!(r.doc, json!({"status": "unsat"}));
}

#[test]
fn gadget_reports_pass() {
    let runs: [&[&str]; 6] = [
        &["--kind", "rotation", "--ell", "3", "--j", "1", "--k", "3"],
        &["--kind", "permutation", "--perm", "3,1,2"],
        &["--kind", "indicator", "--c", "2", "--n", "3", "--pairs", "1"],
        &["--kind", "notcc", "--n", "4", "--pairs", "1,3"],
        &["--kind", "notccc", "--c", "2", "--n", "4", "--triples", "2,3,4"],
        &["--kind", "nae", "--n", "3", "--triples", "1,2,3"],
    ];
    for extra in runs {
        let mut args = vec!["verify-gadget"];
        args.extend_from_slice(extra);
        let r = olc(&args);
        assert_eq!(r.code, 0, "{extra:?}");
        assert_eq!(r.doc["passed"], true, "{extra:?}");
        assert_eq!(r.doc["mismatches"], json!([]));
    }
    assert_eq!(olc(&["verify-gadget", "--kind", "rotation", "--ell", "2", "--j", "2", "--k", "1"]).code, 64);
    assert_eq!(olc(&["verify-gadget", "--kind", "indicator", "--n", "2", "--pairs", "2"]).code, 65);
}
