use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lforce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lforce"))
        .args(args)
        .env_remove("LFORCE_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn strip_elapsed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn family_oracle_only() {
    let out = lforce(&[
        "--json",
        "family",
        "--name",
        "cycle",
        "--params",
        "5",
        "--leaks",
        "1",
        "--oracle-only",
    ]);
    assert_eq!(code(&out), 0);
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["z"], 2);
    assert_eq!(rec["command"], "family");
    assert!(rec["set"].is_null() && rec["passed"].is_null());
}

#[test]
fn family_with_solver_confirms() {
    let out = lforce(&[
        "--json", "family", "--name", "grid", "--params", "3x4", "--leaks", "0",
    ]);
    assert_eq!(code(&out), 0);
    let rec = &json_lines(&out)[0];
    assert_eq!(
        (rec["z"].as_u64(), rec["passed"].as_bool()),
        (Some(3), Some(true))
    );
}

#[test]
fn compute_q3_from_graph6() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "q3.g6", "Gr`HOk\n");
    let out = lforce(&[
        "--json",
        "compute",
        "--graph",
        g.to_str().unwrap(),
        "--format",
        "graph6",
        "--leaks",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["schema_version"], "1");
    assert_eq!(rec["z"], 6);
    assert_eq!(rec["graph"]["n"], 8);
    let set: Vec<u64> = rec["set"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(set.len(), 6);
    assert!(set.windows(2).all(|w| w[0] < w[1]));
    assert!(rec["iterations"].as_u64().unwrap() >= 1);
}

#[test]
fn json_is_stable_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    let run = |threads: &str| {
        let out = lforce(&[
            "--json",
            "--threads",
            threads,
            "compute",
            "--graph",
            g.to_str().unwrap(),
            "--leaks",
            "1",
        ]);
        assert_eq!(code(&out), 0);
        strip_elapsed(json_lines(&out).remove(0))
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("2"));
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p4.txt", "0 1\n1 2\n2 3\n");
    let p = g.to_str().unwrap();
    let pass = lforce(&[
        "--json", "verify", "--graph", p, "--set", "0,3", "--leaks", "1",
    ]);
    assert_eq!(code(&pass), 0);
    assert_eq!(json_lines(&pass)[0]["passed"], true);
    let fail = lforce(&[
        "--json", "verify", "--graph", p, "--set", "0", "--leaks", "1",
    ]);
    assert_eq!(code(&fail), 3);
    let rec = &json_lines(&fail)[0];
    assert_eq!(rec["passed"], false);
    assert_eq!(rec["witness_leaks"], serde_json::json!([0]));
}

#[test]
fn closure_reports_colored_set() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p4.txt", "0 1\n1 2\n2 3\n");
    let out = lforce(&[
        "--json",
        "closure",
        "--graph",
        g.to_str().unwrap(),
        "--set",
        "0",
        "--leak-at",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_lines(&out)[0]["set"], serde_json::json!([0, 1]));
}

#[test]
fn pattern_array_passes_and_bar_failure_is_exit_three() {
    let out = lforce(&[
        "--json", "pattern", "--grid", "7x10", "--kind", "array", "--verify",
    ]);
    assert_eq!(code(&out), 0);
    let rec = &json_lines(&out)[0];
    assert_eq!(
        (rec["z"].as_u64(), rec["passed"].as_bool()),
        (Some(13), Some(true))
    );

    let out = lforce(&[
        "--json", "pattern", "--grid", "2x6", "--kind", "bar", "--verify",
    ]);
    assert_eq!(code(&out), 3);
    assert_eq!(json_lines(&out)[0]["passed"], false);

    let out = lforce(&["pattern", "--grid", "9x4", "--kind", "array"]);
    assert_eq!(code(&out), 2, "outside the pattern's domain");
}

#[test]
fn brute_matches_compute() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "house.txt", "0 1\n1 2\n2 3\n3 0\n2 4\n3 4\n");
    let p = g.to_str().unwrap();
    for leaks in ["0", "1", "2"] {
        let b = json_lines(&lforce(&[
            "--json", "brute", "--graph", p, "--leaks", leaks,
        ]))[0]
            .clone();
        let c = json_lines(&lforce(&[
            "--json", "compute", "--graph", p, "--leaks", leaks,
        ]))[0]
            .clone();
        assert_eq!(b["z"], c["z"], "leaks = {leaks}");
    }
}

#[test]
fn usage_input_and_cap_exit_codes() {
    assert_eq!(code(&lforce(&["frobnicate"])), 1);
    assert_eq!(code(&lforce(&["verify", "--leaks", "1"])), 1);
    assert_eq!(code(&lforce(&["--help"])), 0);
    assert_eq!(
        code(&lforce(&["compute", "--graph", "/nonexistent/graph.txt"])),
        2
    );

    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "0 1\n1 x\n");
    let out = lforce(&["compute", "--graph", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let g = write(&dir, "p3.txt", "0 1\n1 2\n");
    let p = g.to_str().unwrap();
    assert_eq!(code(&lforce(&["verify", "--graph", p, "--set", "0,7"])), 2);
    assert_eq!(code(&lforce(&["verify", "--graph", p, "--set", "0;1"])), 1);
    let grid = write(&dir, "g.g6", "Gr`HOk");
    assert_eq!(
        code(&lforce(&[
            "compute",
            "--graph",
            grid.to_str().unwrap(),
            "--max-iterations",
            "1"
        ])),
        4
    );
}

#[test]
fn bench_emits_json_lines() {
    let out = lforce(&["bench", "--suite", "grids", "--limit", "4"]);
    assert_eq!(code(&out), 0);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 4);
    for r in &recs {
        assert_eq!(r["command"], "bench");
        assert_eq!(r["passed"], true);
        assert_eq!(r["bounds"]["lower"], r["z"]);
    }
}

#[test]
fn bench_cubic_accepts_named_graph6_input() {
    let dir = TempDir::new().unwrap();
    // K4 and the 3-cube, the latter under a reference name it does not match.
    let f = write(&dir, "cubic.g6", "C~\nGr`HOk Cubic_24_2\n");
    let out = lforce(&["bench", "--suite", "cubic", "--graph6", f.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let recs = json_lines(&out);
    assert_eq!(recs[0]["passed"], true);
    assert!(recs[0]["bounds"].is_null());
    assert_eq!(recs[1]["graph"]["label"], "Cubic_24_2");
    assert_eq!(recs[1]["passed"], false);

    let not_cubic = write(&dir, "p.g6", "Bw\n");
    let out = lforce(&[
        "bench",
        "--suite",
        "cubic",
        "--graph6",
        not_cubic.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}
