use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hyperturan::hgfile::parse_hg;
use hyperturan::RGraph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperturan"))
}

fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .env_remove("HYPERTURAN_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn gen(args: &[&str]) -> RGraph {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success());
    parse_hg(&stdout(&o)).unwrap()
}

#[test]
fn gen_outputs_round_trip() {
    let t = gen(&["--turan", "6", "3"]);
    assert_eq!((t.n(), t.r(), t.len()), (6, 3, 8));
    let cases: [&[&str]; 6] = [
        &["--t", "4", "1"],
        &["--fano"],
        &["--sts9"],
        &["--doubled-link", "6", "3"],
        &["--crossing-link", "6", "3"],
        &["--fano", "--blowup", "2,1,1,1,1,1,1"],
    ];
    for args in cases {
        let g = gen(args);
        let again = parse_hg(&hyperturan::hgfile::write_hg(&g)).unwrap();
        assert_eq!(again, g);
    }
    assert_eq!(gen(&["--fano", "--blowup", "2,1,1,1,1,1,1"]).len(), 10);
}

#[test]
fn gen_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.hg");
    let o = run(&["gen", "--turan", "7", "2", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let g = parse_hg(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(g.len(), 12);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.hg", "3 7\n1 2 3\n1 4 5\n2 4 6\n");
    let free = run(&["check", "--pattern", "tfam", &t, "--expect-free"]);
    assert_eq!(free.status.code(), Some(0));
    let tri = write(dir.path(), "tri.hg", "2 3\n1 2\n2 3\n1 3\n");
    let hit = run(&["check", "--pattern", "delta", &tri]);
    assert_eq!(hit.status.code(), Some(0));
    assert!(stdout(&hit).contains("result.free = false"));
    let strict = run(&["check", "--pattern", "delta", &tri, "--expect-free"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.hg", "3 5\n1 2\n");
    let o = run(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(
        run(&["lagrangian", "/nonexistent.hg"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let g = write(dir.path(), "g.hg", "3 4\n1 2 3\n");
    assert_eq!(
        run(&["check", "--pattern", "zigzag", &g]).status.code(),
        Some(2)
    );
    let w = write(dir.path(), "w.txt", "0.5\n0.2\n0.2\n0.2\n");
    assert_eq!(run(&["entropy", &g, &w]).status.code(), Some(2));
}

#[test]
fn scale_guard_exit_code() {
    let o = run(&["extremal", "--n", "30", "--r", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["extremal", "--n", "30", "--r", "3", "--incomplete"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result.complete = false"));
}

#[test]
fn lagrangian_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "fano.hg", &stdout(&run(&["gen", "--fano"])));
    let o = run(&["--format", "json", "lagrangian", &f]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "lagrangian");
    assert_eq!(v["result"]["certified"], true);
    assert_eq!(v["result"]["exact_value"], "1/27");
    assert!(v["config"]["tol"].is_number());
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value - 1.0 / 27.0).abs() < 1e-12);
}

#[test]
fn entropy_with_weights_and_at_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "e.hg", "3 3\n1 2 3\n");
    let w = write(dir.path(), "w.txt", "0.2\n0.3\n0.5\n");
    let o = run(&["--format", "json", "entropy", &g, &w]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let h = v["result"]["report"]["prefix_entropies"]
        .as_array()
        .unwrap();
    // A single edge under any positive weights: all orderings equally likely.
    let expect = [3f64.log2(), 6f64.log2(), 6f64.log2()];
    for (a, b) in h.iter().zip(expect) {
        assert!((a.as_f64().unwrap() - b).abs() < 1e-12);
    }
    let o = run(&["--format", "json", "entropy", &g]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(
        v["result"]["optimal_identity"]["residual"]
            .as_f64()
            .unwrap()
            < 1e-9
    );
}

#[test]
fn extremal_witness_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w");
    let o = run(&[
        "extremal",
        "--n",
        "5",
        "--r",
        "2",
        "--pattern",
        "delta",
        "--witnesses",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let files: Vec<_> = fs::read_dir(&out).unwrap().collect();
    assert_eq!(files.len(), 1);
    let g = parse_hg(&fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap()).unwrap();
    assert_eq!(g.len(), 6);
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "g.hg",
        "3 6\n1 2 6\n1 3 6\n1 4 5\n1 4 6\n1 5 6\n2 3 4\n2 4 5\n2 5 6\n3 4 5\n3 4 6\n",
    );
    let cmds: [&[&str]; 4] = [
        &["lagrangian", &f],
        &["lagrangian", "--mode", "heuristic", "--restarts", "8", &f],
        &["extremal", "--n", "6", "--r", "3"],
        &["symmetrize", &f],
    ];
    for args in cmds {
        let outs: Vec<Vec<u8>> = ["1", "4"]
            .iter()
            .flat_map(|t| {
                let mut full = vec!["--format", "json", "--threads", t];
                full.extend_from_slice(args);
                [run(&full).stdout, run(&full).stdout]
            })
            .collect();
        assert!(!outs[0].is_empty());
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn survey_and_symmetrize() {
    let o = run(&["survey", "--r", "3", "--l", "1", "--n-max", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("result.all_certified = true"));
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "b.hg",
        &stdout(&run(&["gen", "--fano", "--blowup", "2,2,1,1,1,1,1"])),
    );
    let o = run(&["--format", "json", "symmetrize", &f]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["symmetrization"]["pattern_graph"]["n"], 7);
    assert_eq!(v["result"]["symmetrization"]["is_symmetrized"], true);
}

#[test]
fn verify_subset() {
    let o = run(&["verify", "--suite", "quick", "--only", "1,10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    assert!(text.contains("2 passed, 0 failed"));
}
