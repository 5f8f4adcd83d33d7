use std::process::{Command, Output};

use proptest::prelude::*;
use thetagraph_cli::report::{Report, ReportKind, VerifyDocument};
use thetagraph_cli::{commands, RunConfig};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetagraph"))
        .args(args)
        .env_remove("THETA_TRIAL_DIVISION_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn predict_worked_example() {
    let o = run(&["predict", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("A: {1x1, 9x2}; tree depth 2"), "{s}");
    assert!(s.contains("B: {6x1}; tree depth 3"), "{s}");
    assert!(s.contains("inf: tree depth 3"), "{s}");
}

#[test]
fn predict_degree_one() {
    let s = stdout(&run(&["predict", "-n", "1"]));
    assert!(s.contains("A: {1x1}"), "{s}");
    assert!(s.contains("B: {}; tree depth 3"), "{s}");
}

#[test]
fn predict_json_matches_text() {
    let o = run(&["predict", "-n", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((r.schema, r.kind, r.p, r.n), (1, ReportKind::Predict, 5, 3));
    assert_eq!(r.modulus, vec![3, 3, 0, 1]);
    let sides = r.sides.unwrap();
    let a = sides.a.unwrap();
    let cycles: Vec<_> = a.cycles.iter().map(|e| (e.length, e.count)).collect();
    assert_eq!(cycles, vec![(1, 1), (9, 2)]);
    assert_eq!(a.tree.unwrap().depth, 2);
    assert_eq!(sides.b.unwrap().tree.unwrap().depth, 3);
    assert_eq!(r.infinity_tree.unwrap().depth, 3);
}

#[test]
fn predict_one_side() {
    let r: Report = serde_json::from_slice(&run(&["predict", "-n", "3", "--side", "B", "--json"]).stdout).unwrap();
    let sides = r.sides.unwrap();
    assert!(sides.a.is_none() && sides.b.is_some());
    assert!(r.components.iter().all(|c| c.side.as_deref() == Some("B")));
}

#[test]
fn enumerate_reports_components() {
    let r: Report = serde_json::from_slice(&run(&["enumerate", "-n", "3", "--json"]).stdout).unwrap();
    let mut sizes: Vec<u64> = r.components.iter().map(|c| c.size).collect();
    sizes.sort();
    assert_eq!(sizes, vec![6, 36, 36, 48]);
    let r: Report = serde_json::from_slice(&run(&["enumerate", "-n", "1", "--json"]).stdout).unwrap();
    assert_eq!(r.components.len(), 1);
    assert_eq!(r.components[0].size, 6);
}

#[test]
fn enumerate_other_characteristic() {
    let o = run(&["enumerate", "-n", "2", "-p", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.sides.is_none() && r.partition.is_none());
    assert_eq!(r.components.iter().map(|c| c.size).sum::<u64>(), 50);
    assert!(!r.spectrum.is_empty());
}

#[test]
fn verify_small_fields() {
    for n in 1..=6 {
        let o = run(&["verify", "-n", &n.to_string()]);
        assert_eq!(o.status.code(), Some(0), "n={n}");
        assert_eq!(stdout(&o), format!("PASS n={n}\n"));
    }
    let doc: VerifyDocument = serde_json::from_slice(&run(&["verify", "-n", "2", "--json"]).stdout).unwrap();
    assert!(doc.passed && doc.mismatches.is_empty());
}

#[test]
fn verify_negative_controls() {
    // flipped doubling rule
    for n in ["2", "3", "4"] {
        let o = run(&["verify", "-n", n, "--epsilon-rule", "inverted"]);
        assert_eq!(o.status.code(), Some(4), "n={n}");
    }
    let o = run(&["verify", "-n", "2", "--epsilon-rule", "inverted"]);
    let s = stdout(&o);
    assert!(s.starts_with("FAIL n=2") && s.contains("cycles of length"), "{s}");
    // per-factor agreement is wrong at n = 4
    let o = run(&["verify", "-n", "4", "--epsilon-rule", "per-factor", "--json"]);
    assert_eq!(o.status.code(), Some(4));
    let doc: VerifyDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!doc.passed);
    assert!(doc.mismatches.iter().any(|m| m.starts_with("side B cycle spectrum")));
}

#[test]
fn export_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.dot");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["export-dot", "-n", "3", "-o", p]).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(first, include_bytes!("fixtures/theta_n3.dot"));
    assert_eq!(run(&["export-dot", "-n", "3", "-o", p]).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first);

    assert_eq!(run(&["export-dot", "-n", "3", "--split", "-o", p]).status.code(), Some(0));
    let mut edges = 0;
    for i in 1..=4 {
        let part = std::fs::read_to_string(dir.path().join(format!("graph_{i}.dot"))).unwrap();
        assert!(part.starts_with("digraph{\n") && part.ends_with("}\n"));
        edges += part.lines().filter(|l| l.contains("->")).count();
    }
    assert_eq!(edges, 126);
    assert!(!dir.path().join("graph_5.dot").exists());

    let s = stdout(&run(&["export-dot", "-n", "1", "--labels", "poly"]));
    assert!(s.contains("\"1\" -> \"2\";"), "{s}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["predict"]).status.code(), Some(2));
    assert_eq!(run(&["predict", "-n", "2", "-p", "7"]).status.code(), Some(2));
    assert_eq!(run(&["predict", "-n", "2", "--modulus", "1,0,1"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "-n", "11"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_thetagraph"))
        .args(["predict", "-n", "12"])
        .env("THETA_TRIAL_DIVISION_BOUND", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cofactor"));
    let o = Command::new(env!("CARGO_BIN_EXE_thetagraph"))
        .args(["predict", "-n", "3"])
        .env("THETA_TRIAL_DIVISION_BOUND", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["export-dot", "-n", "1", "-o", "/nonexistent-dir/x.dot"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn modulus_override_keeps_structure() {
    let a: Report = serde_json::from_slice(&run(&["enumerate", "-n", "2", "--json"]).stdout).unwrap();
    let b: Report =
        serde_json::from_slice(&run(&["enumerate", "-n", "2", "--modulus", "2,1,1", "--json"]).stdout).unwrap();
    assert_eq!(b.modulus, vec![2, 1, 1]);
    assert_eq!(a.sides, b.sides);
    assert_eq!(a.partition, b.partition);
    assert_eq!(run(&["verify", "-n", "2", "--modulus", "2,1,1"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [["predict", "-n", "5"], ["enumerate", "-n", "4"]] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_round_trip(n in 1u32..=5, enumerate in any::<bool>()) {
        let cfg = RunConfig { json: true, ..RunConfig::new(n) };
        let r = if enumerate { commands::enumerate(&cfg) } else { commands::predict(&cfg) }.unwrap();
        let text = commands::render_report(&cfg, &r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(commands::render_report(&cfg, &back).unwrap(), text);
    }
}
