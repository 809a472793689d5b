use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tempspan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tempspan")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.split_whitespace()
        .find_map(|tok| tok.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key}= in {text:?}"))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn check_reports_class_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let edge = dir.path().join("edge.tg");
    fs::write(&edge, "2 1\n0 1 1\n").unwrap();
    let o = tempspan(&["check", p(&edge)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tc=true simple=true proper=true happy=true"));

    let empty = dir.path().join("empty.tg");
    fs::write(&empty, "3 1\n").unwrap();
    let o = tempspan(&["check", p(&empty)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(field(&stdout(&o), "tc"), "false");
}

#[test]
fn gen_random_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tg");
    let b = dir.path().join("b.tg");
    assert!(tempspan(&["gen-random", "--n", "8", "--seed", "7", "--out", p(&a)]).status.success());
    assert!(tempspan(&["gen-random", "--n", "8", "--seed", "7", "--out", p(&b)]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let o = tempspan(&["check", p(&a)]);
    assert!(stdout(&o).starts_with("tc=true simple=true proper=true happy=true"));
}

#[test]
fn xp_and_exact_agree_on_size() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.tg");
    assert!(tempspan(&["gen-random", "--n", "7", "--seed", "7", "--cover", "3", "--out", p(&g)]).status.success());
    let exact = stdout(&tempspan(&["solve", p(&g), "--method", "exact"]));
    let xp = stdout(&tempspan(&["solve", p(&g), "--method", "xp-vc"]));
    assert_eq!(field(&exact, "size"), field(&xp, "size"));
    assert_eq!(field(&xp, "method"), "xp-vc");
}

#[test]
fn solve_budget_and_spanner_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.tg");
    let s = dir.path().join("s.txt");
    assert!(tempspan(&["gen-random", "--n", "6", "--seed", "3", "--out", p(&g)]).status.success());
    let o = tempspan(&["solve", p(&g), "--out", p(&s), "--triples"]);
    assert_eq!(o.status.code(), Some(0));
    let size: usize = field(&stdout(&o), "size").parse().unwrap();
    assert_eq!(tempspan(&["verify", p(&g), p(&s), "--triples"]).status.code(), Some(0));
    let o = tempspan(&["decompose", p(&g), p(&s), "--triples"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let tight = (size - 1).to_string();
    assert_eq!(tempspan(&["solve", p(&g), "--budget", &tight]).status.code(), Some(1));
    assert_eq!(tempspan(&["solve", p(&g), "--budget", &size.to_string()]).status.code(), Some(0));

    // Dropping the first kept edge of a minimum spanner breaks it.
    let text = fs::read_to_string(&s).unwrap();
    let fewer: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    fs::write(&s, fewer).unwrap();
    assert_eq!(tempspan(&["verify", p(&g), p(&s), "--triples"]).status.code(), Some(1));
}

#[test]
fn resource_guard_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.tg");
    assert!(tempspan(&["gen-random", "--n", "9", "--seed", "1", "--p", "0.9", "--out", p(&g)]).status.success());
    assert_eq!(tempspan(&["solve", p(&g), "--cap", "2"]).status.code(), Some(2));
    assert_eq!(tempspan(&["check", "/nonexistent/file.tg"]).status.code(), Some(3));
    assert_eq!(tempspan(&["frobnicate"]).status.code(), Some(3));
    let bad = dir.path().join("bad.tg");
    fs::write(&bad, "2 1\n0 1 0\n").unwrap();
    assert_eq!(tempspan(&["check", p(&bad)]).status.code(), Some(3));
}

#[test]
fn reduce_sat_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    fs::write(&cnf, "c two clauses\np cnf 3 2\n1 -2 3 0\n-1 2 2 0\n").unwrap();
    let o = tempspan(&["reduce-sat", p(&cnf), "--assignment", "1,1,0", "--out-dir", p(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let tg = dir.path().join("out.tg");
    let check = stdout(&tempspan(&["check", p(&tg)]));
    assert!(check.starts_with("tc=true simple=true proper=true happy=true"));
    let budget: usize = fs::read_to_string(dir.path().join("out.budget")).unwrap().trim().parse().unwrap();
    let v = tempspan(&["verify", p(&tg), p(&dir.path().join("out.witness"))]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(field(&stdout(&v), "size"), budget.to_string());
    for ext in ["critical", "roles"] {
        assert!(dir.path().join(format!("out.{ext}")).exists());
    }

    // The unsatisfying assignment is refused.
    let o = tempspan(&["reduce-sat", p(&cnf), "--assignment", "1,0,0", "--out-dir", p(dir.path())]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reduce_sat_two_source() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    fs::write(&cnf, "p cnf 1 1\n1 1 1 0\n").unwrap();
    let o = tempspan(&["reduce-sat", p(&cnf), "--two-source", "--assignment", "1", "--out-dir", p(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let sources = fs::read_to_string(dir.path().join("out.sources")).unwrap();
    let ab: Vec<&str> = sources.split_whitespace().collect();
    let tg = dir.path().join("out.tg");
    let w = dir.path().join("out.witness");
    let v = tempspan(&["verify", p(&tg), p(&w), "--two-source", ab[0], ab[1]]);
    assert_eq!(v.status.code(), Some(0));
    let budget = fs::read_to_string(dir.path().join("out.budget")).unwrap();
    let solved = stdout(&tempspan(&["solve", p(&tg), "--two-source", ab[0], ab[1], "--budget", budget.trim()]));
    assert_eq!(field(&solved, "within_budget"), "true");
}

#[test]
fn reduce_mcc_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let mcc = dir.path().join("k3.mcc");
    let mut text = String::from("3 2\n");
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for a in 0..2 {
            for b in 0..2 {
                text.push_str(&format!("{i} {a} {j} {b}\n"));
            }
        }
    }
    fs::write(&mcc, text).unwrap();
    let o = tempspan(&["reduce-mcc", p(&mcc), "--clique", "1,0,1", "--out-dir", p(dir.path()), "--prefix", "k3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let tg = dir.path().join("k3.tg");
    assert_eq!(field(&stdout(&tempspan(&["check", p(&tg)])), "tc"), "true");
    let v = stdout(&tempspan(&["verify", p(&tg), p(&dir.path().join("k3.witness"))]));
    let budget = fs::read_to_string(dir.path().join("k3.budget")).unwrap();
    assert_eq!(field(&v, "valid"), "true");
    assert_eq!(field(&v, "size"), budget.trim());
    for ext in ["fvs", "gadgets", "roles"] {
        assert!(dir.path().join(format!("k3.{ext}")).exists());
    }
}

#[test]
fn json_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.tg");
    assert!(tempspan(&["gen-random", "--n", "5", "--seed", "2", "--out", p(&g)]).status.success());
    let o = tempspan(&["--json", "solve", p(&g)]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["command", "input_digest", "method", "optimal", "result", "size", "wall_ms"]);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["method"], "exact");
    assert_eq!(v["result"]["kept"].as_array().unwrap().len() as u64, v["size"].as_u64().unwrap());
}

#[test]
fn flag_aliases_and_undecomposable_spanner() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.tg");
    assert!(tempspan(&["gen-random", "--n", "6", "--seed", "1", "--p", "0.9", "--out", p(&g)]).status.success());
    let strict = stdout(&tempspan(&["solve", p(&g), "--strict"]));
    let nonstrict = stdout(&tempspan(&["solve", p(&g), "--nonstrict"]));
    // Happy graphs: both semantics agree.
    assert_eq!(field(&strict, "size"), field(&nonstrict, "size"));
    assert_eq!(tempspan(&["solve", p(&g), "--strict", "--non-strict"]).status.code(), Some(3));
    let size: usize = field(&strict, "size").parse().unwrap();
    assert_eq!(tempspan(&["solve", p(&g), "--k", &(size - 1).to_string()]).status.code(), Some(1));

    // The whole edge set of this dense graph is far from minimum.
    let m = edge_lines(&g);
    let all = dir.path().join("all.txt");
    fs::write(&all, (0..m).map(|i| format!("{i}\n")).collect::<String>()).unwrap();
    let o = tempspan(&["decompose", "--vc", p(&g), p(&all)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().next(), Some("NOT-DECOMPOSABLE"));
}

fn edge_lines(path: &Path) -> usize {
    let text = fs::read_to_string(path).unwrap();
    text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).count() - 1
}
