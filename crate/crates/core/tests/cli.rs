mod common;

use std::path::Path;
use std::process::{Command, Output};

use hyperphase::model::read_edge_list;

fn hyperphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperphase")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_writes_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.txt");
    let o = hyperphase(&["generate", "--n", "5", "--r", "3", "--p", "1", "--out", p(&full)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "10");
    let h = read_edge_list(std::fs::read(&full).unwrap().as_slice()).unwrap();
    assert_eq!(h.num_edges(), 10);

    let empty = dir.path().join("empty.txt");
    let o = hyperphase(&["generate", "--n", "5", "--r", "3", "--p", "0", "--out", p(&empty)]);
    assert_eq!(stdout(&o).trim(), "0");
    assert_eq!(std::fs::read_to_string(&empty).unwrap(), "5 3 0\n");
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let o = hyperphase(&["generate", "--n", "40", "--r", "3", "--s", "1", "--c", "1.2", "--seed", "17", "--out", p(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dir.path().join("c.txt");
    hyperphase(&["generate", "--n", "40", "--r", "3", "--s", "1", "--c", "1.2", "--seed", "18", "--out", p(&c)]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn generate_capacity_exit_code() {
    let o = hyperphase(&["generate", "--n", "300", "--r", "4", "--p", "0", "--method", "enumerate"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn components_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.txt");
    std::fs::write(&one, "4 3 1\n0 1 2\n").unwrap();
    let o = hyperphase(&["components", "--input", p(&one), "--s", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 3\n3 1\nlargest=3 second=1 count=2\n");

    let none = dir.path().join("none.txt");
    std::fs::write(&none, "4 3 0\n").unwrap();
    let o = hyperphase(&["components", "--input", p(&none), "--s", "2"]);
    assert_eq!(stdout(&o).lines().last().unwrap(), "largest=1 second=1 count=6");

    let o = hyperphase(&["components", "--input", p(&one), "--s", "1", "--members"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "0 3 0 1 2");
}

#[test]
fn components_match_oracle_on_random_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.txt");
    hyperphase(&["generate", "--n", "10", "--r", "4", "--p", "0.03", "--seed", "5", "--out", p(&file)]);
    let h = read_edge_list(std::fs::read(&file).unwrap().as_slice()).unwrap();
    for (s, v) in common::valid_orders(4) {
        let o = hyperphase(&["components", "--input", p(&file), "--s", &s.to_string(), "--variant", v.name()]);
        let sizes = common::sizes_of(&common::bfs_labels(&h, s, v));
        let want = format!("largest={} second={} count={}", sizes[0], sizes.get(1).copied().unwrap_or(0), sizes.len());
        assert_eq!(stdout(&o).lines().last().unwrap(), want, "{v} s={s}");
    }
}

#[test]
fn malformed_input_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    for text in ["4 3 1\n0 2 1\n", "4 3 2\n0 1 2\n", "4 3 1\n0 1 9\n", "x y z\n", "4 3 1\n0 1\n"] {
        std::fs::write(&bad, text).unwrap();
        let o = hyperphase(&["components", "--input", p(&bad), "--s", "1"]);
        assert_eq!(o.status.code(), Some(4), "{text:?}");
    }
}

#[test]
fn explore_traces() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.txt");
    std::fs::write(&one, "4 3 1\n0 1 2\n").unwrap();
    let o = hyperphase(&["explore", "--input", p(&one), "--s", "1", "--start", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "halt=exhausted visited=3 live=0 queried=4");
    assert_eq!(lines.next().unwrap(), "visited: 0 2 1");

    let none = dir.path().join("none.txt");
    std::fs::write(&none, "6 3 0\n").unwrap();
    let o = hyperphase(&["explore", "--input", p(&none), "--s", "1", "--start", "2", "--epsilon", "0.5"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "halt=exhausted visited=1 live=0 queried=10");
    let o = hyperphase(&["explore", "--input", p(&none), "--s", "1", "--start", "99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bp_csv() {
    let o = hyperphase(&["bp", "--m", "2", "--c", "0.000001", "--runs", "1000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "T,count");
    assert_eq!(*rows.last().unwrap(), "inf,0");
    let ones: u64 = rows[1].strip_prefix("1,").unwrap().parse().unwrap();
    assert!(ones >= 995);
    let again = hyperphase(&["bp", "--m", "2", "--c", "0.000001", "--runs", "1000", "--seed", "1"]);
    assert_eq!(again.stdout, o.stdout);
    assert_eq!(hyperphase(&["bp", "--m", "2", "--c", "-1"]).status.code(), Some(2));
}

#[test]
fn solve_lines() {
    let o = hyperphase(&["solve", "--r", "3", "--s", "2", "--c", "1"]);
    assert_eq!(stdout(&o), "c_star=0.5 x=0.450763652 z=0.549236348\n");
    let o = hyperphase(&["solve", "--r", "4", "--s", "2", "--c", "2", "--variant", "loose_set"]);
    assert_eq!(stdout(&o), "c_star=1 x=0.20318787 z=0.79681213\n");
    assert_eq!(hyperphase(&["solve", "--r", "3", "--s", "0", "--c", "1"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(
        &cfg,
        "r = 3\ns = 1\nn_list = [30, 40]\nc_list = [0.3, 1.5]\ntrials = 3\nmaster_seed = 11\n",
    )
    .unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert_eq!(hyperphase(&["sweep", "--config", p(&cfg), "--out", p(&a), "--threads", "1"]).status.code(), Some(0));
    assert_eq!(hyperphase(&["sweep", "--config", p(&cfg), "--out", p(&b), "--threads", "4"]).status.code(), Some(0));
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().count(), 1 + 4 * 3);
    assert!(text.starts_with("r,s,n,c,p,variant,trial,edges,largest,second,components,pred_z,pred_giant,elapsed_ms\n"));
}

#[test]
fn trivial_sweep_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("zero.toml");
    std::fs::write(&cfg, "r = 3\ns = 1\nn_list = [10]\nc_list = [0]\ntrials = 1\nmaster_seed = 0\n").unwrap();
    let o = hyperphase(&["sweep", "--config", p(&cfg)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1], "3,1,10,0,0,standard,0,0,1,1,10,0,0,");
}

#[test]
fn sweep_capacity_names_the_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("big.toml");
    std::fs::write(
        &cfg,
        "r = 3\ns = 2\nn_list = [10, 5000]\nc_list = [1.0]\ntrials = 1\nmaster_seed = 0\nindex_space_cap = 1000000\n",
    )
    .unwrap();
    let o = hyperphase(&["sweep", "--config", p(&cfg)]);
    assert_eq!(o.status.code(), Some(5));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("grid point 1") && err.contains("n=5000"), "{err}");
    assert!(o.stdout.is_empty());
}
