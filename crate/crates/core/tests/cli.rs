use std::path::Path;
use std::process::{Command, Output};

fn isogrowth(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isogrowth")).args(args).current_dir(dir).output().unwrap()
}

fn entries(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> =
        std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    names
}

#[test]
fn growth_csv_matches_tree_balls() {
    let dir = tempfile::tempdir().unwrap();
    let out = isogrowth(dir.path(), &["growth", "-f", "tree:3", "--radius", "6", "--rmax", "3", "--out", "g.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("g.csv")).unwrap();
    let root_rows: Vec<&str> = csv.lines().filter(|l| l.starts_with("()")).collect();
    assert_eq!(root_rows, ["(),0,1", "(),1,4", "(),2,10", "(),3,22"]);
    assert!(dir.path().join("g.csv.run.json").exists());
}

#[test]
fn gen_round_trips_through_graph_flag() {
    let dir = tempfile::tempdir().unwrap();
    assert!(isogrowth(dir.path(), &["gen", "grid:2", "--radius", "5", "--out", "grid.txt"]).status.success());
    let out = isogrowth(dir.path(), &["phi", "13", "--graph", "grid.txt"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim() == "phi = 2"), "{text}");
}

#[test]
fn check_prints_summary_without_out() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.txt"), "()\n").unwrap();
    let out = isogrowth(dir.path(), &["check", "-f", "tree:3", "--radius", "8", "--set", "a.txt", "--rmax", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("boundary = 3"), "{text}");
}

#[test]
fn validation_errors_exit_2_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["growth", "-f", "nosuch:3", "--radius", "4", "--rmax", "2", "--out", "x.csv"],
        &["growth", "-f", "tree:3", "--rmax", "2", "--out", "x.csv"],
        &["growth", "-f", "tree:3", "--radius", "4", "--rmax", "9", "--out", "x.csv"],
        &["profile", "-f", "grid:2", "--radius", "8", "--nmax", "4", "--mode", "all", "--out", "x.csv"],
        &["pinch", "-f", "tree:3", "--radius", "6", "--rmax", "3", "--pinch", "0.5,2", "--out", "x.txt"],
        &["branchcheck", "2", "-f", "grid:2", "--radius", "4", "--out", "x.txt"],
    ];
    for args in cases {
        let out = isogrowth(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
        assert!(entries(dir.path()).is_empty(), "{args:?} left {:?}", entries(dir.path()));
    }
}

#[test]
fn io_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = isogrowth(dir.path(), &["check", "-f", "tree:3", "--radius", "6", "--set", "missing.txt", "--out", "x.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(entries(dir.path()).is_empty());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(isogrowth(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(isogrowth(dir.path(), &["growth", "-f", "tree:3", "--graph", "g.txt", "--rmax", "2"]).status.code(), Some(2));
}
