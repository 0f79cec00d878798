use std::path::Path;
use std::process::{Command, Output};

fn ezdiag(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ezdiag")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_examples() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = ezdiag(dir.path(), &["examples", "--out", "examples"]);
    assert!(o.status.success());
    dir
}

#[test]
fn homology_of_the_minimal_box_product() {
    let dir = with_examples();
    let o = ezdiag(dir.path(), &["homology", "examples/box-min-square-product"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H_0 = Z^1\nH_1 = Z^1\nH_2 = Z^1\n");
}

#[test]
fn describe_the_empty_complex() {
    let dir = with_examples();
    let o = ezdiag(dir.path(), &["--format", "records", "describe", "examples/simplex-empty"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"bound\":2,\"category\":\"simplex\",\"census\":[]}\n");
}

#[test]
fn ezsquare_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = ezdiag(dir.path(), &["verify", "--suite", "ezsquare", "--category", "simplex", "--degree-bound", "2", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn records_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--suite", "skeletal", "--category", "box", "--seed", "9", "--format", "records", "--samples", "4"];
    let a = ezdiag(dir.path(), &args);
    let b = ezdiag(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn skeleton_round_trips() {
    let dir = with_examples();
    let o = ezdiag(dir.path(), &["skeleton", "--n", "1", "examples/simplex-rep-2"]);
    assert!(o.status.success());
    std::fs::write(dir.path().join("sk"), &o.stdout).unwrap();
    let d = ezdiag(dir.path(), &["describe", "sk"]);
    assert!(stdout(&d).contains("degree 0: 3\ndegree 1: 3\n"));
    let again = ezdiag(dir.path(), &["skeleton", "--n", "1", "sk"]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn exit_codes() {
    let dir = with_examples();
    std::fs::write(dir.path().join("bad"), "cell x : 0\n").unwrap();
    assert_eq!(ezdiag(dir.path(), &["describe", "bad"]).status.code(), Some(2));
    assert_eq!(ezdiag(dir.path(), &["describe", "missing"]).status.code(), Some(2));
    assert_eq!(ezdiag(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(ezdiag(dir.path(), &["verify", "--suite", "nope"]).status.code(), Some(2));
    let rep = "examples/simplex-pair-rep-1-1";
    assert_eq!(ezdiag(dir.path(), &["diag", "--mode", "join", "--degree-bound", "2", rep]).status.code(), Some(3));
    assert_eq!(ezdiag(dir.path(), &["homology", rep]).status.code(), Some(4));
    assert_eq!(ezdiag(dir.path(), &["diag", "--mode", "geom", rep]).status.code(), Some(4));
}

#[test]
fn diagonal_and_latching_of_a_representable() {
    let dir = with_examples();
    let rep = "examples/simplex-pair-rep-1-1";
    let o = ezdiag(dir.path(), &["diag", "--mode", "cat", rep]);
    assert!(o.status.success());
    std::fs::write(dir.path().join("diag"), &o.stdout).unwrap();
    let h = ezdiag(dir.path(), &["homology", "diag"]);
    assert_eq!(stdout(&h), "H_0 = Z^1\nH_1 = 0\nH_2 = 0\n");

    let l = ezdiag(dir.path(), &["latch", "--object", "1", rep]);
    assert_eq!(l.status.code(), Some(0));
    assert!(stdout(&l).contains("# formula at 1: PASS 6 vs 6"));
}

#[test]
fn boundary_of_a_square() {
    let dir = tempfile::tempdir().unwrap();
    let o = ezdiag(dir.path(), &["--category", "box", "boundary", "--object", "2"]);
    std::fs::write(dir.path().join("b"), &o.stdout).unwrap();
    assert_eq!(stdout(&ezdiag(dir.path(), &["homology", "b"])), "H_0 = Z^1\nH_1 = Z^1\n");
}
