use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.grad"))
}

fn grad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grad")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_poly_id() {
    let f = corpus("poly_id");
    let o = grad(&["check", f.to_str().unwrap(), "--system", "dep", "--semiring", "linearity"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("Pi y :1 Unit. Unit"));
}

#[test]
fn check_reports_usage_of_defs() {
    let f = corpus("defs");
    let o = grad(&["check", f.to_str().unwrap(), "--system", "simple"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Unit\nusage: idu:1, k:1\n");
}

#[test]
fn heap_stuck_exits_2() {
    let f = corpus("stuck");
    let o = grad(&["eval", f.to_str().unwrap(), "--mode", "heap", "--semiring", "nat"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("grad:2:resource-exhausted x"), "{}", stderr(&o));
}

#[test]
fn type_error_exits_1() {
    let f = corpus("stuck");
    let o = grad(&["check", f.to_str().unwrap(), "--system", "simple"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("grad:1:usage-exceeded"));
}

#[test]
fn fuel_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("loop.grad");
    std::fs::write(&f, "main = (\\x :w Type. x x) (\\x :w Type. x x)\n").unwrap();
    let o = grad(&["eval", f.to_str().unwrap(), "--fuel", "50"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("grad:3:fuel-exhausted"));
    let o = grad(&["eval", f.to_str().unwrap(), "--mode", "heap", "--fuel", "50", "--system", "simple"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_config_exits_4() {
    let f = corpus("id");
    let o = grad(&["check", f.to_str().unwrap(), "--semiring", "no-such"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("grad:4:bad-semiring"));
    assert_eq!(grad(&["eval", "/nonexistent.grad"]).status.code(), Some(4));
    assert_eq!(grad(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(grad(&["props", "--suite", "nope"]).status.code(), Some(4));
}

#[test]
fn parse_error_is_positioned() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.grad");
    std::fs::write(&f, "main = (\\x :1 Unit. x\n").unwrap();
    let o = grad(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("grad:1:parse-error"));
}

#[test]
fn lattice_file_semiring() {
    let dir = tempfile::tempdir().unwrap();
    let lat = dir.path().join("lh.toml");
    std::fs::write(&lat, "name = \"lh\"\nelements = [\"Lo\", \"Hi\"]\ncovers = [[\"Lo\", \"Hi\"]]\nprivate = \"Lo\"\npublic = \"Hi\"\n").unwrap();
    let f = dir.path().join("p.grad");
    std::fs::write(&f, "main = (\\x :Hi Unit. x) unit\n").unwrap();
    let o = grad(&["check", f.to_str().unwrap(), "--semiring", lat.to_str().unwrap(), "--system", "simple"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "Unit\n");
}

#[test]
fn heap_eval_reports_resources() {
    let f = corpus("intro_trace");
    let o = grad(&["eval", f.to_str().unwrap(), "--mode", "heap", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("allowed: (0,0)\n"));
    assert!(out.contains("consumed: (3,1)\n"));
    assert_eq!(out.lines().filter(|l| l.contains("=>^1")).count(), 8);
}

#[test]
fn subst_eval() {
    let f = corpus("case");
    let o = grad(&["eval", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("unit\n"));
}

#[test]
fn graph_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.dot");
    let f = corpus("heap_ex");
    let o = grad(&["graph", f.to_str().unwrap(), "--steps", "3", "--dot", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.contains("n0 [label=\"vg\"]"));
    for edge in ["n0 -> n3 [label=\"1\"]", "n0 -> n2 [label=\"1\"]", "n3 -> n2 [label=\"2\"]", "n3 -> n1 [label=\"1\"]", "n2 -> n1 [label=\"2\"]"] {
        assert!(dot.contains(edge), "{edge}");
    }
    assert_eq!(dot.matches("->").count(), 5);
}

#[test]
fn props_conservation_seed_7() {
    let o = grad(&["props", "--suite", "conservation", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.ends_with(" ok")));
}

#[test]
fn output_is_byte_identical() {
    let f = corpus("heap_ex");
    let a = grad(&["eval", f.to_str().unwrap(), "--mode", "heap", "--trace"]);
    let b = grad(&["eval", f.to_str().unwrap(), "--mode", "heap", "--trace"]);
    assert_eq!(a.stdout, b.stdout);
    let a = grad(&["props", "--suite", "noninterference", "--seed", "11"]);
    let b = grad(&["props", "--suite", "noninterference", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
