use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn mckay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mckay")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn spec(name: &str) -> String {
    corpus(name).to_string_lossy().into_owned()
}

#[test]
fn group_info_reports() {
    let o = mckay(&["group-info", &spec("bd12.group")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("order: 12"));
    assert!(out.contains("classes: 6"));

    let out = stdout(&mckay(&["group-info", &spec("c7_124.group")]));
    assert!(out.contains("age census: 0:1 1:3 2:3"));
    assert!(out.contains("subgroups: 2"));
}

#[test]
fn malformed_spec_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.group");
    fs::write(&path, "kind = abelian\nn = 3\ngenerator = 1/7(1,2\n").unwrap();
    let o = mckay(&["group-info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    fs::write(&path, "kind = abelian\nn = 3\ngenerator = 1/7(1,2,3)\n").unwrap();
    let o = mckay(&["group-info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SL(3)"));

    let o = mckay(&["group-info", "no-such-file.group"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ages_table() {
    let out = stdout(&mckay(&["ages", &spec("c7_124.group")]));
    assert!(out.contains("junior classes: 3"));
    assert!(out.lines().any(|l| l.contains("1/7(1,2,4)") && l.ends_with("yes")));
    let out = stdout(&mckay(&["ages", &spec("terminal_5.group")]));
    assert!(out.contains("junior classes: 0"));
}

#[test]
fn mckay_quivers() {
    let out = stdout(&mckay(&["mckay", &spec("bd8.group")]));
    assert!(out.contains("dynkin: D~4"));
    let out = stdout(&mckay(&["mckay", &spec("bd20.group")]));
    assert!(out.contains("dynkin: D~7"));
    assert!(out.contains("irreducibles: 8"));
    let out = stdout(&mckay(&["mckay", &spec("a4.group")]));
    assert!(out.contains("dynkin: A~4"));

    let dot = stdout(&mckay(&["mckay", &spec("bd8.group"), "--format", "dot"]));
    assert!(dot.starts_with("graph mckay {"));
    assert_eq!(dot.matches(" -- ").count(), 4);
    let dot = stdout(&mckay(&["mckay", &spec("c7_124.group"), "--format", "dot"]));
    assert!(dot.starts_with("digraph mckay {"));
    let out = stdout(&mckay(&["mckay", &spec("c7_124.group")]));
    assert!(out.contains("dynkin: other"));
}

#[test]
fn stringy_routes() {
    let o = mckay(&["stringy", &spec("c7_124.group")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("route fan (deterministic): L^3 + 3*L^2 + 3*L (euler 7, polynomial yes)"));
    assert!(out.contains("route group: L^3 + 3*L^2 + 3*L"));
    assert!(out.contains("fan (deterministic) = group: PASS"));
    assert!(!out.contains("FAIL"));

    let out = stdout(&mckay(&["stringy", &spec("c7_124.group"), "--strategy", "alternate", "--route", "fan"]));
    assert!(out.contains("route fan (alternate): L^3 + 3*L^2 + 3*L"));

    let o = mckay(&["stringy", &spec("terminal_5.group")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("route fan: unavailable"));
    assert!(out.contains("L^4 + 4*L^2 (euler 5, polynomial yes)"));
    let o = mckay(&["stringy", &spec("terminal_5.group"), "--route", "fan"]);
    assert_eq!(o.status.code(), Some(2));

    let out = stdout(&mckay(&["stringy", &spec("trivial.group")]));
    assert!(out.contains("route group: L^3 "));

    let out = stdout(&mckay(&["stringy", &spec("bd8.group")]));
    assert!(out.contains("euler commuting-pairs: 5"));
    assert!(out.contains("euler commuting-pairs = classes: PASS"));
}

#[test]
fn json_is_versioned_and_deterministic() {
    let a = mckay(&["stringy", &spec("c7_124.group"), "--format", "json"]);
    let b = mckay(&["stringy", &spec("c7_124.group"), "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "mckay-report");
    assert_eq!(v["version"], 1);
    assert_eq!(v["command"], "stringy");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["data"]["routes"][1]["result"]["motive"], "L^3 + 3*L^2 + 3*L");
    assert_eq!(v["data"]["euler"], "7");
}

#[test]
fn toric_outputs() {
    let out = stdout(&mckay(&["toric", &spec("c7_124.group")]));
    assert!(out.contains("triangles: 7 edges: 12 vertices: 6"));
    assert!(out.contains("smooth: yes"));
    let a = mckay(&["toric", &spec("c7_124.group"), "--format", "svg"]);
    let b = mckay(&["toric", &spec("c7_124.group"), "--format", "svg"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("<svg"));
    assert_eq!(stdout(&a).matches("<circle").count(), 6);

    let out = stdout(&mckay(&["toric", &spec("klein_cube.group"), "--chop"]));
    assert!(out.contains("central cell: 6 vertices, volume 4"));
    assert!(out.contains("resolution: no"));

    let o = mckay(&["toric", &spec("bd8.group")]);
    assert_eq!(o.status.code(), Some(2));
    let o = mckay(&["toric", &spec("a1.group"), "--format", "svg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn arcs_agreement() {
    let o = mckay(&["arcs", "--multiplicities", "1,1", "--discrepancies", "1,2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("agreement depth: 10"));
    assert!(out.contains("closed form: (L^5)/(L^3 + 2*L^2 + 2*L + 1)"));
    assert!(out.contains("level 1: L - 2 + L^-1"));

    let out = stdout(&mckay(&["arcs", "--multiplicities", "1", "--depth", "10", "--truncation", "3"]));
    assert!(out.contains("agreement depth: 7"), "{out}");

    let o = mckay(&["arcs", "--multiplicities", "1,x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ghilb_clusters() {
    let o = mckay(&["ghilb", &spec("c7_124.group")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("torus-fixed clusters: 7 (|G| = 7)"));
    assert_eq!(out.matches("check: regular representation").count(), 7);
    assert!(!out.contains("nonconforming"));
    let out = stdout(&mckay(&["ghilb", &spec("a1.group")]));
    assert!(out.contains("##"));
    let o = mckay(&["ghilb", &spec("bd8.group")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invariants_and_relation() {
    let o = mckay(&[
        "invariants",
        &spec("bd12.group"),
        "--poly",
        "u^6 + v^6",
        "--poly",
        "u^2*v^2",
        "--poly",
        "u*v*(u^6 - v^6)",
        "--poly",
        "u^2 + v^2",
        "--relation",
        "z^2 - y*x^2 + 4*y^4",
        "--bind",
        "x=u^6 + v^6",
        "--bind",
        "y=u^2*v^2",
        "--bind",
        "z=u*v*(u^6 - v^6)",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.matches(": invariant").count(), 3);
    assert!(out.contains("u^2 + v^2: not invariant"));
    assert!(out.contains(": holds"));
}

#[test]
fn verify_corpus() {
    let o = mckay(&["verify", &spec("")]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains(" 0 failed"));
    assert!(!out.contains("FAIL"));

    let dir = tempfile::tempdir().unwrap();
    let o = mckay(&["verify", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("warning: no group specs found"));

    let path = dir.path().join("wrong.group");
    fs::write(&path, "kind = abelian\nn = 3\ngenerator = 1/7(1,2,4)\nexpect.stringy = L^3 + 3*L^2 + 2*L\n").unwrap();
    let o = mckay(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL wrong.group expect.stringy: expected L^3 + 3*L^2 + 2*L, got L^3 + 3*L^2 + 3*L"), "{out}");

    let o = mckay(&["verify", dir.path().to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["data"]["failed"], 1);

    fs::write(&path, "kind = abelian\nn = 3\ngenerator = 1/7(1,2,4)\nexpect.colour = blue\n").unwrap();
    assert_eq!(mckay(&["verify", dir.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_file_and_format_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let o = mckay(&["group-info", &spec("a1.group"), "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(&path).unwrap().contains("order: 2"));

    let o = mckay(&["ages", &spec("a1.group"), "--format", "dot"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mckay(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
