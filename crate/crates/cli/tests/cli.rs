use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn extform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = extform(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = extform(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}; stderr: {}", String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }

    fn zoo(&self, family: &str, n: &str, stem: &str) {
        ok(&["zoo", family, n, "--hrep", &self.s(&format!("{stem}.hpoly")), "--vrep", &self.s(&format!("{stem}.vpoly"))]);
    }
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().find(|l| !l.starts_with('#')).unwrap().to_string()
}

#[test]
fn zoo_files() {
    let d = Dir::new();
    ok(&["zoo", "permutahedron", "3", "--hrep", &d.s("p3.hpoly")]);
    assert_eq!(header(&d.path("p3.hpoly")), "HPOLY 3 6 1");
    ok(&["zoo", "matching", "4", "--vrep", &d.s("m4.vpoly")]);
    assert_eq!(header(&d.path("m4.vpoly")), "VPOLY 6 10");
    let seg = ok(&["zoo", "cube", "1"]);
    assert!(seg.starts_with("HPOLY 1 2 0"));
    ok(&["zoo", "knapsack", "--w", "2,3,4", "--W", "6", "--vrep", &d.s("k.vpoly")]);
    assert_eq!(header(&d.path("k.vpoly")), "VPOLY 3 6");
    assert_eq!(extform(&["zoo", "knapsack", "--w", "2,3"]).status.code(), Some(2));
    assert_eq!(extform(&["zoo", "nonsense", "3"]).status.code(), Some(2));
}

#[test]
fn construct_sizes() {
    let d = Dir::new();
    for (args, size) in [
        (vec!["birkhoff", "3"], 9),
        (vec!["knapsack", "--w", "2,3,4", "--W", "6"], 11),
        (vec!["martin", "4"], 30),
        (vec!["sortnet", "3", "--network", "bubble"], 6),
        (vec!["colorful", "4", "--k", "2"], 4),
    ] {
        let mut a = vec!["construct"];
        a.extend(&args);
        let out = d.s("x.ext");
        a.extend(["-o", &out]);
        let (v, code) = json(&a);
        assert_eq!(code, 0);
        assert_eq!(v["results"]["size"], size, "{args:?}");
        assert_eq!(v["schema"], 1);
    }
    let (v, _) = json(&["construct", "colorful", "5", "--k", "2", "-o", &d.s("c.ext")]);
    assert_eq!(v["results"]["details"]["certified"], true);
    assert!(v["provenance"]["seed"].is_u64());
}

#[test]
fn verify_outcomes() {
    let d = Dir::new();
    d.zoo("permutahedron", "3", "p3");
    ok(&["zoo", "permutahedron", "4", "--hrep", &d.s("p4.hpoly")]);
    ok(&["construct", "birkhoff", "3", "-o", &d.s("b3.ext")]);
    let (v, code) = json(&["verify", &d.s("p3.hpoly"), &d.s("b3.ext")]);
    assert_eq!((code, &v["results"]["passed"]), (0, &Value::Bool(true)));
    let (_, code) = json(&["verify", &d.s("p3.vpoly"), &d.s("b3.ext")]);
    assert_eq!(code, 0);

    assert_eq!(extform(&["verify", &d.s("p4.hpoly"), &d.s("b3.ext")]).status.code(), Some(2));

    // Drop the first nonnegativity row of Q.
    let text = std::fs::read_to_string(d.path("b3.ext")).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let first = lines.iter().position(|l| l.contains("<=")).unwrap();
    lines.remove(first);
    let bad = lines.join("\n").replace("HPOLY 9 9 6", "HPOLY 9 8 6");
    std::fs::write(d.path("bad.ext"), bad).unwrap();
    let (v, code) = json(&["verify", &d.s("p3.hpoly"), &d.s("bad.ext")]);
    assert_eq!(code, 1);
    let f = &v["results"]["failures"][0];
    assert_eq!(f["kind"], "inequality violated");
    assert!(f["lift"].is_array());
}

#[test]
fn parse_errors_name_the_line() {
    let d = Dir::new();
    std::fs::write(d.path("broken.hpoly"), "HPOLY 2 1 0\n# note\n1 1/0 <= 3\n").unwrap();
    ok(&["construct", "birkhoff", "2", "-o", &d.s("b2.ext")]);
    let out = extform(&["verify", &d.s("broken.hpoly"), &d.s("b2.ext")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("broken.hpoly:3:"), "{err}");
}

#[test]
fn bounds_reports() {
    let d = Dir::new();
    d.zoo("cube", "2", "sq");
    let (v, code) = json(&["bounds", &d.s("sq.hpoly"), &d.s("sq.vpoly")]);
    assert_eq!(code, 0);
    assert_eq!((v["results"]["lower"].as_u64(), v["results"]["upper"].as_u64()), (Some(4), Some(4)));
    assert_eq!(v["results"]["pinned"], true);

    d.zoo("cube", "3", "c3");
    let (v, _) = json(&["bounds", &d.s("c3.hpoly"), &d.s("c3.vpoly")]);
    assert_eq!(v["results"]["fooling_set"]["size"], 6);
    assert_eq!(v["results"]["fooling_set"]["exact"], true);

    d.zoo("permutahedron", "3", "p3");
    ok(&["construct", "birkhoff", "3", "-o", &d.s("b3.ext")]);
    let (v, _) = json(&["bounds", &d.s("p3.hpoly"), &d.s("p3.vpoly"), "--ext", &d.s("b3.ext")]);
    let known = &v["results"]["known_extensions"][0];
    assert_eq!((known["size"].as_u64(), &known["verified"]), (Some(9), &Value::Bool(true)));
    assert_eq!(v["results"]["upper"], 6);
    assert_eq!(v["results"]["lower"], 5);
    assert_eq!(v["results"]["rectangle_cover"]["status"], "exact");

    let (v, code) = json(&["bounds", &d.s("p3.hpoly"), &d.s("p3.vpoly"), "--budget", "1"]);
    assert_eq!(code, 3);
    assert!(v["results"]["lower"].as_u64().unwrap() <= 6);
}

#[test]
fn slack_and_factorize() {
    let d = Dir::new();
    std::fs::write(
        d.path("tri.hpoly"),
        "HPOLY 2 3 0\n-1 0 <= 0\n0 -1 <= 0\n1 1 <= 1\n",
    )
    .unwrap();
    std::fs::write(d.path("tri.vpoly"), "VPOLY 2 3\n1 0\n0 1\n0 0\n").unwrap();
    let text = ok(&["slack", &d.s("tri.hpoly"), &d.s("tri.vpoly")]);
    assert!(text.contains("MATRIX 3 3"));
    let (v, _) = json(&["slack", &d.s("tri.hpoly"), &d.s("tri.vpoly")]);
    assert_eq!(v["results"]["zeros"], 6);

    d.zoo("cube", "2", "sq");
    let (v, _) = json(&["slack", &d.s("sq.hpoly"), &d.s("sq.vpoly")]);
    assert_eq!(v["results"]["zeros"], 8);

    d.zoo("permutahedron", "3", "p3");
    ok(&["construct", "birkhoff", "3", "-o", &d.s("b3.ext")]);
    let (v, code) = json(&[
        "factorize", &d.s("b3.ext"), &d.s("p3.hpoly"), &d.s("p3.vpoly"),
        "--t", &d.s("t.mat"), "--s", &d.s("s.mat"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["t_shape"], serde_json::json!([6, 9]));
    assert_eq!(v["results"]["s_shape"], serde_json::json!([9, 6]));
    assert_eq!(v["results"]["valid"], true);
    assert_eq!(header(&d.path("t.mat")), "MATRIX 6 9");
}

#[test]
fn reports_are_byte_identical() {
    let d = Dir::new();
    d.zoo("permutahedron", "3", "p3");
    ok(&["construct", "colorful", "5", "--k", "2", "-o", &d.s("c.ext")]);
    let a = extform(&["bounds", &d.s("p3.hpoly"), &d.s("p3.vpoly"), "--json"]);
    let b = extform(&["bounds", &d.s("p3.hpoly"), &d.s("p3.vpoly"), "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let first = std::fs::read(d.path("c.ext")).unwrap();
    ok(&["construct", "colorful", "5", "--k", "2", "-o", &d.s("c.ext")]);
    assert_eq!(first, std::fs::read(d.path("c.ext")).unwrap());
    let keys: Vec<String> = serde_json::from_slice::<Value>(&a.stdout).unwrap().as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
