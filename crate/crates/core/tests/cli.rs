use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn capforge(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capforge"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str], dir: &Path) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = capforge(&full, dir);
    let text = String::from_utf8(o.stdout).unwrap();
    let v = serde_json::from_str(text.trim()).unwrap_or(Value::Null);
    (o.status.code().unwrap(), v)
}

#[test]
fn cap_build_3e_q8_gives_54_points_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (code, v) = json(&["cap", "build", "--case", "3e", "--q", "8", "--dim", "4", "--seed", "1"], d);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["size"], 54);
    assert_eq!(v["verification"]["level"], "exhaustive");
    assert_eq!(v["verification"]["complete"], true);
    let first = std::fs::read(d.join("cap-3e-q8-N4.txt")).unwrap();
    assert!(first.starts_with(b"cap N=4 q=8 n=54 provenance=TEO3"));
    let (code, _) = json(&["cap", "build", "--case", "3e", "--q", "8", "--dim", "4", "--seed", "1", "-o", "again.txt"], d);
    assert_eq!(code, 0);
    assert_eq!(first, std::fs::read(d.join("again.txt")).unwrap());

    let (code, v) = json(&["cap", "verify", "again.txt"], d);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let (code, v) = json(&["code", "check", "again.txt"], d);
    assert_eq!(code, 0);
    assert_eq!(v["min_distance_at_least_4"], true);
    assert_eq!(v["covering_radius_2"], true);
    assert_eq!(v["params"]["k"], 49);

    let o = capforge(&["code", "export", "again.txt"], d);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("columns q=8 n=54 r=5\n"));
    assert_eq!(text.lines().count(), 55);
}

#[test]
fn broken_cap_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // three collinear points on the line X2 = X3 = 0
    std::fs::write(d.join("bad.txt"), "cap N=3 q=4 n=3\n1,0,0,0\n0,1,0,0\n1,1,0,0\n").unwrap();
    let (code, v) = json(&["cap", "verify", "bad.txt"], d);
    assert_eq!(code, 1);
    assert_eq!(v["verification"]["is_cap"], false);
    let (code, _) = json(&["code", "check", "bad.txt", "--d4"], d);
    assert_eq!(code, 2, "three columns cannot form a code with r = 4");
    let o = capforge(&["cap", "verify", "missing.txt"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table1_q8_row() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(&["table1", "--q", "8"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["t_star"], 6);
    assert_eq!(v["p"], 1);
    assert_eq!(v["check"], "4 < 7");
    assert_eq!(v["matches_table"], true);
}

#[test]
fn bounds_n5_q256() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(&["bounds", "--N", "5", "--q", "256"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["new5"], (2 * 256 * 256 + 55 * 256 + 55).to_string());
    let o = capforge(&["bounds", "--N", "4", "--q", "8"], dir.path());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("new3: \"54\"") || text.contains("new3: 54"), "{text}");
}

#[test]
fn arc_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (code, v) = json(&["arc", "greedy", "--q", "16", "-o", "g.txt"], d);
    assert_eq!(code, 0);
    assert_eq!(v["k"], 9);
    assert_eq!(v["complete"], true);

    let (code, v) = json(&["arc", "profile", "g.txt"], d);
    assert_eq!(code, 0);
    assert_eq!(v["k"], 9);

    let (code, v) = json(&["arc", "normalize", "g.txt", "--target", "sumpoint-001", "-o", "n.txt"], d);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["beta"], 1);
    assert_eq!(v["sum_points"][0], "(0,0,1)");
    let (code, _) = json(&["arc", "verify", "n.txt"], d);
    assert_eq!(code, 0);

    let (code, v) = json(&["cap", "build", "--case", "2e", "--arc", "g.txt", "--dim", "4", "-o", "c.txt"], d);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["size"], 10 * 16 + 1);
    assert_eq!(v["verification"]["complete"], true);
}

#[test]
fn arc_verify_rejects_incomplete_and_non_arcs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("small.txt"), "arc q=8 n=3\n1,0,0\n0,1,0\n0,0,1\n").unwrap();
    let (code, v) = json(&["arc", "verify", "small.txt"], d);
    assert_eq!(code, 1);
    assert_eq!(v["complete"], false);
    std::fs::write(d.join("line.txt"), "arc q=8 n=3\n1,0,0\n0,1,0\n1,1,0\n").unwrap();
    let o = capforge(&["arc", "verify", "line.txt"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("not an arc"));
}

#[test]
fn families_and_guards() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (code, v) = json(&["arc", "kw", "--q", "16"], d);
    assert_eq!(code, 0);
    assert_eq!(v["k"], 12);
    let (code, v) = json(&["arc", "kwprime", "--q", "64"], d);
    assert_eq!(code, 0);
    assert_eq!(v["k"], 28);
    assert_eq!(v["complete"], true);
    let (code, v) = json(&["arc", "abatangelo", "--q", "64"], d);
    assert_eq!(code, 0);
    assert_eq!(v["beta"], 1);
    let o = capforge(&["arc", "abatangelo", "--q", "16"], d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("precondition"));
    let (code, _) = json(&["arc", "abatangelo", "--q", "16", "--unchecked"], d);
    assert_eq!(code, 0);
    let o = capforge(&["cap", "build", "--case", "1e", "--q", "8", "--dim", "4"], d);
    assert_eq!(o.status.code(), Some(2), "case 1 needs q > 8");
    let o = capforge(&["cap", "build", "--case", "3o", "--q", "8", "--dim", "4"], d);
    assert_eq!(o.status.code(), Some(2));
    let o = capforge(&["cap", "build", "--case", "3e", "--dim", "4"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conjecture_scan_and_field_info() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(&["conjecture-scan", "--q", "8", "--trials", "5"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["trials"], 5);
    let o = capforge(&["field-info", "--h", "10"], dir.path());
    assert!(String::from_utf8(o.stdout).unwrap().contains("modulus: 0x46f"));
}
