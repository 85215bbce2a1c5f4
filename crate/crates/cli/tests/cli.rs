use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_icosa-e8"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strip_timing(mut v: Value) -> Value {
    for c in v["checks"].as_array_mut().unwrap() {
        c["elapsed_ms"] = Value::from(0);
    }
    v
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["schema"], "icosa-e8-report/1");
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(r["config"]["seed"], 120);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_is_deterministic_and_echoes_flags() {
    let a = json(&run(&["verify", "mckay", "--seed", "7", "--tolerance", "1e-8"]));
    let b = json(&run(&["verify", "mckay", "--seed", "7", "--tolerance", "1e-8"]));
    assert_eq!(strip_timing(a.clone()), strip_timing(b));
    assert_eq!(a["config"]["seed"], 7);
    assert_eq!(a["config"]["tolerance"], 1e-8);
}

#[test]
fn failing_numeric_tolerance_exits_one() {
    let out = run(&["verify", "klein", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert!(r["summary"]["failed"].as_u64().unwrap() > 0);
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.iter().filter(|c| c["exact"] == true).all(|c| c["status"] == "pass"));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "all", "--tolerance", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["render", "klein", "--resolution", "0x3", "--out", "x.ppm"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn emit_standard_lattice() {
    let out = run(&["emit", "lattice", "standard"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let gram = v["gram"].as_array().unwrap();
    assert_eq!(gram.len(), 8);
    for (i, row) in gram.iter().enumerate() {
        assert_eq!(row[i], "2");
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            if i != j {
                assert!(x == "0" || x == "-1");
            }
        }
    }
}

#[test]
fn emit_group_artifacts() {
    let classes = json(&run(&["emit", "group", "classes"]));
    let sizes: Vec<u64> = classes["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![1, 1, 12, 12, 12, 12, 20, 20, 30]);
    let ct = json(&run(&["emit", "group", "character-table"]));
    assert_eq!(ct["dims"].as_array().unwrap().len(), 9);
    let mk = json(&run(&["emit", "group", "mckay"]));
    assert_eq!(mk["affine_e8"], true);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn isometry_between_emitted_lattices() {
    let dir = tempfile::tempdir().unwrap();
    let ico = dir.path().join("icosian.json");
    let e8 = dir.path().join("e8.json");
    assert_eq!(run(&["emit", "lattice", "icosian", "--out", ico.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["emit", "lattice", "standard", "--out", e8.to_str().unwrap()]).status.code(), Some(0));
    let out = run(&["isometry", ico.to_str().unwrap(), e8.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["verified"], true);
    assert!(r["det"] == "1" || r["det"] == "-1");
    assert_eq!(r["u"].as_array().unwrap().len(), 8);

    let a1 = write(dir.path(), "a1.json", r#"{"rank":1,"gram":[[2]]}"#);
    assert_eq!(run(&["isometry", &a1, e8.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn malformed_lattice_files_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "a1.json", r#"{"rank":1,"gram":[[2]]}"#);
    let bad_entry = write(dir.path(), "bad.json", r#"{"rank":2,"gram":[[2,1],[1,"x"]]}"#);
    let out = run(&["isometry", &bad_entry, &good]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gram[1][1]"));
    let truncated = write(dir.path(), "trunc.json", "{\"rank\": 2,\n \"gram\": [[2,");
    let out = run(&["isometry", &truncated, &good]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = run(&["isometry", "/does/not/exist.json", &good]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for name in ["a.ppm", "b.ppm", "c.png"] {
        let p = dir.path().join(name);
        let out = run(&["render", "klein", "--window=-1.5,1.5,-1,1", "--resolution", "48x32", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        files.push(std::fs::read(p).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert!(files[0].starts_with(b"P6\n48 32\n255\n"));
    assert!(files[2].starts_with(b"\x89PNG"));
    assert_eq!(run(&["render", "klein", "--resolution", "8x8"]).status.code(), Some(2));
}

#[test]
fn cache_dir_is_reused_and_refreshed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = json(&run(&["verify", "mckay", "--cache-dir", d]));
    let cayley = dir.path().join("cayley.json");
    assert!(cayley.exists());
    let b = json(&run(&["verify", "mckay", "--cache-dir", d]));
    assert_eq!(strip_timing(a.clone()), strip_timing(b));
    let text = std::fs::read_to_string(&cayley).unwrap();
    std::fs::write(&cayley, text.replacen("[[", "[[1,", 1)).unwrap();
    let c = json(&run(&["verify", "mckay", "--cache-dir", d]));
    assert_eq!(strip_timing(a), strip_timing(c));
    assert_ne!(std::fs::read_to_string(&cayley).unwrap(), text.replacen("[[", "[[1,", 1));
}
