use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kahn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kahn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn check_path_with_leaves() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "g.txt",
        "# x-a-b-c plus three leaves\nn 7\n0 1\n1 2\n2 3\n3 4\n3 5\n3 6\n",
    );
    let json = dir.path().join("out.json");
    let out = kahn(&["check", "--input", &input, "--json", json.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("ind(G) = 43"), "{text}");
    assert!(text.contains("vertices not good: 0"), "{text}");
    let v = read_json(&json);
    assert_eq!(v["kahn"]["ind"], "43");
    assert_eq!(v["kahn"]["outcome"], "StrictlyGreater");
    assert_eq!(v["good_vertex"]["vertex"], 3);
}

#[test]
fn check_complete_bipartite_is_tight() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k22.txt", "n 4\n0 2\n0 3\n1 2\n1 3\n");
    let json = dir.path().join("out.json");
    let out = kahn(&["check", "--input", &input, "--json", json.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = read_json(&json);
    assert_eq!(v["kahn"]["ind"], "7");
    assert_eq!(v["kahn"]["outcome"], "Equal");
    assert_eq!(v["kahn"]["extremal_structure"], true);
}

#[test]
fn check_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing_header = write(dir.path(), "a.txt", "0 1\n");
    assert_eq!(code(&kahn(&["check", "--input", &missing_header])), 3);
    let loop_edge = write(dir.path(), "b.txt", "n 2\n1 1\n");
    assert_eq!(code(&kahn(&["check", "--input", &loop_edge])), 3);
    let absent = dir.path().join("absent.txt");
    assert_eq!(code(&kahn(&["check", "--input", absent.to_str().unwrap()])), 3);
    let star = write(dir.path(), "star.txt", "n 7\n0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n");
    assert_eq!(code(&kahn(&["check", "--input", &star])), 4);
}

#[test]
fn verify_small_delta() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("cert.json");
    let out = kahn(&[
        "verify-all",
        "--delta",
        "3",
        "--jobs",
        "2",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v = read_json(&json);
    assert_eq!(v["overall"], "PASS");
    assert_eq!(v["statement2"]["distinct"], 528);
    assert_eq!(v["regular"].as_array().unwrap().len(), 3);
    assert!(v["statement1"].is_null());
    assert_eq!(v["config"]["jobs"], 2);
}

#[test]
fn verify_rejects_large_delta() {
    assert_eq!(code(&kahn(&["verify-all", "--delta", "6"])), 4);
}

#[test]
fn bad_flags_are_errors() {
    assert_ne!(code(&kahn(&["verify-all", "--statement", "7"])), 0);
    assert_eq!(code(&kahn(&["verify-all", "--delta", "2", "--jobs", "0"])), 3);
}

#[test]
fn starved_precision_is_undecided() {
    let out = kahn(&["verify-all", "--statement", "2", "--delta", "4", "--precision-cap", "8"]);
    assert_eq!(code(&out), 2, "{}", stdout(&out));
    assert!(stdout(&out).contains("UNDECIDED"));
}

#[test]
fn export_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("figs");
    let first = kahn(&["export-exceptions", "--dot", out_dir.to_str().unwrap()]);
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    let snapshot = |d: &Path| {
        let mut files: Vec<(String, String)> = fs::read_dir(d)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (
                    e.file_name().to_string_lossy().into_owned(),
                    fs::read_to_string(e.path()).unwrap(),
                )
            })
            .collect();
        files.sort();
        files
    };
    let a = snapshot(&out_dir);
    assert_eq!(a.len(), 14);
    assert!(a.iter().all(|(_, body)| body.contains("doublecircle")));
    assert_eq!(
        code(&kahn(&["export-exceptions", "--dot", out_dir.to_str().unwrap()])),
        0
    );
    assert_eq!(snapshot(&out_dir), a);
}

#[test]
fn export_to_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = write(dir.path(), "file", "");
    let target = Path::new(&blocker).join("sub");
    assert_eq!(
        code(&kahn(&["export-exceptions", "--dot", target.to_str().unwrap()])),
        3
    );
}

#[test]
fn selftest_small() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("self.json");
    let out = kahn(&[
        "selftest",
        "--seed",
        "5",
        "--cases",
        "50",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v = read_json(&json);
    let suites = v.as_array().unwrap();
    assert_eq!(suites.len(), 5);
    assert!(suites.iter().all(|s| s["pass"] == true && s["seed"] == 5));
}
