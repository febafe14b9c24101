use std::io::Write;
use std::process::{Command, Output, Stdio};

fn htl(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_htl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TWELVE_GON: &str = "HTL 1\n1 4\n1 2 3 4 1 3 2 4 3 1 2 4\n";
const K4: &str = "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

#[test]
fn build_then_verify() {
    let built = htl(&["build", "--k", "13"], "");
    assert_eq!(built.status.code(), Some(0));
    let doc = stdout(&built);
    assert!(doc.starts_with("HTL 1\n6 26\n"));
    let checked = htl(&["verify"], &doc);
    assert_eq!(checked.status.code(), Some(0));
    assert!(stdout(&checked).contains("proper: true"));
}

#[test]
fn oriented_build_passes_oriented_verify() {
    let doc = stdout(&htl(&["build-oriented", "--k", "9"], ""));
    assert_eq!(htl(&["verify", "--oriented"], &doc).status.code(), Some(0));
    let same = stdout(&htl(&["build", "--k", "9", "--oriented"], ""));
    assert_eq!(doc, same);
}

#[test]
fn verification_failure_exits_1() {
    let miscounted = "HTL 1\n1 6\n1 2 3 4 5 1 6 5 4 2 1 5 6 3 2 4 3 1\n";
    let out = htl(&["verify", "--format", "json"], miscounted);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["proper"], false);
    assert_eq!(
        htl(&["verify", "--oriented"], TWELVE_GON).status.code(),
        Some(1)
    );
}

#[test]
fn format_errors_exit_2() {
    let out = htl(&["verify"], "HTL 1\n2 4\n1 2 3 4 1\n2 3 4 1 2\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("total ≠ 3m"));
    assert_eq!(htl(&["build", "--k", "5"], "").status.code(), Some(2));
    assert_eq!(htl(&["hamilton"], "1 2\n2 3\n").status.code(), Some(2));
}

#[test]
fn search_budget_exits_3() {
    let out = htl(&["search", "--k", "30", "--n", "1"], "");
    assert_eq!(out.status.code(), Some(3));
    let ok = htl(
        &[
            "search", "--k", "30", "--n", "1", "--budget", "30", "--limit", "1",
        ],
        "",
    );
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn search_json() {
    let out = htl(&["search", "--k", "12", "--n", "1", "--format", "json"], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "exhausted");
    assert!(!v["labelings"].as_array().unwrap().is_empty());
    let none = htl(&["search", "--k", "7", "--n", "1", "--format", "json"], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&none)).unwrap();
    assert_eq!(v["status"], "divisibility");
}

#[test]
fn analyze_dual_and_cover() {
    let a: serde_json::Value =
        serde_json::from_str(&stdout(&htl(&["analyze"], TWELVE_GON))).unwrap();
    assert_eq!(a["topology"]["chi"], -1);
    assert_eq!(a["regular"]["subgroup_index"], 24);
    let d: serde_json::Value = serde_json::from_str(&stdout(&htl(&["dual"], TWELVE_GON))).unwrap();
    assert_eq!(d["chi"], -1);
    assert_eq!(d["triangles"].as_array().unwrap().len(), 4);
    let cover = htl(&["double-cover"], TWELVE_GON);
    assert_eq!(cover.status.code(), Some(0));
    assert!(stdout(&cover).starts_with("HTL 1\n2 8\n"));
}

#[test]
fn hamilton_walks() {
    let out = htl(&["hamilton"], K4);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(htl(&["hamilton", "--oriented"], K4).status.code(), Some(1));
}

#[test]
fn render_to_file() {
    let path = std::env::temp_dir().join(format!("htl-render-{}.svg", std::process::id()));
    let out = htl(&["render", "--out", path.to_str().unwrap()], TWELVE_GON);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
}
