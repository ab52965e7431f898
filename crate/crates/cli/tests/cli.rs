use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sumtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumtree"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_tree_solves_to_its_own_coloring() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("t31.json");
    let gen = sumtree(&["gen", "--i", "3", "--j", "1", "--out", path_str(&file)]);
    assert!(gen.status.success());

    let v = json(&sumtree(&["solve", path_str(&file)]));
    assert_eq!(v["sigma"], 29);
    assert_eq!(v["strength"], 3);
    assert_eq!(v["count"], 1);
    assert_eq!(v["input_coloring"]["minimal"], true);
    assert_eq!(v["solver"], "dp");
}

#[test]
fn dot_files_are_accepted() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("t12.dot");
    let gen = sumtree(&[
        "gen",
        "--i",
        "1",
        "--j",
        "2",
        "--format",
        "dot",
        "--out",
        path_str(&file),
    ]);
    assert!(gen.status.success());
    assert!(std::fs::read_to_string(&file).unwrap().starts_with("graph"));
    let v = json(&sumtree(&["solve", path_str(&file)]));
    assert_eq!((v["n"].as_u64(), v["sigma"].as_u64()), (Some(7), Some(9)));
}

#[test]
fn brute_force_and_forced_root_options() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("t21.json");
    std::fs::write(&file, sumtree(&["gen", "--i", "2", "--j", "1"]).stdout).unwrap();

    let dp = json(&sumtree(&["solve", path_str(&file), "--forced-root", "1"]));
    let brute = json(&sumtree(&["solve", path_str(&file), "--brute"]));
    assert_eq!(brute["solver"], "brute");
    assert_eq!(dp["sigma"], brute["sigma"]);
    assert_eq!(dp["witness"], brute["witness"]);
    // root 1 forces both leaves to 2
    assert_eq!(dp["forced_root"]["min_sum"], 5);

    let e = json(&sumtree(&["solve", path_str(&file), "--enumerate", "5"]));
    assert_eq!(e["minimal_colorings"], serde_json::json!([[2, 1, 1]]));
    assert_eq!(e["truncated"], false);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        r#"{"format":"sumtree-v1","n":2,"root":0,"parent":[-1,5]}"#,
    )
    .unwrap();
    let out = sumtree(&["solve", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parent"));

    let missing = sumtree(&["solve", path_str(&dir.path().join("nope.json"))]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn sequence_csv_has_exact_ratios() {
    let out = sumtree(&["sequence", "--alpha", "1/4", "--imax", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,t,n,strength,max_degree,ratio");
    assert_eq!(lines.len(), 3);
    assert!(lines[1..].iter().all(|l| l.ends_with(",0.250000")));
}

#[test]
fn random_trees_are_reproducible() {
    let a = sumtree(&["random", "--n", "9", "--count", "3", "--seed", "5"]);
    let b = sumtree(&["random", "--n", "9", "--count", "3", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 3);

    let check = json(&sumtree(&[
        "random", "--n", "12", "--count", "50", "--check",
    ]));
    assert_eq!(check["violations"], serde_json::json!([]));
}
