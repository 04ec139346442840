//! Binary-level contract: exit codes and byte-stable stdout.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_spatialkit")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("spatialkit-cli-{}-{name}", std::process::id()))
}

#[test]
fn unknown_task_exits_two() {
    let out = run(&["generate", "--task", "nope", "--level", "0", "--count", "1", "--out", "/tmp/x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["generate", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreadable_dataset_exits_two() {
    let out = run(&["stats", "--in", "/nonexistent/definitely-not-here"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_dataset_fails_verify_with_one() {
    let dir = temp("corrupt");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run(&[
        "generate",
        "--task",
        "cube_counting",
        "--level",
        "0",
        "--count",
        "2",
        "--seed",
        "9",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Tamper with one instance file.
    let victim = dir.join("cube_counting/0/cube_counting-l0-0001/question.json");
    let text = std::fs::read_to_string(&victim).unwrap();
    assert!(text.contains("\"schema_version\": 1"));
    std::fs::write(&victim, text.replace("\"schema_version\": 1", "\"schema_version\": 999"))
        .unwrap();
    let out = run(&["verify", "--in", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "tampered dataset must fail verify");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn stats_and_baseline_stdout_are_byte_stable() {
    let dir = temp("stable");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run(&[
        "generate",
        "--task",
        "arrow_moving",
        "--level",
        "0",
        "--count",
        "3",
        "--seed",
        "4",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let s1 = run(&["stats", "--in", dir.to_str().unwrap()]);
    let s2 = run(&["stats", "--in", dir.to_str().unwrap()]);
    assert_eq!(s1.stdout, s2.stdout);
    let b1 = run(&["baseline", "--in", dir.to_str().unwrap(), "--trials", "50", "--seed", "6"]);
    let b2 = run(&["baseline", "--in", dir.to_str().unwrap(), "--trials", "50", "--seed", "6"]);
    assert_eq!(b1.stdout, b2.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}
