use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn lietensor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lietensor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lietensor-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

const FILIFORM4: &str = "# class three\ndim 4\nbracket 1 2 -> 3:1\nbracket 1 3 -> 4:1\n";

#[test]
fn tensor3_of_heisenberg_one() {
    let out = lietensor(&["tensor3", "--algebra", "H:1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "dim tensor3 = 12\n");
}

#[test]
fn wedge2_of_abelian_four() {
    let out = lietensor(&["wedge2", "--algebra", "A:4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "dim wedge2 = 6\n");
}

#[test]
fn class_three_file_is_a_domain_error() {
    let path = scratch("filiform.lie", FILIFORM4);
    let out = lietensor(&["tensor3", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("class 3"));
}

#[test]
fn validate_accepts_class_three_file() {
    let path = scratch("filiform2.lie", FILIFORM4);
    let out = lietensor(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid: dim 4, class 3\n");
}

#[test]
fn recipe_and_structural_agree_without_commuting_generators() {
    for spec in ["H:1", "H:2", "A:3", "sum(H:2,A:1)"] {
        let s = lietensor(&["tensor3", "--structural", "--algebra", spec]);
        let r = lietensor(&["tensor3", "--recipe", "--algebra", spec]);
        assert_eq!(stdout(&s), stdout(&r), "{spec}");
    }
}

#[test]
fn recipe_and_structural_differ_on_l5_8() {
    assert_eq!(stdout(&lietensor(&["tensor3", "-a", "L5_8"])), "dim tensor3 = 40\n");
    assert_eq!(
        stdout(&lietensor(&["tensor3", "--recipe", "-a", "L5_8"])),
        "dim tensor3 = 42\n"
    );
}

#[test]
fn conflicting_flags_are_a_usage_error() {
    let out = lietensor(&["tensor3", "--structural", "--recipe", "--algebra", "H:1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(lietensor(&[]).status.code(), Some(1));
    assert_eq!(lietensor(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lietensor(&["tensor2"]).status.code(), Some(1));
    assert_eq!(lietensor(&["verify-paper", "--jobs", "0"]).status.code(), Some(1));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(lietensor(&["--help"]).status.code(), Some(0));
    assert_eq!(lietensor(&["--version"]).status.code(), Some(0));
}

#[test]
fn parse_errors() {
    let out = lietensor(&["tensor2", "--algebra", "Q:3"]);
    assert_eq!(out.status.code(), Some(2));
    let path = scratch("broken.lie", "dim 3\nbracket 2 1 -> 3:1\n");
    let out = lietensor(&["tensor2", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn non_nilpotent_file_is_a_domain_error() {
    let path = scratch("sl2ish.lie", "dim 2\nbracket 1 2 -> 2:1\n");
    let out = lietensor(&["info", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn info_lists_invariants() {
    let out = lietensor(&["info", "--algebra", "L5_8"]);
    assert_eq!(
        stdout(&out),
        "dim = 5\nclass = 2\ndim L^2 = 2\ndim Z = 2\ngeneralized Heisenberg rank = 2\n"
    );
}

#[test]
fn schur_and_capable() {
    assert_eq!(stdout(&lietensor(&["schur", "-a", "L1"])), "dim schur = 9\n");
    assert_eq!(stdout(&lietensor(&["capable", "-a", "L6_7_2:0"])), "capable = true\n");
    assert_eq!(stdout(&lietensor(&["capable", "-a", "H:2"])), "capable = false\n");
    assert_eq!(stdout(&lietensor(&["wedge3", "-a", "H:1"])), "dim wedge3 = 2\n");
}

#[test]
fn catalog_lists_every_entry() {
    let out = stdout(&lietensor(&["catalog"]));
    for name in ["A:1", "H:4", "L5_8", "L6_22:1", "L6_7_2:0", "L1", "sum(H:2,H:2)"] {
        assert!(out.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = lietensor(&["info", "--algebra", "sum(H:2,H:1)"]);
    let b = lietensor(&["info", "--algebra", "sum(H:2,H:1)"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_paper_reports_and_writes_json() {
    let path = std::env::temp_dir().join(format!("lietensor-report-{}.json", std::process::id()));
    let out = lietensor(&["verify-paper", "--json", "--jobs", "2", "--out", path.to_str().unwrap()]);
    let text = fs::read_to_string(&path).unwrap();
    let failed = text.matches("\"pass\": false").count();
    let expected_code = if failed == 0 { 0 } else { 4 };
    assert_eq!(out.status.code(), Some(expected_code));
    assert!(text.matches("\"claim_id\"").count() >= 40);
    let plain = lietensor(&["verify-paper"]);
    let last = stdout(&plain).lines().last().unwrap().to_string();
    assert!(last.ends_with(&format!("{failed} failed")), "{last}");
}
