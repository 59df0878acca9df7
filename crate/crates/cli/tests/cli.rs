use std::path::PathBuf;
use std::process::{Command, Output};

fn subgrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subgrad")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn repo(path: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(path).to_string_lossy().into_owned()
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("subgrad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn witt_golden() {
    let o = subgrad(&["witt", "--p", "2", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("golden/witt-p2-n10.csv"));
    assert!(stdout(&o).lines().any(|l| l == "4,3,8,18,10,8,10"));
}

#[test]
fn witt_single_row() {
    let o = subgrad(&["witt", "--p", "2", "--n-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(rows, vec!["n,r,a,b,index_exponent,ratio_num,ratio_den".to_string(), "1,2,2,2,,,".to_string()]);
}

#[test]
fn witt_other_prime() {
    let two = subgrad(&["witt", "--p", "2", "--n-max", "5"]);
    let three = subgrad(&["witt", "--p", "3", "--n-max", "5"]);
    let body = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect::<Vec<_>>();
    assert_eq!(body(&two), body(&three));
    assert!(stdout(&three).starts_with("# subgrad-witt v1 p=3"));
    assert_eq!(subgrad(&["witt", "--p", "4"]).status.code(), Some(2));
}

#[test]
fn witt_json() {
    let o = subgrad(&["witt", "--n-max", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["n"], 1);
}

#[test]
fn gradient_golden_and_deterministic() {
    let spec = repo("specs/fiber-f2xf2.toml");
    let a = subgrad(&["gradient", &spec]);
    let b = subgrad(&["gradient", &spec]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), include_str!("golden/fiber-f2xf2.csv"));
    let j1 = subgrad(&["gradient", &spec, "--format", "json"]);
    let j2 = subgrad(&["gradient", &spec, "--format", "json"]);
    assert_eq!(j1.stdout, j2.stdout);
}

#[test]
fn gradient_truncation() {
    let o = subgrad(&["gradient", &repo("specs/fiber-f2xf2.toml"), "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = stdout(&o).lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 3);
}

#[test]
fn gradient_hypothesis_message() {
    let o = subgrad(&["gradient", &repo("specs/constant-index.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("hypothesis-violated"));
    assert!(out.lines().last().unwrap().contains("index-growth hypothesis not met"));
}

#[test]
fn gradient_products_betti() {
    let o = subgrad(&["gradient", &repo("specs/products-f2xf2.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("betti cross-check failed"));
}

#[test]
fn gradient_errors() {
    let empty = temp_file(
        "empty.toml",
        "format = \"subgrad-sequence/1\"\nkind = \"coset-table\"\nname = \"empty\"\n[factor_a]\ngens = 2\nrelators = []\n[factor_b]\ngens = 2\nrelators = []\n",
    );
    let o = subgrad(&["gradient", &empty]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"));

    let bad = temp_file("bad.toml", "format = \"subgrad-sequence/1\"\nkind = \"coset-table\"\nname = \"x\"\n\n[[level]]\nname = \"U\"\nwords = [\"a?\"]\n");
    let o = subgrad(&["gradient", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 7"));

    assert_eq!(subgrad(&["gradient", "/nonexistent/spec.toml"]).status.code(), Some(2));
    let o = subgrad(&["gradient", &repo("specs/fiber-f2xf2.toml"), "--max-cosets", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let o = subgrad(&["verify", "--suite", "generator-bounds", "--max-order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let last: serde_json::Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["pass"], true);
    assert_eq!(last["failures"], 0);
    let o = subgrad(&["verify", "--suite", "schur", "--max-order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(subgrad(&["verify", "--suite", "nosuch"]).status.code(), Some(2));
}

#[test]
fn schur_groups() {
    let o = subgrad(&["schur", "--group", "C2xC2", "--group", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["multiplier"], serde_json::json!(["2"]));
    assert_eq!(lines[1]["multiplier"], serde_json::json!([]));
    assert_eq!(subgrad(&["schur", "--group", "S4", "--homology-cap", "8"]).status.code(), Some(3));
    assert_eq!(subgrad(&["schur", "--group", "nosuch"]).status.code(), Some(2));
    assert_eq!(subgrad(&["schur", "--group", "8#2"]).status.code(), Some(0));
}

#[test]
fn relator_bound() {
    let ok = subgrad(&["bounds", "--order", "6", "--generators", "2", "--relators", "551"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("\"bound\":\"551\""));
    assert_eq!(subgrad(&["bounds", "--order", "6", "--generators", "2", "--relators", "552"]).status.code(), Some(1));
    let plain = subgrad(&["bounds", "--order", "128", "--generators", "1"]);
    assert!(stdout(&plain).contains("\"bound\":\"1024\""));
}

#[test]
fn product_bounds() {
    let o = subgrad(&["bounds", "--a", "S3", "--b", "C2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() > 1);
}

#[test]
fn present_cosets() {
    let pres = temp_file("s3.pres", "gens: 2\nrel: aa\nrel: bbb\nrel: abab\n");
    let o = subgrad(&["present", &pres]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# index: 6"));
    let sub = temp_file("s3.sub", "gen: b\n");
    let o = subgrad(&["present", &pres, "--subgroup", &sub, "--simplify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# index: 2"));
    let bad = temp_file("bad.pres", "gens: 1\nrel: ab\n");
    let o = subgrad(&["present", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
    let free = temp_file("free.pres", "gens: 1\n");
    assert_eq!(subgrad(&["present", &free, "--max-cosets", "50"]).status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(subgrad(&[]).status.code(), Some(2));
    assert_eq!(subgrad(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(subgrad(&["witt", "--n-max", "zero"]).status.code(), Some(2));
}
