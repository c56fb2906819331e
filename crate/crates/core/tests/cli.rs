use std::process::{Command, Output};

use serde_json::Value;

fn hurwitz(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hurwitz"));
    cmd.args(args).env_remove("HURWITZ_CACHE");
    if let Some(path) = cache {
        cmd.env("HURWITZ_CACHE", path);
    }
    cmd.output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("single JSON report")
}

#[test]
fn compute_prints_exact_value() {
    let out = hurwitz(&["compute", "--genus", "0", "--mu", "2,3", "--nu", "1,4", "--kind", "full"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["value"]["num"], "8");
    assert_eq!(v["value"]["den"], "1");
    assert_eq!(v["mu"], serde_json::json!([2, 3]));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn exit_codes_are_stable() {
    assert_eq!(hurwitz(&["compute", "--genus", "0", "--mu", "x", "--nu", "1"], None).status.code(), Some(2));
    assert_eq!(hurwitz(&["compute", "--genus", "0", "--mu", "3", "--nu", "1,1"], None).status.code(), Some(2));
    assert_eq!(
        hurwitz(&["compute", "--genus", "2", "--mu", "4,4,4", "--nu", "6,6"], None).status.code(),
        Some(3)
    );
    assert_eq!(hurwitz(&["fit", "--mu", "2,3", "--nu", "2,3"], None).status.code(), Some(4));
    assert_eq!(
        hurwitz(&["verify", "main-theorem", "--max-d", "2", "--max-g", "0"], None).status.code(),
        Some(1)
    );
    assert_eq!(hurwitz(&["verify", "forests", "--max-n", "5"], None).status.code(), Some(0));
}

#[test]
fn cache_from_environment_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("values.jsonl");
    let args = ["--no-timing", "compute", "--genus", "1", "--mu", "2,1", "--nu", "1,1,1", "--kind", "pruned"];
    let first = hurwitz(&args, Some(&path));
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 1);
    let record: Value = serde_json::from_str(lines.trim()).unwrap();
    assert_eq!(record["kind"], "PH");
    assert_eq!(record["conv"]["stability_reading"], "literal");
    let second = hurwitz(&args, Some(&path));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
}

#[test]
fn conventions_do_not_mix_in_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("values.jsonl");
    let plain = hurwitz(&["compute", "--genus", "0", "--mu", "3", "--nu", "3", "--kind", "pruned"], Some(&path));
    let m0 = hurwitz(
        &["--m0-pruned-convention", "compute", "--genus", "0", "--mu", "3", "--nu", "3", "--kind", "pruned"],
        Some(&path),
    );
    assert_eq!(report(&plain)["value"]["num"], "0");
    assert_eq!(report(&m0)["value"]["num"], "1");
    assert_eq!(report(&m0)["value"]["den"], "3");
}

#[test]
fn unwritable_cache_only_warns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("values.jsonl");
    let out = hurwitz(&["compute", "--genus", "0", "--mu", "2", "--nu", "2"], Some(&path));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["value"]["den"], "2");
}

#[test]
fn verify_cut_and_join_reports_mismatch_breakdown() {
    let out = hurwitz(&["verify", "cut-and-join", "--max-d", "4", "--max-g", "0"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(out.status.code(), Some(1));
    let terms = last["first_mismatch"]["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    assert!(terms.iter().all(|t| t["case"].is_string() && t["value"]["num"].is_string()));
}
