use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pertinency"))
        .args(args)
        .env_remove("PERTINENCY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn ints(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

fn schema_check(record: &Value) {
    let src =
        fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/result-record.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&src).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(record).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{}: {errors:?}", record["command"]);
}

#[test]
fn sets_examples() {
    assert_eq!(ints(&json(&["sets", "10"])["outputs"]["phi2"]), [1, 2, 3, 4, 6, 7, 8, 9]);
    assert_eq!(ints(&json(&["sets", "8"])["outputs"]["spl_certified"]), [1, 2, 3, 4, 5, 6, 7]);
    assert!(!ints(&json(&["sets", "35"])["outputs"]["omega2"]).is_empty());
}

#[test]
fn admissible_examples() {
    let scan = json(&["admissible", "--range", "2..76"]);
    assert_eq!(scan["outputs"]["unknown"], 0);
    for row in scan["outputs"]["rows"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        let expected = if n % 3 == 0 || n % 5 == 0 { "NotAdmissible" } else { "Admissible" };
        assert_eq!(row["verdict"], expected, "n={n}");
    }
    let v = &json(&["admissible", "77"])["outputs"]["rows"][0];
    assert!(v["verdict"] == "Unknown" || (v["verdict"] == "Admissible" && !v["special"].is_null()));
    assert_eq!(json(&["admissible", "561"])["outputs"]["rows"][0]["verdict"], "NotAdmissible");
}

#[test]
fn pertinency_examples() {
    let r = json(&["pertinency", "6", "--max-degree", "24"]);
    assert_eq!(r["outputs"]["report"]["pertinency_estimate"], 5);
    let r = json(&["pertinency", "3", "--max-degree", "12"]);
    assert_eq!(r["outputs"]["report"]["pertinency_estimate"], 2);
    let r = json(&["pertinency", "12"]);
    let b = &r["outputs"]["report"]["bounds"];
    assert_eq!((b["lower"].as_u64(), b["upper"].as_u64()), (Some(8), Some(11)));
    assert_eq!(r["outputs"]["report"]["status"]["status"], "bounds-only");
}

#[test]
fn hilbert_and_nilpotency_examples() {
    let p = &json(&["hilbert", "6", "2", "--phi", "1,2,3,4,5", "--max-degree", "20"])["outputs"]["profile"];
    assert_eq!(p["classification"]["class"], "FiniteDim");
    assert!(ints(&p["dims"]).iter().rev().take(12).all(|&h| h == 0));
    let p = &json(&["hilbert", "5", "1", "--max-degree", "20"])["outputs"]["profile"];
    assert_eq!(p["classification"]["class"], "BoundedGrowth");
    assert!(*ints(&p["dims"]).last().unwrap() > 0);
    let r = json(&["nilpotency", "3", "1", "1"]);
    assert_eq!(r["outputs"]["result"]["status"], "Found");
    assert_eq!(r["outputs"]["result"]["exponent"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["sets", "1"]), 2);
    assert_eq!(code(&["verify-paper", "--case", "nosuch"]), 2);
    assert_eq!(code(&["verify-paper", "--case", "lemma9.1"]), 0);
    assert_eq!(code(&["pertinency", "6", "--phi", "1"]), 2);
    assert_eq!(code(&["hilbert", "4", "7"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["admissible", "--range", "9..3"]), 2);
    assert_eq!(code(&["sets", "12", "--csv"]), 0);
    assert_eq!(code(&["verify-paper", "--case", "lemma9.2", "--csv"]), 2);
}

#[test]
fn every_command_validates_against_the_schema() {
    for args in [
        &["sets", "35"][..],
        &["admissible", "--range", "70..80"],
        &["pertinency", "6", "--max-degree", "16", "--timings"],
        &["pertinency", "12"],
        &["hilbert", "5", "1", "--max-degree", "12"],
        &["nilpotency", "7", "0", "1", "--phi", "1,2,3,4,5,6", "--max-degree", "10"],
        &["verify-paper", "--case", "lemma9"],
    ] {
        schema_check(&json(args));
    }
    let mut bad = json(&["sets", "10"]);
    bad["schema_version"] = 2.into();
    let src =
        fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/result-record.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&serde_json::from_str(&src).unwrap()).unwrap();
    assert!(!validator.is_valid(&bad));
}

#[test]
fn json_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["pertinency", "6", "--max-degree", "16", "--json"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    let one = run(&[&args[..], &["--threads", "1"]].concat()).stdout;
    let eight = run(&[&args[..], &["--threads", "8"]].concat()).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert_eq!(one, eight);
    assert_eq!(a, one);
}

#[test]
fn cache_replays_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["sets", "35", "--json", "--cache-dir", d];
    let fresh = run(&args).stdout;
    let replayed = run(&args).stdout;
    assert_eq!(fresh, replayed);
    let file = dir.path().join("records.jsonl");
    assert_eq!(fs::read_to_string(&file).unwrap().lines().count(), 1);
    assert_eq!(code(&[&args[..], &["--verify-cache"]].concat()), 0);

    let tampered = fs::read_to_string(&file).unwrap().replace("\"mop\":\"5\"", "\"mop\":\"7\"");
    fs::write(&file, tampered).unwrap();
    let hit: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    assert_eq!(hit["outputs"]["mop"], "7");
    assert_eq!(code(&[&args[..], &["--verify-cache"]].concat()), 1);
    let bypass: Value = serde_json::from_slice(&run(&[&args[..], &["--no-cache"]].concat()).stdout).unwrap();
    assert_eq!(bypass["outputs"]["mop"], "5");
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_pertinency"))
        .args(["sets", "12"])
        .env("PERTINENCY_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("records.jsonl").exists());
}

#[test]
fn csv_output() {
    let out = run(&["admissible", "--range", "2..6", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,verdict,certificate,special"));
    assert_eq!(lines.next(), Some("2,Admissible,Base2Power,"));
    assert_eq!(text.lines().count(), 6);
    let out = run(&["hilbert", "3", "1", "--max-degree", "10", "--csv"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().lines().count() > 1);
    assert_eq!(code(&["hilbert", "3", "1", "--max-degree", "6"]), 2);
}
