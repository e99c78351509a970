use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use indperm_cli::Report;

fn indperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indperm"))
        .args(args)
        .env_remove("INDPERM_CACHE_DIR")
        .env_remove("INDPERM_OEIS_BASE")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn counts(r: &Report) -> Vec<String> {
    r.results
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["count"].to_string())
        .collect()
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/oeis")
}

#[test]
fn seq_class2431_indecomposables() {
    let out = indperm(&["seq", "--pattern", "2-4-3-1", "--indecomposable", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.command, "seq");
    assert_eq!(counts(&r), ["1", "1", "3", "12", "56", "288", "1584", "9152"]);
}

#[test]
fn seq_single_letter_pattern_has_no_avoiders() {
    let r = report(&indperm(&["seq", "--pattern", "1", "--max-n", "3"]));
    assert_eq!(counts(&r), ["0", "0", "0"]);
}

#[test]
fn report_schema_round_trips() {
    let out = indperm(&["seq", "--pattern", "1-32", "--by-descents", "--max-n", "4"]);
    let raw: Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&str> = raw.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "parameters", "results", "status"]);
    let first = &raw["results"][0];
    assert!(first.get("n").is_some() && first.get("i").is_some() && first.get("count").is_some());
    let r: Report = serde_json::from_value(raw.clone()).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), raw);
}

#[test]
fn csv_headers() {
    let out = indperm(&["seq", "--pattern", "1-2-3", "--max-n", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,count\n1,1\n2,2\n3,5\n");
    let out = indperm(&[
        "seq", "--pattern", "1-2", "--by-descents", "--max-n", "2", "--format", "csv",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,descents,count\n1,0,1\n2,0,0\n2,1,1\n"
    );
}

#[test]
fn formula_and_brute_sources_agree() {
    let patterns = [
        ("1-2-3", false),
        ("1-3-2-4", true),
        ("2-1-4-3", true),
        ("1-2-3-4", true),
        ("1-2-3-4", false),
        ("1-3-4-2", false),
        ("1-3-4-2", true),
        ("3-12", true),
        ("3-12", false),
        ("2-13", false),
        ("12-3", true),
        ("1-2-3-4-5", true),
    ];
    for (p, ind) in patterns {
        let mut args = vec!["seq", "--pattern", p, "--max-n", "7"];
        if ind {
            args.push("--indecomposable");
        }
        let brute = report(&indperm(&args));
        args.extend(["--source", "formula"]);
        let out = indperm(&args);
        assert_eq!(out.status.code(), Some(0), "{p}");
        assert_eq!(counts(&brute), counts(&report(&out)), "{p} {ind}");
    }
}

#[test]
fn formula_source_refuses_search_only_counts() {
    let out = indperm(&["seq", "--pattern", "4-2-3-1", "--indecomposable", "--max-n", "5", "--source", "formula"]);
    assert_eq!(out.status.code(), Some(2));
    let out = indperm(&["seq", "--pattern", "1-3-2-4", "--max-n", "5", "--source", "formula"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["seq", "--pattern", "1--2", "--max-n", "3"],
        vec!["seq", "--pattern", "1-2"],
        vec!["seq", "--pattern", "1-2", "--max-n", "99"],
        vec!["verify", "--max-n", "4"],
        vec!["bij", "--n", "1"],
        vec!["oeis-check", "--pattern", "1-2-3", "--oeis", "A12", "--max-n", "4"],
        vec!["frobnicate"],
    ] {
        assert_eq!(indperm(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_selected_identities_and_lemmas() {
    let out = indperm(&["verify", "--identity", "IND_FACTOR", "--lemma", "lemma_2143", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.results.as_array().unwrap().len(), 18 + 5);
    let out = indperm(&["verify", "--lemma", "lemma_1-32_literal", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_all_passes_and_the_alternate_constant_fails() {
    let out = indperm(&["verify", "--all", "--max-n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let out = indperm(&["verify", "--all", "--max-n", "6", "--form-1234", "alternate"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let failed: Vec<&str> = r
        .results
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["passed"] == Value::Bool(false))
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["CLOSED_FORM/1-2-3-4", "ARBITRATION/1234"]);
}

#[test]
fn bijection_table() {
    let out = indperm(&["bij", "--n", "3", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "pi,image\n231,123\n312,312\n321,213\n"
    );
    let r = report(&indperm(&["bij", "--n", "5"]));
    assert_eq!(r.results["domain_size"], 37);
    assert!(r.passed());
}

#[test]
fn oeis_check_against_fixtures() {
    let cache = fixtures();
    let cache = cache.to_str().unwrap();
    let out = indperm(&[
        "oeis-check", "--pattern", "2-4-3-1", "--indecomposable", "--oeis", "A000257", "--max-n",
        "8", "--cache-dir", cache, "--offline",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.results[0]["shift"], -1);
    assert_eq!(r.results[0]["overlap"], serde_json::json!([1, 8]));

    let out = indperm(&["oeis-check", "--manifest", "--max-n", "8", "--cache-dir", cache, "--offline"]);
    assert_eq!(out.status.code(), Some(0));

    let out = indperm(&[
        "oeis-check", "--pattern", "2-4-3-1", "--indecomposable", "--oeis", "A000257", "--max-n",
        "8", "--cache-dir", cache, "--offline", "--shift", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).results[0]["first_mismatch"]["n"], 2);
}

#[test]
fn warm_cache_needs_no_network() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(fixtures().join("b074664.txt"), dir.path().join("b074664.txt")).unwrap();
    let args = |offline: bool| {
        let mut a = vec![
            "oeis-check", "--pattern", "3-12", "--indecomposable", "--oeis", "A074664", "--max-n", "7",
            "--cache-dir", dir.path().to_str().unwrap(),
        ];
        if offline {
            a.push("--offline");
        }
        a.into_iter().map(String::from).collect::<Vec<_>>()
    };
    let run = |a: Vec<String>| {
        Command::new(env!("CARGO_BIN_EXE_indperm"))
            .args(a)
            .env("INDPERM_OEIS_BASE", "http://127.0.0.1:9")
            .output()
            .unwrap()
    };
    let online = run(args(false));
    let offline = run(args(true));
    assert_eq!(online.status.code(), Some(0));
    assert_eq!(report(&online).results, report(&offline).results);
}

#[test]
fn cache_miss_without_network_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_indperm"))
        .args(["oeis-check", "--pattern", "1-2-3", "--oeis", "A000108", "--max-n", "5", "--cache-dir"])
        .arg(dir.path())
        .env("INDPERM_OEIS_BASE", "http://127.0.0.1:9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
    let out = indperm(&[
        "oeis-check", "--pattern", "1-2-3", "--oeis", "A000108", "--max-n", "5", "--offline",
        "--cache-dir", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cache_dir_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_indperm"))
        .args(["oeis-check", "--pattern", "1-3-2", "--indecomposable", "--oeis", "A000245", "--max-n", "8", "--offline"])
        .env("INDPERM_CACHE_DIR", fixtures())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.results[0]["overlap"], serde_json::json!([2, 8]));
}
