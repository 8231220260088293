use std::process::Command;

use sts_cli::{run, Summary, EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use sts_core::golden::{parse_fixture, EMBEDDED_ROWS};
use sts_core::TripleSystem;

fn size(args: &[&str]) -> usize {
    let out = run(std::iter::once("sts").chain(args.iter().copied()));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    out.result.unwrap().records[0].size
}

#[test]
fn construct_writes_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bose2.txt");
    let out = run([
        "sts",
        "construct",
        "--bose",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "v=15 b=35 r=7\n");
    let sys: TripleSystem = std::fs::read_to_string(&path).unwrap().parse().unwrap();
    assert_eq!((sys.v(), sys.b()), (15, 35));

    let cyclic = run(["sts", "construct", "--cyclic", "7", "0,1,3"]);
    let builtin = run(["sts", "construct", "--builtin", "sts7"]);
    assert_eq!(cyclic.stdout, builtin.stdout);
    let swapped = run(["sts", "construct", "--builtin", "sts13-2"]);
    assert!(swapped.stdout.lines().any(|l| l == "2 7 9"));
    assert!(!swapped.stdout.lines().any(|l| l == "0 1 4"));
}

#[test]
fn construct_rejects_bad_input() {
    assert_eq!(run(["sts", "construct"]).code, EXIT_USAGE);
    assert_eq!(
        run(["sts", "construct", "--bose", "1", "--skolem", "1"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        run(["sts", "construct", "--cyclic", "8", "0,1,3"]).code,
        EXIT_DOMAIN
    );
    assert_eq!(run(["sts", "construct", "--skolem", "0"]).code, EXIT_DOMAIN);
    assert_eq!(
        run(["sts", "construct", "--builtin", "sts15"]).code,
        EXIT_DOMAIN
    );
}

#[test]
fn search_values() {
    assert_eq!(size(&["search", "sts9", "--mode", "min"]), 7);
    assert_eq!(size(&["search", "sts9", "--mode", "largest-minimal"]), 9);
    assert_eq!(size(&["search", "cat:7", "--mode", "largest-minimal"]), 10);
    assert_eq!(
        size(&["search", "sts13-1", "--mode", "min", "--pattern", "5,4,4"]),
        6
    );
    assert_eq!(size(&["search", "bose:1", "--mode", "largest-minimal"]), 9);
}

#[test]
fn search_from_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    run([
        "sts",
        "construct",
        "--builtin",
        "sts13-2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        size(&[
            "search",
            path.to_str().unwrap(),
            "--mode",
            "largest-minimal"
        ]),
        11
    );
}

#[test]
fn budget_exhaustion_emits_partial_result() {
    let out = run(["sts", "search", "sts13-1", "--budget", "50000000"]);
    assert_eq!(out.code, EXIT_BUDGET);
    let r = out.result.unwrap();
    assert_eq!(
        serde_json::to_value(&r).unwrap()["status"],
        "budget-exhausted"
    );
    let Some(Summary::Search(s)) = &r.summary else {
        panic!()
    };
    let [lo, hi] = s.bounds.unwrap();
    assert!(lo <= 6 && 6 <= hi);
    assert!(r.records.iter().all(|rec| rec.size == hi));
}

#[test]
fn domain_and_usage_errors() {
    assert_eq!(run(["sts", "search", "nope"]).code, EXIT_DOMAIN);
    assert_eq!(
        run(["sts", "search", "sts9", "--pattern", "5,5,5"]).code,
        EXIT_DOMAIN
    );
    assert_eq!(
        run(["sts", "search", "sts9", "--mode", "max"]).code,
        EXIT_USAGE
    );
    assert_eq!(run(["sts", "spectra", "--v", "11"]).code, EXIT_DOMAIN);
    assert_eq!(run(["sts", "--version"]).code, EXIT_OK);
    assert_eq!(
        run(["sts", "classify", "sts7", "RRR...."]).code,
        EXIT_DOMAIN
    );
}

#[test]
fn classify_reports_strength() {
    let out = run(["sts", "classify", "sts7", "RRRGGRy"]);
    assert_eq!(out.code, EXIT_OK);
    let Some(Summary::Classify(s)) = out.result.unwrap().summary else {
        panic!()
    };
    assert!(s.defining && s.minimal);
    assert_eq!(s.strength, Some(sts_core::Strength::Strong));
    assert_eq!(s.extension.as_deref(), Some("RRRGGRY"));
}

#[test]
fn spectra_small_orders() {
    for (v, d, big_d) in [("7", 6, 6), ("13", 6, 11)] {
        let out = run(["sts", "spectra", "--v", v]);
        assert_eq!(out.code, EXIT_OK);
        let Some(Summary::Spectra(s)) = out.result.unwrap().summary else {
            panic!()
        };
        assert_eq!((s.d, s.big_d), (Some(d), Some(big_d)));
        assert_eq!((s.spec_d, s.spec_big_d), (vec![d], vec![big_d]));
    }
}

#[test]
fn run_result_is_reproducible() {
    let a = run(["sts", "search", "sts13-2", "--jobs", "1"])
        .result
        .unwrap();
    let b = run(["sts", "search", "sts13-2", "--jobs", "3"])
        .result
        .unwrap();
    assert_eq!(a.stable_json(), b.stable_json());
    let json = a.to_json();
    let keys = [
        "\"command\"",
        "\"inputs_digest\"",
        "\"status\"",
        "\"records\"",
        "\"summary\"",
        "\"budget\"",
        "\"timings\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
}

fn fixture(rows: &[sts_core::golden::GoldenRow]) -> tempfile::NamedTempFile {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), serde_json::to_string(rows).unwrap()).unwrap();
    file
}

#[test]
fn verify_custom_tables() {
    let rows = parse_fixture(EMBEDDED_ROWS).unwrap();
    let sts9: Vec<_> = rows
        .iter()
        .filter(|r| r.system_id == "sts9")
        .cloned()
        .collect();
    let file = fixture(&sts9);
    let out = run(["sts", "verify", file.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("sts9 largest-minimal (9)"));
    assert!(out.stdout.ends_with("3 of 3 rows pass\n"));

    let mut demoted = sts9.clone();
    let row = demoted.iter_mut().find(|r| r.size == 9).unwrap();
    row.set.pop();
    row.size -= 1;
    row.row = None;
    let file = fixture(&demoted);
    let out = run(["sts", "verify", file.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_DOMAIN);
    let Some(Summary::Verify(s)) = out.result.unwrap().summary else {
        panic!()
    };
    assert_eq!(s.failed, 1);
    assert!(s.verdicts.iter().any(|v| !v.defining));
}

#[test]
fn catalog_override_via_environment() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[]").unwrap();
    let bin = env!("CARGO_BIN_EXE_sts");
    let out = Command::new(bin)
        .args(["catalog-check", "--skip-isomorphism"])
        .env("STS_CATALOG", &bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_DOMAIN));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 80"));
    let out = Command::new(bin)
        .args(["catalog-check", "--skip-isomorphism"])
        .env_remove("STS_CATALOG")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let out = Command::new(bin)
        .args(["search", "cat:1", "--catalog", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_DOMAIN));
}

#[test]
fn catalog_check_with_budget() {
    let out = run(["sts", "catalog-check"]);
    assert_eq!(out.code, EXIT_OK);
    let Some(Summary::Catalog(s)) = out.result.unwrap().summary else {
        panic!()
    };
    assert_eq!((s.entries, s.pairwise_nonisomorphic), (80, Some(true)));
    // Fingerprints already separate all 80 entries, so no search nodes are spent.
    assert_eq!(run(["sts", "catalog-check", "--budget", "0"]).code, EXIT_OK);
}
