use std::process::Command;

use quantale_cli::run;
use quantale_core::catalog;
use serde_json::Value;

fn qw(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qw").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn qw_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = qw(&all);
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    assert_eq!(v["schema"], "qw/v1");
    (code, v)
}

#[test]
fn progenerator_example() {
    let (code, out, _) = qw(&[
        "check-progenerator",
        "--ring",
        "catalog:TWO",
        "--module",
        "catalog:TWO^2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("progenerator: yes"), "{out}");
}

#[test]
fn bounded_search_reports_none() {
    let (code, out, _) = qw(&["morita", "catalog:TWO", "catalog:PZ2", "--bound", "4"]);
    assert_eq!(code, 1);
    assert!(out.contains("none within bound 4"), "{out}");
    assert!(out.contains("does not prove"), "{out}");
}

#[test]
fn tensor_of_chains_is_two_elements() {
    let (code, v) = qw_json(&[
        "tensor",
        "catalog:TWO-chain",
        "catalog:TWO-chain",
        "--ring",
        "catalog:TWO",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verb"], "tensor");
    assert_eq!(v["result"]["elements"].as_array().unwrap().len(), 2);
}

#[test]
fn tensor_ring_mismatch_is_invalid() {
    let (code, _, err) = qw(&[
        "tensor",
        "catalog:TWO-chain",
        "catalog:TWO-chain",
        "--ring",
        "catalog:PZ2",
    ]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn exit_codes_per_verb() {
    let cases: &[(&[&str], i32)] = &[
        (&["validate", "catalog:N5"], 0),
        (&["residuals", "catalog:C3-nil"], 0),
        (&["residuals", "catalog:diamond"], 2),
        (
            &[
                "homs",
                "catalog:diamond",
                "catalog:chain3",
                "--kind",
                "left",
            ],
            0,
        ),
        (&["homs", "catalog:lat-M3", "catalog:lat-N5"], 0),
        (&["end", "catalog:TWO^2"], 0),
        (&["end", "catalog:M3", "--cap", "4"], 3),
        (&["dual", "catalog:chain3"], 0),
        (&["tensor", "catalog:TWO-reg", "catalog:diamond"], 0),
        (&["trace", "catalog:C3-nil-reg"], 0),
        (&["check-projective", "catalog:chain3"], 0),
        (&["check-generator", "catalog:one"], 1),
        (
            &[
                "check-generator",
                "catalog:diamond",
                "--family",
                "catalog:TWO-chain,catalog:chain3",
            ],
            0,
        ),
        (&["check-progenerator", "catalog:one"], 1),
        (&["check-progenerator", "catalog:MAT2-reg"], 0),
        (
            &["morita", "catalog:TWO", "catalog:MAT2", "--bound", "4"],
            0,
        ),
        (
            &["morita", "catalog:TWO", "catalog:C3-nil", "--bound", "3"],
            1,
        ),
        (&["catalog"], 0),
        (&["catalog", "PZ2"], 0),
        (&["catalog", "nope"], 2),
        (&["validate", "catalog:nope"], 2),
        (&["validate", "/definitely/not/here.json"], 2),
        (&["frobnicate"], 64),
        (&["homs", "catalog:TWO"], 64),
        (&["--help"], 0),
        (&["--version"], 0),
    ];
    for (args, want) in cases {
        let (code, out, err) = qw(args);
        assert_eq!(code, *want, "{args:?}\n{out}\n{err}");
    }
}

#[test]
fn help_documents_grammar_and_exit_codes() {
    let (_, out, _) = qw(&["--help"]);
    assert!(out.contains("catalog:NAME"));
    assert!(out.contains("Exit codes"));
}

#[test]
fn invalid_files_report_positions() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\n  \"kind\": \"quantale\",\n  \"lattice\": \"catalog:lat-chain3\",\n  \"mul\": [[\"0\", \"zz\", \"0\"]],\n  \"unit\": \"1\"\n}\n",
    )
    .unwrap();
    let (code, _, err) = qw(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");

    std::fs::write(&bad, "{ \"kind\": \"lattice\", \"elements\": [").unwrap();
    let (code, _, err) = qw(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn every_catalog_entry_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in catalog::list(None) {
        let input = format!("catalog:{name}");
        let (code, first) = qw_json(&["validate", &input, "--cap", "64"]);
        assert_eq!(code, 0, "{name}");
        let path = dir.path().join(format!("{name}.json"));
        let out = path.to_str().unwrap();
        let (code, _, _) = qw(&["validate", &input, "--cap", "64", "--out", out]);
        assert_eq!(code, 0, "{name}");
        let (code, second) = qw_json(&["validate", out, "--cap", "64"]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(first["result"], second["result"], "{name}");
    }
}

#[test]
fn certificate_files_verify_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let path = cert.to_str().unwrap();
    let (code, _, _) = qw(&[
        "morita",
        "catalog:TWO",
        "catalog:MAT2",
        "--bound",
        "4",
        "--out",
        path,
    ]);
    assert_eq!(code, 0);
    let (code, out, err) = qw(&["verify-cert", path]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("accepted"));

    // swap two entries of the stored isomorphism
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let fwd = v["endIso"]["fwd"].as_array_mut().unwrap();
    fwd.swap(1, 2);
    std::fs::write(&cert, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, _, err) = qw(&["verify-cert", path]);
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("certificate rejected"), "{err}");
}

#[test]
fn output_is_identical_across_processes() {
    let bin = env!("CARGO_BIN_EXE_qw");
    let args = [
        "morita",
        "catalog:TWO",
        "catalog:MAT2",
        "--bound",
        "4",
        "--json",
    ];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin)
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let args = ["homs", "catalog:M3", "catalog:N5", "--json"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}
