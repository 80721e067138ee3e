mod common;

use std::process::Command;

use common::*;
use dvc::cli::{run, EXIT_DIAGNOSTICS, EXIT_IO, EXIT_OK, EXIT_USAGE};

fn dvc(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dvc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(name: &str) -> String {
    example_path(name).display().to_string()
}

#[test]
fn fmt_prints_canonical_text() {
    let (code, out, _) = dvc(&["fmt", &path("minimal.dvs")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("video \"minimal\" fps=30 height=54 width=96\n"));
    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("m.dvs");
    std::fs::write(&copy, example("minimal.dvs")).unwrap();
    assert_eq!(dvc(&["fmt", "--write", copy.to_str().unwrap()]).0, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&copy).unwrap(), out);
}

#[test]
fn check_exit_codes() {
    let (code, _, err) = dvc(&["check", &path("covid.dvs")]);
    assert_eq!(code, EXIT_OK, "{err}");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dvs");
    std::fs::write(&bad, "video \"v\" fps=1 width=10 height=10\nclip a -> b { transition refresh.fade }\n").unwrap();
    let (code, _, err) = dvc(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_DIAGNOSTICS);
    assert!(err.contains("bad.dvs:2:"), "{err}");
    assert_eq!(dvc(&["check", dir.path().join("missing.dvs").to_str().unwrap()]).0, EXIT_IO);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dvc(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(dvc(&["recommend"]).0, EXIT_USAGE);
    assert_eq!(dvc(&["recommend", "--from-form", "vis"]).0, EXIT_USAGE);
    assert_eq!(dvc(&["classify", &path("covid.dvs"), "--clip", "12"]).0, EXIT_USAGE);
    assert_eq!(dvc(&["stats"]).0, EXIT_USAGE);
    let (code, out, _) = dvc(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("recommend"));
}

#[test]
fn classify_reports_labels() {
    let (code, out, _) = dvc(&["classify", &path("global_wealth.dvs"), "--clip", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "camera_motion.truck\npreserving_guide.rst_guide\n");
    let (_, json, _) = dvc(&["classify", &path("global_wealth.dvs"), "--clip", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["labels"], serde_json::json!(["narrative_agent.merging", "narrative_agent.splitting"]));
}

#[test]
fn recommend_json_is_ranked() {
    let (code, out, _) = dvc(&["recommend", "--relation", "contrast", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let ranks: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, (1..=ranks.len() as u64).collect::<Vec<_>>());
}

#[test]
fn stats_from_fixture_and_file() {
    let (code, out, _) = dvc(&["stats", "--paper-fixture"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("refresh              2070   53.0%"), "{out}");
    let dir = tempfile::tempdir().unwrap();
    let labels = dir.path().join("labels.tsv");
    std::fs::write(&labels, "vis_vis\trefresh\nvis_others\tzoom,rst_guide\n").unwrap();
    let (code, out, _) = dvc(&["stats", labels.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 2);
    std::fs::write(&labels, "vis_vis\tteleport\n").unwrap();
    assert_eq!(dvc(&["stats", labels.to_str().unwrap()]).0, EXIT_DIAGNOSTICS);
}

#[test]
fn binary_renders_into_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frames");
    let status = Command::new(env!("CARGO_BIN_EXE_dvc"))
        .args(["render", &path("minimal.dvs"), "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(out.join("manifest.json").exists());
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 32);
}
