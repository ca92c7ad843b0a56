use std::path::PathBuf;
use std::process::Command;

use mitl_synth_cli::{run, EXIT_CAPPED, EXIT_NO, EXIT_OK, EXIT_USAGE};

fn model(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "models", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut full = vec!["mitl-synth"];
    full.extend_from_slice(args);
    let code = run(full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn synth_example3_writes_controller_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (plant, phi) = (model("example3.sts"), model("response.mitl"));
    let (code, text) = call(&["synth", &plant, &phi, "--clocks", "z", "--m", "1", "--K", "1", "--out", out]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.contains("verdict: REALISABLE"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["verdict"], "REALISABLE");
    assert!(summary["nodes"].as_u64().unwrap() > 0);
    let ctrl = dir.path().join("controller.sts");
    assert_eq!(summary["controller"].as_str().unwrap(), ctrl.to_str().unwrap());
    assert!(dir.path().join("controller.dot").exists());

    let (code, text) = call(&["verify", ctrl.to_str().unwrap(), &plant, &phi, "--depth", "5"]);
    assert_eq!(code, EXIT_OK, "{text}");
}

#[test]
fn synth_trivial_plant_is_unrealisable() {
    let (code, text) = call(&["synth", &model("trivial.sts"), &model("response.mitl"), "--clocks", "z"]);
    assert_eq!(code, EXIT_NO);
    assert!(text.contains("\"verdict\": \"UNREALISABLE\""));
    assert!(text.contains("\"controller\": null"));
}

#[test]
fn tiny_budget_caps() {
    let (code, text) = call(&["bench", "sched", "2", "2", "2", "--node-budget", "10"]);
    assert_eq!(code, EXIT_CAPPED);
    assert!(text.contains("RESOURCE_CAPPED"));
}

#[test]
fn bench_rows() {
    for (args, code) in [(["1", "1", "0"], EXIT_OK), (["2", "1", "0"], EXIT_NO), (["2", "2", "1"], EXIT_OK)] {
        let mut full = vec!["bench", "sched"];
        full.extend_from_slice(&args);
        assert_eq!(call(&full).0, code, "{args:?}");
    }
}

#[test]
fn model_checking() {
    let phi = model("response.mitl");
    assert_eq!(call(&["mc", &phi, &model("response_ok.word")]), (EXIT_OK, "true\n".into()));
    assert_eq!(call(&["mc", &phi, &model("response_late.word")]), (EXIT_NO, "false\n".into()));
    let dir = tempfile::tempdir().unwrap();
    let top = dir.path().join("top.mitl");
    std::fs::write(&top, "true").unwrap();
    assert_eq!(call(&["mc", top.to_str().unwrap(), &model("response_late.word")]).0, EXIT_OK);
}

#[test]
fn dcm_commands() {
    let m = model("halting.dcm");
    assert_eq!(call(&["dcm", "simulate", &m, "--max", "10"]), (EXIT_OK, "Halted(2), N=1\n".into()));

    let (code, text) = call(&["dcm", "validate-play", &m, &model("halting_play.word")]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(!text.contains("violated"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(call(&["dcm", "encode-omega", &m, "--out", out]).0, EXIT_OK);
    for f in ["omega.mitl", "omega_prime.mitl"] {
        let text = std::fs::read_to_string(dir.path().join(f)).unwrap();
        mitl_synth::logic::parse_formula(&text).unwrap();
    }
    assert_eq!(call(&["dcm", "encode-plant", &m, "--out", out]).0, EXIT_OK);
    let plant = std::fs::read_to_string(dir.path().join("plant.sts")).unwrap();
    mitl_synth::plant::parse_sts(&plant).unwrap().validate_plant().unwrap();
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["synth"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["mc", "/nonexistent.mitl", "/nonexistent.word"]).0, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mitl");
    std::fs::write(&bad, "wG (a ->").unwrap();
    assert_eq!(call(&["mc", bad.to_str().unwrap(), &model("response_ok.word")]).0, EXIT_USAGE);
}

#[test]
fn identical_controller_files_across_threads() {
    let mut files = Vec::new();
    for threads in ["1", "4"] {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        let (code, _) = call(&["bench", "sched", "2", "2", "1", "--threads", threads, "--out", out]);
        assert_eq!(code, EXIT_OK);
        files.push(std::fs::read_to_string(dir.path().join("controller.sts")).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mitl-synth");
    let status = Command::new(bin)
        .args(["synth", &model("example3.sts"), &model("response.mitl"), "--clocks", "z"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&status.stdout).starts_with("verdict: REALISABLE"));
    let status = Command::new(bin).args(["mc", &model("response.mitl")]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}
