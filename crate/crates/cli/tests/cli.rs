use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sls_core::builders::subsystem_surface_code;

fn sls(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sls"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("sls runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn build(dir: &Path, family: &str, file: &str) {
    let out = sls(
        dir,
        &["build", "--family", family, "--size", "3", "-o", file],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn build_rejects_bad_sizes_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        sls(dir.path(), &["build", "--family", "surface", "--size", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sls(dir.path(), &["build", "--family", "toric", "--size", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sls(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = sls(dir.path(), &["analyze", "nope.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn built_files_analyze_like_in_memory_codes() {
    let dir = tempfile::tempdir().unwrap();
    build(dir.path(), "ssc", "ssc.json");
    let report = json(&sls(dir.path(), &["analyze", "ssc.json"]));
    let params = &report["result"]["analysis"]["params"];
    let p = subsystem_surface_code(3).unwrap().analyze().unwrap().params;
    assert_eq!(params[0], p.n);
    assert_eq!(params[1], p.k);
    assert_eq!(params[2], p.g);
    assert_eq!(report["tool"], "sls");
    assert_eq!(report["config"]["command"]["analyze"]["code"], "ssc.json");
    let coords = std::fs::read_to_string(dir.path().join("ssc.json")).unwrap();
    assert!(coords.contains("coordinates"));
}

#[test]
fn merge_report_has_ledger_fields() {
    let dir = tempfile::tempdir().unwrap();
    build(dir.path(), "surface", "sc.json");
    build(dir.path(), "color", "cc.json");
    let out = sls(dir.path(), &["merge", "sc.json", "cc.json", "-o", "m.json"]);
    assert!(out.status.success());
    let r = &json(&out)["result"];
    assert_eq!(r["ledger"]["n"], 18);
    assert_eq!(r["ledger"]["k"], 1);
    assert_eq!(r["delta_g"], 2);
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 2);
    assert_eq!(r["locality"]["r_after"], 3);
    assert_eq!(r["ancillas"].as_array().unwrap().len(), 2);

    let v = sls(dir.path(), &["verify", "m.json"]);
    assert!(v.status.success());
    assert_eq!(json(&v)["result"]["pass"], true);

    let s = sls(
        dir.path(),
        &[
            "split",
            "m.json",
            "--output-a",
            "a.json",
            "--output-b",
            "b.json",
        ],
    );
    assert!(s.status.success());
    assert!(dir.path().join("a.json").exists() && dir.path().join("b.json").exists());
}

#[test]
fn corrupted_merge_file_fails_with_named_violation() {
    let dir = tempfile::tempdir().unwrap();
    build(dir.path(), "ssc", "ssc.json");
    assert!(sls(
        dir.path(),
        &[
            "merge",
            "ssc.json",
            "ssc.json",
            "--no-ancillas",
            "-o",
            "m.json"
        ]
    )
    .status
    .success());
    let path = dir.path().join("m.json");
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // flip one letter of one generator: a Z becomes an X
    let g = file["gauge_generators"][0].as_str().unwrap().to_string();
    let pos = g.find('Z').unwrap();
    let mut bad = g.clone();
    bad.replace_range(pos..pos + 1, "X");
    file["gauge_generators"][0] = Value::String(bad);
    std::fs::write(&path, file.to_string()).unwrap();

    let out = sls(dir.path(), &["verify", "m.json"]);
    assert_eq!(out.status.code(), Some(1));
    let violation = json(&out)["result"]["violation"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(
        violation.contains("ledger mismatch")
            || violation.contains("-I")
            || violation.contains("gauge group"),
        "{violation}"
    );
}

#[test]
fn bacon_shor_verify_reports_closure() {
    let dir = tempfile::tempdir().unwrap();
    build(dir.path(), "bacon-shor", "bs.json");
    assert!(sls(
        dir.path(),
        &[
            "merge",
            "bs.json",
            "bs.json",
            "--no-ancillas",
            "-o",
            "m.json"
        ]
    )
    .status
    .success());
    let out = sls(dir.path(), &["verify", "m.json"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["closure"], "equals 6x3 Bacon-Shor");
}

#[test]
fn teleport_single_state_and_all_states() {
    let dir = tempfile::tempdir().unwrap();
    build(dir.path(), "ssc", "ssc.json");
    let one = json(&sls(
        dir.path(),
        &[
            "teleport", "--input", "ssc.json", "--memory", "ssc.json", "--state", "Y-",
        ],
    ));
    assert_eq!(one["result"]["total"], 1);
    assert_eq!(one["result"]["runs"][0]["final_expectations"]["Y"], -1);
    let all = json(&sls(
        dir.path(),
        &[
            "teleport", "--input", "ssc.json", "--memory", "ssc.json", "--seed", "3",
        ],
    ));
    assert_eq!(all["result"]["passed"], 6);
    assert_eq!(all["result"]["seed"], 3);
    let bad = sls(
        dir.path(),
        &[
            "teleport", "--input", "ssc.json", "--memory", "ssc.json", "--state", "W+",
        ],
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn render_marks_ancillas() {
    let dir = tempfile::tempdir().unwrap();
    build(dir.path(), "surface", "sc.json");
    build(dir.path(), "color", "cc.json");
    assert!(
        sls(dir.path(), &["merge", "sc.json", "cc.json", "-o", "m.json"])
            .status
            .success()
    );
    assert!(sls(
        dir.path(),
        &["render", "m.json", "--logicals", "-o", "m.svg"]
    )
    .status
    .success());
    let svg = std::fs::read_to_string(dir.path().join("m.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="ancilla""#).count(), 2);
    assert_eq!(svg.matches(r#"class="logical""#).count(), 2);

    std::fs::write(
        dir.path().join("plain.json"),
        r#"{"name":"p","n":1,"gauge_generators":["Z"]}"#,
    )
    .unwrap();
    assert_eq!(
        sls(dir.path(), &["render", "plain.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn text_format_renders_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    build(dir.path(), "color", "cc.json");
    let out = sls(dir.path(), &["distance", "cc.json", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("exact: 3"), "{text}");
    assert!(text.contains("tool: sls"));
}
