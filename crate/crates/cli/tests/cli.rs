//! End-to-end tests of the binary: exit codes, report content, file
//! round-trips and SVG determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zariski"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("zariski-cli-tests");
    std::fs::create_dir_all(&dir).expect("tmp dir");
    dir.join(name)
}

fn emit(name: &str, params: &[&str], file: &Path) {
    let mut args = vec!["catalog", "emit", name];
    args.extend_from_slice(params);
    let out_arg = file.to_str().unwrap();
    args.extend_from_slice(&["-o", out_arg]);
    let out = run(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn validate_accepts_catalog_member() {
    let f = tmp("c11.json");
    emit("C", &["1", "1"], &f);
    let out = run(&["validate", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("valid"));
}

#[test]
fn validate_rejects_broken_file_with_exit_1() {
    let f = tmp("broken.json");
    std::fs::write(
        &f,
        r#"{
            "field": {"type": "rational"},
            "m": 2,
            "vertices": [["0","1","0"], ["1","0","0"], ["0","0","1"]],
            "surrounding": [
                {"coords": ["1","1","0"], "plumbing": 1},
                {"coords": ["2","2","1"], "plumbing": 1}
            ]
        }"#,
    )
    .unwrap();
    let out = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("vertex-pair line"));
}

#[test]
fn malformed_json_reports_position_and_exit_2() {
    let f = tmp("malformed.json");
    std::fs::write(&f, "{\"field\": ").unwrap();
    let out = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "missing position: {err}");
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weight_prints_all_four_sums() {
    let f = tmp("c11w.json");
    emit("C", &["1", "1"], &f);
    let out = run(&["weight", f.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("tau = 0"));
    assert!(text.contains("[0, 0, 0, 0]"));
}

#[test]
fn pair_certifies_the_first_family() {
    let a = tmp("pa.json");
    let b = tmp("pb.json");
    emit("C", &["1", "1"], &a);
    emit("C", &["1", "-1"], &b);
    let out = run(&["pair", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ZARISKI PAIR"));
    let out = run(&["--json", "pair", a.to_str().unwrap(), b.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["verdict"], "ZARISKI PAIR");
    assert_eq!(v["tau1"], 0);
    assert_eq!(v["tau2"], 1);
    assert!(v["isomorphism"].is_array());
}

#[test]
fn invariant_reports_relation() {
    let f = tmp("quadi.json");
    emit("Quadrilateral", &[], &f);
    let out = run(&["--json", "invariant", f.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["exponent"], 1);
    assert_eq!(v["tau"], 1);
    assert_eq!(v["relation_holds"], true);
    assert_eq!(v["d1"], serde_json::json!([5, 6]));
    assert_eq!(v["d2"], serde_json::json!([4]));
    assert_eq!(v["d3"], serde_json::json!([4, 6]));
}

#[test]
fn moduli_component_and_rejection() {
    let out = run(&["--json", "moduli", "--k1", "3", "--k2", "-3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["accepted"], true);
    assert_eq!(v["component"], "Sigma1");
    assert_eq!(v["characterizations"]["tangent_conic"], false);
    let out = run(&["moduli", "--k1", "-1/2", "--k2", "-1/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("{S2,S6,S9}"));
}

#[test]
fn depth_json_schema() {
    let f = tmp("pappus.json");
    emit("Pappus", &[], &f);
    let out = run(&["--json", "depth", f.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let r = &v["report"];
    assert_eq!(r["l"], serde_json::json!([3, 3, 3]));
    assert_eq!(r["depth"], 0);
    assert!(r["matrix"].is_array());
    assert!(r["rank"].is_number());
}

#[test]
fn classify_reports_cover() {
    let f = tmp("c11c.json");
    emit("C", &["1", "1"], &f);
    let out = run(&["--json", "classify", f.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["class"], "CLeq3NonSimple");
    assert_eq!(v["cover_counts"], serde_json::json!([5, 5, 5]));
}

#[test]
fn emitted_files_round_trip_bit_exactly() {
    for (name, params) in [
        ("C", vec!["1", "-1"]),
        ("D2", vec!["-1", "1"]),
        ("E", vec!["1", "1", "-1"]),
        ("C2_sqrt2", vec!["-1", "-1"]),
        ("NonPappus", vec![]),
    ] {
        let f = tmp(&format!("rt_{name}.json"));
        emit(name, &params, &f);
        let text = std::fs::read_to_string(&f).unwrap();
        let c = zariski_core::io::configuration_from_json(&text).unwrap();
        assert_eq!(zariski_core::io::configuration_to_json(&c), text, "{name}");
    }
}

#[test]
fn dual_output_parses_as_arrangement() {
    let f = tmp("c11d.json");
    emit("C", &["1", "1"], &f);
    let out = run(&["dual", f.to_str().unwrap()]);
    assert!(out.status.success());
    let a = zariski_core::io::arrangement_from_json(&stdout(&out)).expect("arrangement");
    assert_eq!(a.lines.len(), 13);
    assert_eq!(a.support, [0, 1, 2]);
}

#[test]
fn plot_is_deterministic_and_structured() {
    let f = tmp("c11p.json");
    emit("C", &["1", "1"], &f);
    let s1 = tmp("c11_a.svg");
    let s2 = tmp("c11_b.svg");
    for s in [&s1, &s2] {
        let out = run(&["plot", f.to_str().unwrap(), "-o", s.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(&s1).unwrap();
    let b = std::fs::read(&s2).unwrap();
    assert_eq!(a, b, "identical input must give byte-identical SVG");
    let text = String::from_utf8(a).unwrap();
    // ten labeled surrounding points; two finite vertex-pair lines dashed
    assert_eq!(text.matches("stroke-dasharray").count(), 2);
    assert_eq!(text.matches(">S").count(), 10);
    assert!(text.contains(">V3<"));
}

#[test]
fn plot_rejects_chart_through_surrounding_point() {
    let f = tmp("c11x.json");
    emit("C", &["1", "1"], &f);
    let s = tmp("never.svg");
    let out = run(&[
        "plot",
        f.to_str().unwrap(),
        "--chart",
        "line-index:1",
        "-o",
        s.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("choose another chart"), "{err}");
}

#[test]
fn quadrilateral_plot_shape() {
    let f = tmp("quadp.json");
    emit("Quadrilateral", &[], &f);
    let s = tmp("quad.svg");
    let out = run(&["plot", f.to_str().unwrap(), "-o", s.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&s).unwrap();
    let solid = text
        .lines()
        .filter(|l| l.contains("<line") && !l.contains("dasharray"))
        .count();
    let dashed = text
        .lines()
        .filter(|l| l.contains("<line") && l.contains("dasharray"))
        .count();
    assert_eq!(solid, 6);
    assert_eq!(dashed, 2);
}

#[test]
fn catalog_rejects_bad_requests() {
    let out = run(&["catalog", "emit", "C", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["catalog", "emit", "E2", "1", "1", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}
