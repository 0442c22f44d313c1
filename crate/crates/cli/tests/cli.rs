use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fcy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcy"))
        .args(args)
        .output()
        .expect("run fcy")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn classical_a4() {
    let out = fcy(&["preprojective", "--family", "dynkin:A:4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["k"], 2);
    assert_eq!(r["cy"], serde_json::json!([3, 5]));
    assert_eq!(r["frobenius"], true);
}

#[test]
fn higher_type_a_tsv_matches_json() {
    let args = ["typeA", "--d-param", "2", "--s", "4"];
    let j = json(&fcy(&args));
    let tsv = fcy(&[&args[..], &["--format", "tsv"]].concat());
    assert_eq!(tsv.status.code(), Some(0));
    let text = String::from_utf8(tsv.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let row: Vec<&str> = lines.next().unwrap().split('\t').collect();
    assert_eq!(header.len(), row.len());
    let field = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(field("k"), j["k"].to_string());
    assert_eq!(field("N"), j["N"].to_string());
    assert_eq!(field("m"), j["m"].to_string());
    assert_eq!(j["cy"], serde_json::json!([6, 6]));
}

#[test]
fn cobweb_jacobi() {
    let r = json(&fcy(&["jacobi", "--family", "cobweb", "--char", "tr"]));
    assert_eq!(r["k"], 5);
    assert_eq!(r["cy"], serde_json::json!([14, 12]));
    assert_eq!(r["dimension"], 160);
}

#[test]
fn path_algebra_is_not_frobenius() {
    let out = fcy(&["analyze", "--quiver", &data("a2_path.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdict"], "not_frobenius");
    assert_eq!(r["frobenius"], false);
    assert!(r["reason"]
        .as_str()
        .unwrap()
        .starts_with("non-bijective socle"));
}

#[test]
fn infinite_dimensional_input_exits_2() {
    let out = fcy(&[
        "analyze",
        "--quiver",
        &data("cyclic3_preprojective.json"),
        "--maxlen",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn small_order_bound_exits_2() {
    let out = fcy(&["analyze", "--family", "dynkin:A:3", "--kmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["verdict"], "no_order_found");
}

#[test]
fn bad_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"vertices":["1"],"grading_rank":1,"arrows":[{"id":"a","from":"1","to":"9","degree":[0]}],"relations":[]}"#).unwrap();
    let out = fcy(&["analyze", "--quiver", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown vertex"));
    let missing = fcy(&[
        "analyze",
        "--quiver",
        dir.path().join("none.json").to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn roundtrip_and_window_errors() {
    let ok = fcy(&[
        "roundtrip",
        "--quiver",
        &data("twistorno.json"),
        "--window",
        "-3:3",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let r = json(&ok);
    assert_eq!(r["category_checks"]["roundtrip"]["isomorphic"], true);
    let small = fcy(&["roundtrip", "--family", "dynkin:A:3", "--window", "0:0"]);
    assert_eq!(small.status.code(), Some(2));
}

#[test]
fn dynkin_table_matches() {
    let out = fcy(&["dynkin-table", "--types", "A2,A3,D4"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["match"] == true));
    assert_eq!(rows[2]["type"], "D4");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["typeA", "--d-param", "2", "--s", "3", "--char", "tr"];
    assert_eq!(fcy(&args).stdout, fcy(&args).stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fcy(&[
        "analyze",
        "--family",
        "dynkin:A:2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    let stdout = fcy(&["analyze", "--family", "dynkin:A:2"]).stdout;
    assert_eq!(written, stdout);
}

#[test]
fn emitted_presentation_reanalyzes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pi.json");
    let emitted = fcy(&[
        "preprojective",
        "--family",
        "dynkin:D:4",
        "--emit",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(emitted.status.code(), Some(0));
    let r = json(&fcy(&[
        "analyze",
        "--quiver",
        path.to_str().unwrap(),
        "--d",
        "1",
        "--char",
        "sgn",
    ]));
    assert_eq!(r["cy"], serde_json::json!([2, 3]));
}
