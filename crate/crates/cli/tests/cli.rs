use std::process::{Command, Output};

use repsys::model::{parse, zoo, Model};

fn repsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repsys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    repsys(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(repsys(args).stdout).unwrap()
}

fn records(args: &[&str]) -> Vec<serde_json::Value> {
    stdout(args)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect()
}

fn write_temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("repsys-cli-{}-{name}.oml-model", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn classify_hexagon_fails_with_witness() {
    assert_eq!(code(&["classify", "zoo:O6"]), 1);
    let recs = records(&["classify", "zoo:O6"]);
    let omp = recs.iter().find(|r| r["check"] == "orthomodular_poset").unwrap();
    assert_eq!(omp["verdict"], false);
    assert_eq!(omp["witness"], serde_json::json!(["a", "b"]));
}

#[test]
fn roundtrip_mo2_is_identity() {
    assert_eq!(code(&["roundtrip", "zoo:MO2"]), 0);
    let recs = records(&["roundtrip", "zoo:MO2"]);
    let mapping = recs[0]["mapping"].as_array().unwrap();
    assert_eq!(mapping.len(), 6);
    for pair in mapping {
        assert_eq!(pair[0], pair[1]);
    }
}

#[test]
fn firefly_rs_axioms_hold() {
    assert_eq!(code(&["check", "zoo:firefly", "--property", "rs"]), 0);
    let recs = records(&["check", "zoo:firefly", "--property", "rs"]);
    assert_eq!(recs.len(), 3);
    assert!(recs.iter().all(|r| r["verdict"] == true));
}

#[test]
fn exit_codes_over_the_zoo() {
    for m in zoo() {
        let input = format!("zoo:{}", m.name);
        let input = input.as_str();
        assert_eq!(code(&["validate", input]), 0, "validate {input}");
        for property in ["rs", "eq11", "closure"] {
            let c = code(&["check", input, "--property", property]);
            assert!(c == 0 || c == 1, "check {property} {input}: {c}");
        }
        assert_eq!(code(&["sum", input]), 0, "sum {input}");
        match m.expected {
            Some(e) => {
                assert_eq!(
                    code(&["classify", input]),
                    if e.boolean { 0 } else { 1 },
                    "classify {input}"
                );
                assert_eq!(code(&["roundtrip", input]), 0, "roundtrip {input}");
                assert_eq!(code(&["decompose", input]), 0, "decompose {input}");
                assert_eq!(
                    code(&["check", input, "--property", "eq6"]),
                    if e.omp { 0 } else { 1 }
                );
                assert_eq!(
                    code(&["amp", input, "--vs-sasaki"]),
                    if e.oml { 0 } else { 1 },
                    "amp {input}"
                );
            }
            None => {
                assert_eq!(code(&["roundtrip", input]), 2);
                assert_eq!(code(&["amp", input]), 2);
                assert_eq!(code(&["check", input, "--property", "boolean-rs"]), 1);
            }
        }
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(code(&["classify", "zoo:nope"]), 2);
    assert_eq!(code(&["classify", "zoo:MO2", "--frobnicate"]), 2);
    assert_eq!(code(&["check", "zoo:MO2", "--property", "eq7"]), 2);
    assert_eq!(code(&["classify", "/nonexistent/model.oml-model"]), 2);
    let bad = write_temp("syntax", "orthoposet x { elements 0 1 ; covers 0<1 ; ortho 0:1\n");
    let out = repsys(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_model_is_a_false_verdict() {
    let path = write_temp(
        "selfcomp",
        "orthoposet bad { elements x 1 0 ; covers 0<x x<1 ; ortho 0:1 x:x }\n",
    );
    assert_eq!(code(&["validate", &path]), 1);
    let recs = records(&["validate", &path]);
    assert_eq!(recs[0]["verdict"], false);
    assert!(recs[0]["detail"].as_str().unwrap().contains('x'));
}

#[test]
fn emitted_sums_reparse_and_validate() {
    for m in zoo() {
        let text = stdout(&["sum", "--emit-model", &format!("zoo:{}", m.name)]);
        let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", m.name));
        let model = doc.build().unwrap();
        match (model, m.expected) {
            (Model::Orthoposet(o), Some(e)) => assert!(e.matches(&o.classify()), "{}", m.name),
            (Model::Poset(p), None) => assert_eq!(p.len(), 9),
            _ => panic!("{}: unexpected kind", m.name),
        }
        let path = write_temp(m.name, &text);
        assert_eq!(code(&["validate", &path]), 0);
    }
}

#[test]
fn output_is_byte_stable() {
    let args = ["amp", "zoo:MO3", "--vs-sasaki"];
    assert_eq!(stdout(&args), stdout(&args));
    let text = stdout(&["--text", "classify", "zoo:MO2"]);
    assert!(text.contains("orthomodular_lattice"));
    assert!(text.contains("PASS"));
}

#[test]
fn zoo_listing_and_printing() {
    let recs = records(&["zoo"]);
    assert_eq!(recs.len(), zoo().len());
    assert!(recs
        .iter()
        .any(|r| r["model"] == "firefly" && r["detail"] == "repsys"));
    let src = stdout(&["zoo", "2^2"]);
    assert!(parse(&src).is_ok());
    assert_eq!(code(&["zoo", "nope"]), 2);
}
