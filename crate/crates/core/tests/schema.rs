//! The shipped schemas accept the fixtures and every golden output.

use std::path::{Path, PathBuf};

use serde_json::Value;

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn load(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn validator(name: &str) -> jsonschema::Validator {
    jsonschema::validator_for(&load(&repo().join("docs/schema").join(name))).unwrap()
}

fn stdout(golden: &str) -> Option<&str> {
    let (head, rest) = golden.split_once("\n--- stdout\n")?;
    if head != "exit: 0" {
        return None;
    }
    rest.split_once("--- stderr\n").map(|(out, _)| out.trim_end())
}

#[test]
fn fixtures_match_the_input_schema() {
    let input = validator("input.schema.json");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    for name in ["a1", "a2", "quadrant"] {
        let doc = load(&dir.join(format!("{name}.json")));
        assert!(input.is_valid(&doc), "{name}");
    }
    let poly = load(&dir.join("poly.json"));
    let file_schema = load(&repo().join("docs/schema/input.schema.json"));
    let mut wrapped = file_schema.clone();
    wrapped
        .as_object_mut()
        .unwrap()
        .retain(|k, _| k == "$schema" || k == "$defs");
    wrapped["$ref"] = Value::from("#/$defs/polynomial_file");
    assert!(jsonschema::is_valid(&wrapped, &poly));
}

#[test]
fn golden_outputs_match_the_output_schema() {
    let output = validator("output.schema.json");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut checked = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Some(out) = stdout(&text) else { continue };
        let v: Value = serde_json::from_str(out).unwrap();
        let errors: Vec<String> = output.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", path.display());
        checked += 1;
    }
    assert!(checked >= 30, "only {checked} goldens checked");
}

#[test]
fn schemas_reject_what_the_parser_rejects() {
    let input = validator("input.schema.json");
    let bad = [
        r#"{"dim":2}"#,
        r#"{"dim":2,"cones":[[[1,0],[1.5,2]]]}"#,
        r#"{"dim":2,"cones":[[[1,0]]],"ideals":[]}"#,
        r#"{"dim":0,"cones":[[[1,0]]]}"#,
    ];
    for text in bad {
        let v: Value = serde_json::from_str(text).unwrap();
        assert!(!input.is_valid(&v), "{text}");
        assert!(toric_arcs::cli::parse_input(text).is_err(), "{text}");
    }
}
