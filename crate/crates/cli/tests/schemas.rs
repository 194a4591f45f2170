use std::path::PathBuf;

use clap::Parser;
use duval_cli::{execute, render::render, Cli};
use serde_json::Value;

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// One representative invocation per verb, paired with its schema.
fn cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("classify", vec!["classify", "--type", "A5", "--char", "2"]),
        ("classify", vec!["classify", "--max-p", "7"]),
        ("equation", vec!["equation", "--type", "D6", "--char", "3"]),
        ("equation", vec!["equation", "--type", "D4", "--char", "5", "--paper-d-index"]),
        ("tjurina", vec!["tjurina", "--type", "A4", "--char", "5"]),
        ("tjurina", vec!["--order", "lex", "tjurina", "--type", "E7", "--char", "11"]),
        ("tjurina-grid", vec!["tjurina-grid", "--max-p", "7", "--max-a", "5", "--max-d", "6"]),
        ("invariants", vec!["invariants", "--max-n", "6", "--max-p", "7"]),
        ("invariants", vec!["invariants", "--group", "bd"]),
        ("derivation", vec!["derivation", "--poly", "x^2 - y^3", "--m", "6", "--char", "3"]),
        ("resolution-check", vec!["resolution-check"]),
        ("resolution-check", vec!["resolution-check", "--char", "3", "--center", "divisor"]),
        ("lattice-search", vec!["lattice", "search", "--k", "1", "--rank", "2"]),
        ("lattice-search", vec!["lattice", "search", "--k", "2", "--rank", "1"]),
        ("lattice-snf", vec!["lattice", "snf", "--matrix", "2,1;1,2"]),
        ("lattice-bound", vec!["lattice", "bound", "--r1", "21", "--r2", "20"]),
        ("k3-report", vec!["k3-report"]),
        ("groebner", vec!["groebner", "--char", "3", "x*y - z^3", "y", "x"]),
        ("groebner", vec!["groebner", "--char", "5", "--vars", "x,y", "x^2"]),
    ]
}

fn run(args: &[&str]) -> Value {
    let cli = Cli::try_parse_from(std::iter::once("duval").chain(args.iter().copied())).unwrap();
    execute(&cli).unwrap()
}

#[test]
fn json_output_validates_against_shipped_schemas() {
    for (name, args) in cases() {
        let validator = jsonschema::validator_for(&schema(name)).unwrap();
        let value = run(&args);
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name} {args:?}: {errors:?}");
    }
}

#[test]
fn schemas_reject_malformed_reports() {
    let validator = jsonschema::validator_for(&schema("tjurina")).unwrap();
    let mut v = run(&["tjurina", "--type", "A2", "--char", "3"]);
    assert!(validator.is_valid(&v));
    v["d"] = Value::from("three");
    assert!(!validator.is_valid(&v));
    v.as_object_mut().unwrap().remove("d");
    assert!(!validator.is_valid(&v));
}

fn integers_in_json(v: &Value, out: &mut Vec<i64>) {
    match v {
        Value::Number(n) => out.push(n.as_i64().unwrap()),
        Value::String(s) => out.extend(integers_in_text(s)),
        Value::Array(items) => items.iter().for_each(|i| integers_in_json(i, out)),
        Value::Object(m) => m.values().for_each(|i| integers_in_json(i, out)),
        _ => {}
    }
}

/// Whitespace- or comma-separated integer tokens.
fn integers_in_text(text: &str) -> Vec<i64> {
    text.split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
        .filter_map(|t| t.parse::<i64>().ok())
        .collect()
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    for (name, args) in cases() {
        let value = run(&args);
        let mut from_json = Vec::new();
        integers_in_json(&value, &mut from_json);
        let mut from_text = integers_in_text(&render(&value));
        from_json.sort();
        from_text.sort();
        assert_eq!(from_json, from_text, "{name} {args:?}");
    }
}

#[test]
fn text_table_columns_match_json_fields() {
    let value = run(&["tjurina-grid"]);
    let text = render(&value);
    let table: Vec<&str> = text.lines().skip_while(|l| *l != "rows:").skip(1).collect();
    let headers: Vec<&str> = table[0].split_whitespace().collect();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(table.len() - 2, rows.len());
    for (line, row) in table[2..].iter().zip(rows) {
        for (h, cell) in headers.iter().zip(line.split_whitespace()) {
            let expected = match &row[*h] {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(cell, expected, "{h}");
        }
    }
}
