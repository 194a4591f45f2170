//! Text rendering of JSON reports.
//!
//! Scalars print as `key  value` lines; arrays of objects print as aligned tables
//! whose headers are the JSON keys, so text and JSON carry the same numbers.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            if parts.is_empty() {
                "-".into()
            } else {
                parts.join(", ")
            }
        }
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

/// Aligned table; nested values are written inline as JSON.
pub fn table(rows: &[Value]) -> String {
    let mut headers: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("rows are objects").keys() {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| headers.iter().map(|h| r.get(h).map_or("-".into(), scalar)).collect())
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| cells.iter().map(|c| c[i].chars().count()).chain([h.len()]).max().unwrap())
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(&headers)];
    out.push(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.extend(cells.iter().map(|c| line(c)));
    out.join("\n") + "\n"
}

/// Renders any report value.
pub fn render(v: &Value) -> String {
    match v {
        Value::Array(rows) if is_table(v) => table(rows),
        Value::Object(map) => {
            let width = map
                .iter()
                .filter(|(_, v)| !is_table(v) && !v.is_object())
                .map(|(k, _)| k.len())
                .max()
                .unwrap_or(0);
            let mut out = String::new();
            for (k, v) in map {
                if !is_table(v) && !v.is_object() {
                    out += &format!("{k:<width$}  {}\n", scalar(v));
                }
            }
            for (k, v) in map {
                if is_table(v) || v.is_object() {
                    out += &format!("\n{k}:\n{}", render(v));
                }
            }
            out
        }
        other => scalar(other) + "\n",
    }
}
