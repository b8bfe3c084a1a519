//! Report encodings.
//!
//! Every run produces one record `{command, config, result}`. The JSON encoding
//! prints it as pretty JSON. The text encoding prints one `path = value` line
//! per scalar leaf, where `path` joins object keys with `.` and array indices
//! with `[i]`, strings are printed bare and `null` as `none`.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn render(record: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(record).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            flatten(record, String::new(), &mut out);
            out
        }
    }
}

fn flatten(v: &Value, path: String, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(child, p, out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path} = [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{path} = []\n"));
            }
            for (i, child) in items.iter().enumerate() {
                flatten(child, format!("{path}[{i}]"), out);
            }
        }
        _ => out.push_str(&format!("{path} = {}\n", scalar(v))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
