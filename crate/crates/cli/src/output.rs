use serde_json::Value;

use crate::Format;

/// Prints a report as pretty JSON or as `key: value` lines.
pub fn emit(value: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("values serialize")),
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", value, &mut lines);
            for (k, v) in lines {
                println!("{k}: {v}");
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.trim_end().replace('\n', "\\n")),
        _ => None,
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    if let Some(s) = scalar(v) {
        out.push((prefix.to_string(), s));
        return;
    }
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(prefix, k), x, out);
            }
        }
        Value::Array(items) => {
            if let Some(parts) = items.iter().map(flat_item).collect::<Option<Vec<_>>>() {
                out.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
            } else {
                for (i, x) in items.iter().enumerate() {
                    flatten(&join(prefix, &i.to_string()), x, out);
                }
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// Scalars and arrays of scalars render inline.
fn flat_item(v: &Value) -> Option<String> {
    scalar(v).or_else(|| match v {
        Value::Array(xs) => xs.iter().map(scalar).collect::<Option<Vec<_>>>().map(|p| format!("[{}]", p.join(", "))),
        _ => None,
    })
}
