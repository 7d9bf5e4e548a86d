//! Text rendering of a report. It walks the same JSON value that `--format
//! json` prints, so both forms carry the same facts.

use serde_json::Value;

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            if is_empty(v) {
                continue;
            }
            field(&mut out, 0, k, v);
        }
    }
    out
}

fn is_empty(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Array(a) => a.is_empty(),
        _ => false,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_))) => Some(format!(
            "[{}]",
            a.iter().map(Value::to_string).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        _ => None,
    }
}

fn field(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    body(out, depth + 1, v);
}

fn body(out: &mut String, depth: usize, v: &Value) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                field(out, depth, k, x);
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        let mut sub = String::new();
                        body(&mut sub, depth + 1, x);
                        let inner = "  ".repeat(depth + 1);
                        out.push_str(&format!("{pad}- {}", sub.trim_start_matches(&inner)));
                    }
                }
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_items_inline_their_first_field() {
        let v = json!({
            "command": "x",
            "verdict": null,
            "classes": [],
            "result": { "bad_n": [1, 2], "items": [{ "a": 1, "b": { "c": "d" } }] },
        });
        assert_eq!(
            text(&v),
            "command: x\nresult:\n  bad_n: [1, 2]\n  items:\n    - a: 1\n      b:\n        c: d\n"
        );
    }
}
