//! Pretty JSON with leaf arrays kept on one line, so a matrix prints one
//! row per line.

use serde::Serialize;
use serde_json::Value;

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable to JSON");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out
}

fn is_flat(v: &Value, depth: usize) -> bool {
    match v {
        Value::Array(items) => depth > 0 && items.iter().all(|i| is_flat(i, depth - 1)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn indent(level: usize, out: &mut String) {
    out.extend(std::iter::repeat_n("  ", level));
}

fn write_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Array(items) if items.is_empty() || is_flat(v, 2) => {
            out.push_str(&serde_json::to_string(v).expect("value serializes"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                indent(level + 1, out);
                write_value(item, level + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&serde_json::to_string(key).expect("key serializes"));
                out.push_str(": ");
                write_value(item, level + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("value serializes")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rows_stay_on_one_line_and_parse_back() {
        let v = json!({"matrix": [[[1.0, 0.0], [0.5, -0.25]], [[0.0, 1.0], [2.0, 3.0]]], "n": 2, "meta": {}});
        let text = to_pretty(&v);
        assert!(text.contains("[[1.0,0.0],[0.5,-0.25]]"), "{text}");
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }
}
