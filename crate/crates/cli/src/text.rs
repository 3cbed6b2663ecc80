//! Human-readable rendering: a header followed by the results flattened to `path: value` lines.

use serde_json::Value;

use crate::Report;

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command.name()));
    out.push_str(&format!(
        "engine: {} (schema {})\n",
        report.engine_version, report.schema_version
    ));
    out.push_str(&format!("input: {}\n", report.input_digest));
    if let Some(t) = &report.timings {
        out.push_str(&format!("elapsed: {:.3} ms\n", t.elapsed_ms));
    }
    flatten("", &report.results, &mut out);
    out
}

fn is_leaf_list(items: &[Value]) -> bool {
    items.iter().all(|v| !v.is_object() && !v.is_array())
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(&p, child, out);
            }
        }
        Value::Array(items) if is_leaf_list(items) => {
            let parts: Vec<String> = items.iter().map(leaf).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), child, out);
            }
        }
        other => out.push_str(&format!("{path}: {}\n", leaf(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_values() {
        let mut out = String::new();
        flatten(
            "",
            &json!({"a": {"b": [1, 2]}, "c": [{"d": "x"}], "e": null}),
            &mut out,
        );
        assert_eq!(out, "a.b: [1, 2]\nc[0].d: x\ne: null\n");
    }
}
