//! JSON rendering with a fixed number of significant digits, plus the aligned
//! key/value form used by `--pretty`.

use serde::Serialize;
use serde_json::Value;

pub fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn number(n: &serde_json::Number, digits: usize) -> String {
    if n.is_f64() {
        let x = n.as_f64().unwrap_or(f64::NAN);
        if x.is_finite() {
            return format!("{:.*e}", digits - 1, x);
        }
        return "null".into();
    }
    n.to_string()
}

fn scalar(v: &Value, digits: usize) -> String {
    match v {
        Value::Number(n) => number(n, digits),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

/// One-line JSON with every float printed to `digits` significant digits.
pub fn render(v: &Value, digits: usize) -> String {
    let mut out = String::new();
    write(v, digits, &mut out);
    out
}

fn write(v: &Value, digits: usize, out: &mut String) {
    match v {
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write(x, digits, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            out.push('{');
            for (i, (k, x)) in m.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write(x, digits, out);
            }
            out.push('}');
        }
        other => out.push_str(&scalar(other, digits)),
    }
}

/// Flattened `path  value` lines, aligned on the value column. Arrays of
/// scalars (points, complex numbers) stay on one line.
pub fn render_table(v: &Value, digits: usize) -> String {
    let mut rows = Vec::new();
    flatten("", v, digits, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, x) in rows {
        out.push_str(&format!("{k:<width$}  {x}\n"));
    }
    out
}

fn flatten(path: &str, v: &Value, digits: usize, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join(k), x, digits, rows);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, digits, rows);
            }
        }
        other => rows.push((path.to_string(), render(other, digits))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_use_fixed_digits() {
        let v = json!({"value": [10.0 / 3.0, 0.0], "n": 7, "exact": "10/3"});
        let s = render(&v, 17);
        assert_eq!(s, r#"{"exact":"10/3","n":7,"value":[3.3333333333333335e0,0.0000000000000000e0]}"#);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["value"][0].as_f64().unwrap(), 10.0 / 3.0);
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(render(&json!([1.5]), 3), "[1.50e0]");
        let v = Value::Array(vec![serde_json::Number::from_f64(2.0).map(Value::Number).unwrap(), Value::Null]);
        assert_eq!(render(&v, 2), "[2.0e0,null]");
    }

    #[test]
    fn table_is_aligned() {
        let t = render_table(&json!({"a": {"bb": 1}, "c": [1, 2]}), 5);
        assert_eq!(t, "a.bb  1\nc     [1,2]\n");
    }
}
