//! Canonical JSON emission: sorted keys, fixed 17-significant-digit float
//! formatting, UTF-8, trailing newline. Two structurally equal reports
//! always serialize to identical bytes, and parse-then-re-emit is a fixed
//! point.

use serde_json::Value;

/// Fixed float formatting shared by the JSON report and every emitted CSV:
/// scientific notation with 17 significant digits, enough to reconstruct
/// the exact f64.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serializes a JSON value canonically with a trailing newline.
pub fn to_canonical_bytes(value: &Value) -> Vec<u8> {
    let mut out = String::new();
    write_value(value, &mut out);
    out.push('\n');
    out.into_bytes()
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else {
                let f = n.as_f64().expect("number is u64, i64, or f64");
                assert!(f.is_finite(), "non-finite float in report");
                out.push_str(&fmt_float(f));
            }
        }
        Value::String(s) => write_string(s, out),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        // serde_json's map is a BTreeMap, so iteration is already sorted.
        Value::Object(map) => {
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_string(key, out);
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

fn write_string(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_format_with_17_significant_digits() {
        assert_eq!(fmt_float(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(-0.003), "-3.0000000000000001e-3");
    }

    #[test]
    fn float_format_round_trips_exactly() {
        for &v in &[
            0.1,
            1.0 / 3.0,
            f64::MIN_POSITIVE,
            123456.789,
            -2.2e-308,
            0.0030095673296865,
        ] {
            let parsed: f64 = fmt_float(v).parse().unwrap();
            assert_eq!(parsed.to_bits(), v.to_bits(), "v={v}");
        }
    }

    #[test]
    fn keys_are_sorted_and_output_is_stable() {
        let value = json!({"beta": 1, "alpha": {"z": null, "a": [1.5, 2]}});
        let bytes = to_canonical_bytes(&value);
        assert_eq!(
            String::from_utf8(bytes.clone()).unwrap(),
            "{\"alpha\":{\"a\":[1.5000000000000000e0,2],\"z\":null},\"beta\":1}\n"
        );
        assert_eq!(bytes, to_canonical_bytes(&value));
    }

    #[test]
    fn parse_then_reemit_is_identity() {
        let value = json!({
            "n": 527u64,
            "p": 0.003009567329686569,
            "names": ["AU01", "AU45"],
            "none": null,
            "nested": {"r": -0.129, "count": 3}
        });
        let bytes = to_canonical_bytes(&value);
        let reparsed: Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(to_canonical_bytes(&reparsed), bytes);
    }

    #[test]
    fn strings_are_escaped() {
        let value = json!({"k": "a\"b\\c\nd\u{1}"});
        let bytes = to_canonical_bytes(&value);
        assert_eq!(
            String::from_utf8(bytes).unwrap(),
            "{\"k\":\"a\\\"b\\\\c\\nd\\u0001\"}\n"
        );
    }
}
