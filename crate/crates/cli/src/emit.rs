//! Deterministic report rendering.
//!
//! Reports must be byte-identical across runs and thread counts, with
//! integers written verbatim at arbitrary precision, so rendering is done by
//! hand rather than through a serializer: object keys keep insertion order,
//! and numbers are emitted exactly as their decimal strings.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub enum Json {
    Bool(bool),
    /// Verbatim decimal integer (any precision).
    Int(String),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(&'static str, Json)>),
}

impl Json {
    pub fn int<T: ToString>(v: T) -> Json {
        Json::Int(v.to_string())
    }
    pub fn str<T: Into<String>>(v: T) -> Json {
        Json::Str(v.into())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Json::Int(s) => out.push_str(s),
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => {
                            let _ = write!(out, "\\u{:04x}", c as u32);
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    item.write(out, indent + 1);
                }
                out.push('\n');
                push_indent(out, indent);
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    let _ = write!(out, "\"{k}\": ");
                    v.write(out, indent + 1);
                }
                out.push('\n');
                push_indent(out, indent);
                out.push('}');
            }
        }
    }
}

fn push_indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

/// CSV with a header row; fields never contain commas (callers use
/// semicolon-joined digit vectors for structured values).
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_with_stable_order_and_trailing_newline() {
        let v = Json::Obj(vec![
            ("b", Json::int(2u64)),
            ("a", Json::Arr(vec![Json::Bool(true), Json::str("x\"y")])),
        ]);
        let s = v.render();
        assert!(s.ends_with('\n'));
        let pos_b = s.find("\"b\"").unwrap();
        let pos_a = s.find("\"a\"").unwrap();
        assert!(pos_b < pos_a, "insertion order preserved");
        assert!(s.contains("\\\""));
    }

    #[test]
    fn big_integers_verbatim() {
        let v = Json::Int("123456789012345678901234567890".into());
        assert_eq!(v.render(), "123456789012345678901234567890\n");
    }
}
