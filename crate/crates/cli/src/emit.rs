//! Deterministic report rendering.
//!
//! Every float prints through `{:.16e}` (17 significant digits), enough to
//! reconstruct the exact f64 bits on read-back, and object keys keep their
//! insertion order, so a report is byte-identical across runs of the same
//! command line. Matrices serialize in the same `{dim, real, imag}` shape the
//! input files use, which makes reports pipeable back into the tool.

use polarlog::linalg::Matrix;

pub enum Val {
    Bool(bool),
    UInt(u64),
    Int(i64),
    Num(f64),
    Str(String),
    List(Vec<Val>),
    Obj(Vec<(&'static str, Val)>),
}

pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn matrix_val(m: &Matrix) -> Val {
    let n = m.dim();
    let mut real = Vec::with_capacity(n * n);
    let mut imag = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            real.push(Val::Num(m[(i, j)].re));
            imag.push(Val::Num(m[(i, j)].im));
        }
    }
    Val::Obj(vec![
        ("dim", Val::UInt(n as u64)),
        ("real", Val::List(real)),
        ("imag", Val::List(imag)),
    ])
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn write_json(val: &Val, out: &mut String) {
    match val {
        Val::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Val::UInt(u) => out.push_str(&u.to_string()),
        Val::Int(i) => out.push_str(&i.to_string()),
        Val::Num(x) => out.push_str(&g17(*x)),
        Val::Str(s) => {
            out.push('"');
            out.push_str(&json_escape(s));
            out.push('"');
        }
        Val::List(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_json(item, out);
            }
            out.push(']');
        }
        Val::Obj(fields) => {
            out.push('{');
            for (k, (key, item)) in fields.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push('"');
                out.push_str(key);
                out.push_str("\":");
                write_json(item, out);
            }
            out.push('}');
        }
    }
}

pub fn render_json(val: &Val) -> String {
    let mut out = String::new();
    write_json(val, &mut out);
    out.push('\n');
    out
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_csv(val: &Val, path: &str, out: &mut String) {
    match val {
        Val::Bool(b) => out.push_str(&format!("{path},{b}\n")),
        Val::UInt(u) => out.push_str(&format!("{path},{u}\n")),
        Val::Int(i) => out.push_str(&format!("{path},{i}\n")),
        Val::Num(x) => out.push_str(&format!("{path},{}\n", g17(*x))),
        Val::Str(s) => out.push_str(&format!("{path},{}\n", csv_quote(s))),
        Val::List(items) => {
            for (k, item) in items.iter().enumerate() {
                write_csv(item, &format!("{path}[{k}]"), out);
            }
        }
        Val::Obj(fields) => {
            for (key, item) in fields {
                let child = if path.is_empty() {
                    (*key).to_string()
                } else {
                    format!("{path}.{key}")
                };
                write_csv(item, &child, out);
            }
        }
    }
}

/// Flattened key,value rows; lists index as `name[i]`, nesting joins with `.`.
pub fn render_csv(val: &Val) -> String {
    let mut out = String::from("key,value\n");
    write_csv(val, "", &mut out);
    out
}
