//! JSON and CSV rendering helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
pub fn integer(n: &BigInt) -> Value {
    if let Some(v) = n.to_i64() {
        json!(v)
    } else if let Some(v) = n.to_u64() {
        json!(v)
    } else {
        json!(n.to_string())
    }
}

/// Exact `"num/den"` (or `"num"`), or a decimal number with `--float`.
pub fn rational(r: &BigRational, float: bool) -> Value {
    if float {
        json!(r.to_f64().unwrap_or(f64::NAN))
    } else if r.is_integer() {
        json!(r.numer().to_string())
    } else {
        json!(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn document(command: &str, fields: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(command));
    if let Value::Object(rest) = fields {
        doc.extend(rest);
    }
    Value::Object(doc)
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// The plain text of a JSON scalar, for CSV cells.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
