//! CSV and JSON Lines encoders.
//!
//! CSV: first line is the header, floats are written with 17 significant
//! digits in scientific notation, fields are comma separated, lines end in
//! LF. JSON: one object per line with keys in column order. Non-finite
//! values are refused in both formats.

use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(u64),
    /// Written as an empty CSV field or JSON `null` when absent.
    OptInt(Option<u64>),
    Text(String),
    Bool(bool),
}

pub trait Record {
    fn columns() -> &'static [&'static str];
    fn values(&self) -> Vec<Value>;
}

#[derive(Debug, thiserror::Error)]
#[error("column `{column}` is not finite ({value})")]
pub struct NonFinite {
    pub column: &'static str,
    pub value: f64,
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Float(x) => format!("{x:.16e}"),
        Value::Int(i) => i.to_string(),
        Value::OptInt(Some(i)) => i.to_string(),
        Value::OptInt(None) => String::new(),
        Value::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::Text(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
    }
}

fn json_field(v: &Value) -> String {
    match v {
        Value::Float(x) => serde_json::Number::from_f64(*x)
            .expect("checked finite")
            .to_string(),
        Value::Int(i) => i.to_string(),
        Value::OptInt(Some(i)) => i.to_string(),
        Value::OptInt(None) => "null".to_owned(),
        Value::Text(s) => serde_json::Value::String(s.clone()).to_string(),
        Value::Bool(b) => b.to_string(),
    }
}

fn check_finite<R: Record>(values: &[Value]) -> Result<(), NonFinite> {
    for (column, v) in R::columns().iter().zip(values) {
        if let Value::Float(x) = v {
            if !x.is_finite() {
                return Err(NonFinite { column, value: *x });
            }
        }
    }
    Ok(())
}

/// Encodes `records` in `format`; the whole output or nothing.
pub fn render<R: Record>(records: &[R], format: Format) -> Result<String, NonFinite> {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(&R::columns().join(","));
        out.push('\n');
    }
    for r in records {
        let values = r.values();
        debug_assert_eq!(values.len(), R::columns().len());
        check_finite::<R>(&values)?;
        match format {
            Format::Csv => {
                let fields: Vec<String> = values.iter().map(csv_field).collect();
                out.push_str(&fields.join(","));
            }
            Format::Json => {
                out.push('{');
                for (i, (k, v)) in R::columns().iter().zip(&values).enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "\"{k}\":{}", json_field(v));
                }
                out.push('}');
            }
        }
        out.push('\n');
    }
    Ok(out)
}
