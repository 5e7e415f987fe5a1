//! Rendering of records and tables as JSON or CSV at a fixed precision.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Number, Value};
use tfbound::figures::Table;

/// Significant digits of every emitted number.
pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a command produces: a single structured record or a table.
#[derive(Debug, Clone)]
pub enum Output {
    Record(Value),
    Table(Table),
}

impl Output {
    pub fn record<S: Serialize>(value: &S) -> anyhow::Result<Self> {
        Ok(Self::Record(serde_json::to_value(value)?))
    }

    pub fn default_format(&self) -> Format {
        match self {
            Self::Record(_) => Format::Json,
            Self::Table(_) => Format::Csv,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Self::Record(v), Format::Json) => json(v),
            (Self::Record(v), Format::Csv) => record_csv(v),
            (Self::Table(t), Format::Json) => json(&serde_json::to_value(t).expect("tables serialize")),
            (Self::Table(t), Format::Csv) => table_csv(t),
        }
    }
}

/// `x` rounded to [`SIG_DIGITS`] significant digits, in the shortest of
/// fixed or scientific notation.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Rounds every float in `v` to [`SIG_DIGITS`] significant digits.
pub fn round_value(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let r: f64 = fmt_num(x).parse().expect("formatted number parses");
            Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.iter().map(round_value).collect()),
        Value::Object(map) => {
            Value::Object(map.iter().map(|(k, v)| (k.clone(), round_value(v))).collect::<Map<_, _>>())
        }
        other => other.clone(),
    }
}

fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_value(v)).expect("values serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => fmt_num(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        _ => unreachable!("flattened values are scalars"),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        scalar => out.push((prefix.to_string(), scalar_text(scalar))),
    }
}

/// A record as `key,value` rows with dotted paths for nested fields.
fn record_csv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut s = String::from("key,value\n");
    for (k, v) in rows {
        let _ = writeln!(s, "{},{}", csv_field(&k), csv_field(&v));
    }
    s
}

fn table_csv(t: &Table) -> String {
    let mut s = t.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
    s.push('\n');
    for row in &t.rows {
        let cells: Vec<String> = row.iter().map(|c| c.map(fmt_num).unwrap_or_default()).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(0.00123456789012345), "0.00123456789012");
        assert_eq!(fmt_num(1.5e-9), "1.5e-9");
        assert_eq!(fmt_num(6.02214076e23), "6.02214076e23");
        assert_eq!(fmt_num(123456789012.4), "123456789012");
        assert_eq!(fmt_num(9.99999999999999), "10");
    }

    #[test]
    fn rounding_is_idempotent() {
        let v = json!({"a": 0.1 + 0.2, "b": [1.0 / 3.0, null], "c": true, "n": 3});
        let once = round_value(&v);
        assert_eq!(round_value(&once), once);
        assert_eq!(once["a"], json!(0.3));
        assert_eq!(once["n"], json!(3));
    }

    #[test]
    fn records_flatten_to_key_value_rows() {
        let v = json!({"x": 1.25, "inner": {"ok": false, "name": "a,b"}, "list": [2.0], "none": null});
        let csv = Output::Record(v).render(Format::Csv);
        assert_eq!(csv, "key,value\ninner.name,\"a,b\"\ninner.ok,false\nlist.0,2\nnone,\nx,1.25\n");
    }

    #[test]
    fn tables_leave_blank_cells() {
        let mut t = Table::new(vec!["c".into(), "lambda1".into()]);
        t.push(vec![Some(0.1), None]);
        assert_eq!(Output::Table(t.clone()).render(Format::Csv), "c,lambda1\n0.1,\n");
        let j: Value = serde_json::from_str(&Output::Table(t).render(Format::Json)).unwrap();
        assert_eq!(j["rows"][0][1], Value::Null);
    }
}
