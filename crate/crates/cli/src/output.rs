//! CSV and JSON rendering. Reals carry 12 significant digits, lines end in
//! `\n`, and JSON rows are flat objects keyed by the CSV header names.

use serde_json::{Map, Number, Value};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(u64),
    /// An input parameter, printed as given.
    Param(f64),
    /// A computed value, rounded to 12 significant digits.
    Real(f64),
    Bool(bool),
    Text(String),
}

pub trait Record {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<Field>;
}

/// `x` with 12 significant digits, trailing zeros dropped (`15.0`, `0.745355992500` -> `0.7453559925`).
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..=14).contains(&exponent) {
        let text = format!("{:.11e}", x);
        let (mantissa, exp) = text.split_once('e').unwrap_or((&text, "0"));
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (11 - exponent).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x))
}

fn trim_zeros(text: &str) -> String {
    if !text.contains('.') {
        return format!("{text}.0");
    }
    let trimmed = text.trim_end_matches('0');
    if trimmed.ends_with('.') {
        format!("{trimmed}0")
    } else {
        trimmed.to_string()
    }
}

fn csv_cell(field: &Field) -> String {
    match field {
        Field::Int(v) => v.to_string(),
        Field::Param(v) => v.to_string(),
        Field::Real(v) => format_real(*v),
        Field::Bool(v) => v.to_string(),
        Field::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
        Field::Text(t) => t.clone(),
    }
}

fn json_value(field: &Field) -> Value {
    let number = |x: f64| Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null);
    match field {
        Field::Int(v) => Value::from(*v),
        Field::Param(v) => number(*v),
        Field::Real(v) => number(format_real(*v).parse().unwrap_or(*v)),
        Field::Bool(v) => Value::Bool(*v),
        Field::Text(t) => Value::String(t.clone()),
    }
}

pub fn emit<R: Record>(records: &[R], format: crate::args::Format) -> Result<String, CliError> {
    if records.is_empty() {
        return Err(CliError::Usage("nothing to emit".into()));
    }
    let header = R::header();
    match format {
        crate::args::Format::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for r in records {
                let cells: Vec<String> = r.fields().iter().map(csv_cell).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            Ok(out)
        }
        crate::args::Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    let map: Map<String, Value> = header
                        .iter()
                        .zip(r.fields().iter())
                        .map(|(k, v)| (k.to_string(), json_value(v)))
                        .collect();
                    Value::Object(map)
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rows).map_err(|e| CliError::Usage(e.to_string()))?;
            out.push('\n');
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(15.0), "15.0");
        assert_eq!(format_real(14.999_999_999_999_98), "15.0");
        assert_eq!(format_real(0.9375), "0.9375");
        assert_eq!(format_real(0.745_355_992_499_929_9), "0.7453559925");
        assert_eq!(format_real(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_real(3030.674_918_305_618), "3030.67491831");
        assert_eq!(format_real(-2.5), "-2.5");
        assert_eq!(format_real(0.0), "0.0");
        assert_eq!(format_real(1.5e-9), "1.5e-9");
        assert_eq!(format_real(123.0), "123.0");
    }

    #[test]
    fn csv_quotes_text() {
        assert_eq!(csv_cell(&Field::Text("a,b".into())), "\"a,b\"");
        assert_eq!(csv_cell(&Field::Param(0.0)), "0");
        assert_eq!(csv_cell(&Field::Param(0.5)), "0.5");
    }
}
