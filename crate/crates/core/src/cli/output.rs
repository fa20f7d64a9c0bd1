//! Self-describing output records and their renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

use crate::info::{Base, InfoValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned columns for reading, values in the selected base only.
    Table,
    /// Header row plus comma-separated records, both bases.
    Csv,
    /// One JSON object per line, both bases.
    JsonLines,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Real(f64),
    Int(u64),
    Text(String),
}

/// One row of output: named fields in a fixed order. Fields tagged with a
/// base are dropped from table output when they are not in the requested base.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputRecord {
    fields: Vec<(String, Field, Option<Base>)>,
}

impl OutputRecord {
    pub fn new(quantity: &str) -> Self {
        let mut r = Self::default();
        r.fields.push(("quantity".into(), Field::Text(quantity.into()), None));
        r
    }

    pub fn real(mut self, name: &str, value: f64) -> Self {
        self.fields.push((name.into(), Field::Real(value), None));
        self
    }

    pub fn int(mut self, name: &str, value: u64) -> Self {
        self.fields.push((name.into(), Field::Int(value), None));
        self
    }

    pub fn text(mut self, name: &str, value: &str) -> Self {
        self.fields.push((name.into(), Field::Text(value.into()), None));
        self
    }

    /// Adds `<prefix>_bits` and `<prefix>_nats`.
    pub fn info(mut self, prefix: &str, value: InfoValue) -> Self {
        self.fields
            .push((format!("{prefix}_bits"), Field::Real(value.bits()), Some(Base::Bits)));
        self.fields
            .push((format!("{prefix}_nats"), Field::Real(value.nats()), Some(Base::Nats)));
        self
    }

    pub fn names(&self) -> Vec<&str> {
        self.fields.iter().map(|(n, _, _)| n.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Field> {
        self.fields.iter().find(|(n, _, _)| n == name).map(|(_, f, _)| f)
    }

    fn visible(&self, base: Option<Base>) -> impl Iterator<Item = &(String, Field, Option<Base>)> {
        self.fields
            .iter()
            .filter(move |(_, _, b)| base.is_none() || b.is_none() || *b == base)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (name, field, _) in &self.fields {
            let v = match field {
                Field::Real(x) => Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
                Field::Int(i) => Value::Number((*i).into()),
                Field::Text(s) => Value::String(s.clone()),
            };
            map.insert(name.clone(), v);
        }
        Value::Object(map)
    }
}

/// Decimal rendering with `digits` significant digits, independent of locale.
pub fn format_real(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-6..15).contains(&exponent) {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

fn render_field(field: &Field, digits: usize) -> String {
    match field {
        Field::Real(x) => format_real(*x, digits),
        Field::Int(i) => i.to_string(),
        Field::Text(s) => s.clone(),
    }
}

/// Renders records. All records are expected to share one schema; the
/// header comes from the first.
pub fn render(records: &[OutputRecord], format: Format, base: Base) -> String {
    let mut out = String::new();
    let Some(first) = records.first() else {
        return out;
    };
    match format {
        Format::Csv => {
            out.push_str(&first.names().join(","));
            out.push('\n');
            for r in records {
                let row: Vec<String> = r.fields.iter().map(|(_, f, _)| render_field(f, 15)).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        Format::JsonLines => {
            for r in records {
                out.push_str(&r.to_json().to_string());
                out.push('\n');
            }
        }
        Format::Table => {
            let header: Vec<String> = first.visible(Some(base)).map(|(n, _, _)| n.clone()).collect();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| r.visible(Some(base)).map(|(_, f, _)| render_field(f, 10)).collect())
                .collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[String], out: &mut String| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                let _ = writeln!(out, "{}", padded.join("  ").trim_end());
            };
            line(&header, &mut out);
            for row in &rows {
                line(row, &mut out);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting_keeps_fifteen_digits() {
        assert_eq!(format_real(0.5, 15), "0.500000000000000");
        assert_eq!(format_real(2.0, 15), "2.00000000000000");
        assert_eq!(format_real(0.0, 15), "0.00000000000000");
        assert_eq!(format_real(1.0 / 3.0, 15), "0.333333333333333");
        assert_eq!(format_real(1.5e-9, 3), "1.50e-9");
        let back: f64 = format_real(std::f64::consts::PI, 15).parse().unwrap();
        assert!((back - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn table_hides_other_base() {
        let r = OutputRecord::new("capacity")
            .real("nbar", 1.0)
            .info("value", InfoValue::from_nats(2f64.ln() * 2.0, Base::Nats));
        let bits = render(&[r.clone()], Format::Table, Base::Bits);
        assert!(bits.contains("value_bits") && !bits.contains("value_nats"));
        let csv = render(&[r], Format::Csv, Base::Bits);
        assert!(csv.starts_with("quantity,nbar,value_bits,value_nats\n"));
    }
}
