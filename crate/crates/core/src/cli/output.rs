//! Flat records and their table, CSV and JSON-lines renderings.
//!
//! Numbers are rendered once, with the shortest round-trip representation,
//! and the same text goes into both machine formats. Non-finite values are
//! written as the strings `inf`, `-inf` and `nan`.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Number};

use crate::ratio::RatioValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    JsonLines,
}

/// Linear ratios above this are shown in log10 form only.
pub const LINEAR_DISPLAY_MAX_LOG10: f64 = 15.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Int(u64),
    Num(f64),
    Bool(bool),
    Missing,
}

impl Value {
    fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Text(s) => s.clone().into(),
            Value::Int(i) => (*i).into(),
            Value::Num(x) => match Number::from_f64(*x) {
                Some(n) => serde_json::Value::Number(n),
                None => non_finite(*x).into(),
            },
            Value::Bool(b) => (*b).into(),
            Value::Missing => serde_json::Value::Null,
        }
    }

    fn to_cell(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Int(i) => i.to_string(),
            Value::Num(x) if x.is_finite() => serde_json::to_string(x).expect("finite f64 serializes"),
            Value::Num(x) => non_finite(*x).to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Missing => String::new(),
        }
    }
}

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Missing, Into::into)
    }
}

/// One output row: named fields in a fixed order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, name: impl Into<String>, value: impl Into<Value>) -> Self {
        self.fields.push((name.into(), value.into()));
        self
    }

    /// Adds `{name}_log10` and `{name}_linear`; the linear column is empty
    /// when the ratio exceeds `10^15` or cannot be represented.
    pub fn with_ratio(self, name: &str, r: RatioValue) -> Self {
        let linear = match r {
            RatioValue::Finite { log10 } if log10 > LINEAR_DISPLAY_MAX_LOG10 => None,
            _ => r.to_linear(),
        };
        self.with(format!("{name}_log10"), r.log10()).with(format!("{name}_linear"), linear)
    }

    pub fn append(mut self, other: Record) -> Self {
        self.fields.extend(other.fields);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(n, _)| n.as_str())
    }
}

pub fn write_records<W: Write>(out: &mut W, format: OutputFormat, records: &[Record]) -> io::Result<()> {
    match format {
        OutputFormat::JsonLines => {
            for r in records {
                let obj: Map<String, serde_json::Value> =
                    r.fields.iter().map(|(n, v)| (n.clone(), v.to_json())).collect();
                serde_json::to_writer(&mut *out, &obj)?;
                writeln!(out)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            if let Some(first) = records.first() {
                w.write_record(first.names())?;
            }
            for r in records {
                w.write_record(r.fields.iter().map(|(_, v)| v.to_cell()))?;
            }
            w.flush()?;
        }
        OutputFormat::Table => write_table(out, records)?,
    }
    Ok(())
}

fn table_cell(v: &Value) -> String {
    match v {
        Value::Missing => "-".to_string(),
        other => other.to_cell(),
    }
}

fn write_table<W: Write>(out: &mut W, records: &[Record]) -> io::Result<()> {
    match records {
        [] => Ok(()),
        [single] => {
            let width = single.names().map(str::len).max().unwrap_or(0);
            for (name, value) in &single.fields {
                writeln!(out, "{name:<width$}  {}", table_cell(value))?;
            }
            Ok(())
        }
        many => {
            let header: Vec<&str> = many[0].names().collect();
            let rows: Vec<Vec<String>> = many
                .iter()
                .map(|r| r.fields.iter().map(|(_, v)| table_cell(v)).collect())
                .collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &mut dyn Iterator<Item = &str>| {
                cells
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(&mut header.iter().copied()))?;
            for row in &rows {
                writeln!(out, "{}", line(&mut row.iter().map(String::as_str)))?;
            }
            Ok(())
        }
    }
}
