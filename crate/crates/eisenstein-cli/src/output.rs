//! Rendering records as JSON Lines, CSV or plain text.

use std::collections::BTreeSet;
use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    /// Top-level fields as columns; nested values are embedded as JSON.
    Csv,
    /// `key=value` pairs, one record per line.
    Human,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_records(out: &mut impl Write, records: &[Value], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{r}")?;
            }
        }
        Format::Csv => {
            let columns: BTreeSet<&str> =
                records.iter().filter_map(Value::as_object).flat_map(|m| m.keys().map(String::as_str)).collect();
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&columns)?;
            for r in records {
                w.write_record(columns.iter().map(|c| r.get(*c).map(scalar).unwrap_or_default()))?;
            }
            w.flush()?;
        }
        Format::Human => {
            for r in records {
                let line = match r.as_object() {
                    Some(m) => m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect::<Vec<_>>().join(" "),
                    None => r.to_string(),
                };
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}
