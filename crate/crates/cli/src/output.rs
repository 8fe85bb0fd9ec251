use std::io::{self, Write};

use serde_json::Value;

use crate::Format;

/// A JSON value as a single CSV or text cell: strings bare, the rest as JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn write_text(out: &mut impl Write, rec: &Value) -> io::Result<()> {
    let Value::Object(m) = rec else {
        return writeln!(out, "{rec}");
    };
    for (k, v) in m {
        match (k.as_str(), v) {
            ("hodge", Value::Array(rows)) => {
                writeln!(out, "hodge:")?;
                for row in rows {
                    let cells: Vec<String> = row
                        .as_array()
                        .into_iter()
                        .flatten()
                        .map(|x| format!("{:>5}", x.to_string()))
                        .collect();
                    writeln!(out, "  {}", cells.join(""))?;
                }
            }
            ("per_l" | "census", Value::Array(items)) => {
                writeln!(out, "{k}:")?;
                for item in items {
                    writeln!(out, "  {item}")?;
                }
            }
            _ => writeln!(out, "{k}: {}", cell(v))?,
        }
    }
    Ok(())
}

pub fn csv_header(rec: &Value) -> Vec<String> {
    rec.as_object()
        .map(|m| m.keys().cloned().collect())
        .unwrap_or_default()
}

pub fn csv_row(rec: &Value, header: &[String]) -> Vec<String> {
    header.iter().map(|k| cell(&rec[k.as_str()])).collect()
}

pub fn write_one(out: &mut impl Write, rec: &Value, format: Format, first: bool) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{rec}"),
        Format::Text => {
            if !first {
                writeln!(out)?;
            }
            write_text(out, rec)
        }
        Format::Csv => {
            let header = csv_header(rec);
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(&mut *out);
            if first {
                w.write_record(&header)?;
            }
            w.write_record(csv_row(rec, &header))?;
            w.flush()
        }
    }
}

pub fn write_records(out: &mut impl Write, recs: &[Value], format: Format) -> io::Result<()> {
    for (i, rec) in recs.iter().enumerate() {
        write_one(out, rec, format, i == 0)?;
    }
    Ok(())
}
