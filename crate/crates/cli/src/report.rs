use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

/// A flat table used for CSV and text output.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Command outcome before rendering.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub route: String,
    pub values: Value,
    pub routes: Option<Value>,
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub elapsed_ms: Option<f64>,
    pub table: Table,
    /// Set when an identity or cross-route check failed.
    pub failed: bool,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    command: &'a str,
    inputs: &'a Map<String, Value>,
    route: &'a str,
    values: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    routes: Option<&'a Value>,
    deviation: Option<f64>,
    tolerance: f64,
    elapsed_ms: Option<f64>,
}

impl Report {
    pub fn render(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => {
                let json = JsonReport {
                    schema_version: SCHEMA_VERSION,
                    command: self.command,
                    inputs: &self.inputs,
                    route: &self.route,
                    values: &self.values,
                    routes: self.routes.as_ref(),
                    deviation: self.deviation,
                    tolerance: self.tolerance,
                    elapsed_ms: self.elapsed_ms,
                };
                serde_json::to_writer_pretty(&mut *out, &json)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.table.header)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            Format::Text => self.render_text(out)?,
        }
        Ok(())
    }

    fn render_text(&self, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "command: {}", self.command)?;
        for (k, v) in &self.inputs {
            writeln!(out, "{k}: {}", plain(v))?;
        }
        writeln!(out, "route: {}", self.route)?;
        writeln!(out, "{}", self.table.header.join("\t"))?;
        for row in &self.table.rows {
            writeln!(out, "{}", row.join("\t"))?;
        }
        match self.deviation {
            Some(d) => writeln!(out, "deviation: {d:.3e} (tolerance {:.3e})", self.tolerance)?,
            None => writeln!(out, "tolerance: {:.3e}", self.tolerance)?,
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "elapsed_ms: {ms:.1}")?;
        }
        if self.failed {
            writeln!(out, "status: FAILED")?;
        }
        Ok(())
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}
