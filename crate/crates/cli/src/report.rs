//! Report documents: one versioned JSON envelope or one flat CSV table per run.

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "quermass-report/1";

/// A flat table; cells are already formatted.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Everything a command produces.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub table: Table,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    command: &'a str,
    config: &'a Value,
    result: &'a Value,
}

impl Report {
    pub fn new(command: &'static str, config: impl Serialize, result: impl Serialize, table: Table) -> CliResult<Self> {
        Ok(Report { command, config: to_value(config)?, result: to_value(result)?, table })
    }

    pub fn render(&self, format: Format) -> CliResult<Vec<u8>> {
        match format {
            Format::Json => {
                let envelope =
                    Envelope { schema: SCHEMA, command: self.command, config: &self.config, result: &self.result };
                let mut text = serde_json::to_vec_pretty(&envelope).map_err(|e| CliError::Io(e.to_string()))?;
                text.push(b'\n');
                Ok(text)
            }
            Format::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                writer.write_record(&self.table.header).map_err(|e| CliError::Io(e.to_string()))?;
                for row in &self.table.rows {
                    writer.write_record(row).map_err(|e| CliError::Io(e.to_string()))?;
                }
                writer.into_inner().map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

fn to_value(v: impl Serialize) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Io(format!("serializing report: {e}")))
}

/// Shortest round-trip formatting (exponent form for tiny values); non-finite values become empty cells.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        String::new()
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn components(v: &[f64]) -> Vec<String> {
    v.iter().map(|x| num(*x)).collect()
}
