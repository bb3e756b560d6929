//! Experiment reports and their CSV/JSON serializations. CSV numbers carry 17
//! significant digits, so a written report parses back bit-exactly.

use std::io::{Read, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

pub const CSV_HEADER: [&str; 8] =
    ["scheme", "quadrature", "epsilon", "n", "h", "error_inf", "error_star", "observed_order"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub scheme: String,
    pub quadrature: String,
    pub epsilon: f64,
    pub n: usize,
    pub h: f64,
    pub error_inf: Option<f64>,
    pub error_star: Option<f64>,
    pub observed_order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub problem: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub tool_version: String,
}

impl Metadata {
    pub fn now(problem: &str) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self { problem: problem.to_owned(), timestamp, tool_version: env!("CARGO_PKG_VERSION").to_owned() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub metadata: Metadata,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl ExperimentReport {
    pub fn write<W: Write>(&self, format: Format, out: W) -> Result<()> {
        match format {
            Format::Csv => write_csv(&self.rows, out),
            Format::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, self)?;
                writeln!(out)?;
                Ok(())
            }
        }
    }
}

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn format_optional(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.scheme.clone(),
            r.quadrature.clone(),
            format_float(r.epsilon),
            r.n.to_string(),
            format_float(r.h),
            format_optional(r.error_inf),
            format_optional(r.error_star),
            format_optional(r.observed_order),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ReportRow>> {
    let mut reader = csv::Reader::from_reader(input);
    if reader.headers()?.iter().ne(CSV_HEADER) {
        return Err(usage("unexpected csv header"));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let field = |i: usize| record.get(i).unwrap_or("");
        rows.push(ReportRow {
            scheme: field(0).to_owned(),
            quadrature: field(1).to_owned(),
            epsilon: parse_float(field(2))?,
            n: field(3).parse().map_err(|_| usage(format!("bad n '{}'", field(3))))?,
            h: parse_float(field(4))?,
            error_inf: parse_optional(field(5))?,
            error_star: parse_optional(field(6))?,
            observed_order: parse_optional(field(7))?,
        });
    }
    Ok(rows)
}

fn parse_float(s: &str) -> Result<f64> {
    s.parse().map_err(|_| usage(format!("bad number '{s}'")))
}

fn parse_optional(s: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_float(s).map(Some)
    }
}
