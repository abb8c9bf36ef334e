//! Tabular output as CSV or JSON.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Self::Int(v as i64)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

/// Shortest decimal that reads back to the same `f64`, in exponent form
/// outside `[1e-5, 1e16)`.
pub fn fmt_float(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && v.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Self::Num(v) => fmt_float(*v),
            Self::Int(v) => v.to_string(),
            Self::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Num(v) => json!(v),
            Self::Int(v) => json!(v),
            Self::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn write_to<W: Write>(&self, out: W, format: Format) -> io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::text))?;
                }
                w.flush()
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect();
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &json!({ "columns": self.columns, "rows": rows }))?;
                writeln!(out)
            }
        }
    }

    /// Writes to `path`, or to standard output when `path` is `None`.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(p) => self.write_to(File::create(p)?, format),
            None => self.write_to(io::stdout().lock(), format),
        }
    }
}
