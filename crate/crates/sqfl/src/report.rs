//! Tabular scan reports and their serialization.
//!
//! Every scan produces a [`ScanReport`]: an ordered parameter list, a
//! fixed column set, one row per grid point, and summary statistics that
//! can be recomputed from the rows.  Reports render to exactly two
//! formats:
//!
//! * **JSON** — a single compact object with the fixed top-level keys
//!   `rows`, `summary`, `params`, `version` (in that order), terminated
//!   by one newline.  Rows are objects keyed by column name so the file
//!   is self-describing; key order follows the declared columns.
//! * **CSV** — `# key=value` comment lines for the parameters, then the
//!   header row, then one record per grid point.  Floats are printed as
//!   `{:.16e}` (17 significant digits, lossless for f64); summary stats
//!   trail the table as further `# summary.key=value` comments so the
//!   file stands alone.
//!
//! Rendering is deterministic: identical inputs give byte-identical
//! output, which the golden-file tests rely on.

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};

/// Crate version stamped into every report.
pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One table cell: scans mix integer grid coordinates with floating
/// observations, and the distinction must survive serialization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    /// Numeric view of the cell (integers widen losslessly at report scale).
    pub fn as_f64(self) -> f64 {
        match self {
            Cell::Int(v) => v as f64,
            Cell::Float(v) => v,
        }
    }

    fn to_json(self) -> Value {
        match self {
            Cell::Int(v) => Value::Number(Number::from(v)),
            Cell::Float(v) => Number::from_f64(v)
                .map(Value::Number)
                // JSON has no NaN/inf; degenerate cells surface as null
                // rather than silently corrupting a number.
                .unwrap_or(Value::Null),
        }
    }

    fn to_csv_field(self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

/// A finished scan: parameters, columns, rows, and summary statistics.
#[derive(Debug, Clone)]
pub struct ScanReport {
    /// Ordered `(key, value)` parameters, starting with the scan name.
    pub params: Vec<(String, String)>,
    /// Column names, in row order.
    pub columns: Vec<String>,
    /// One entry per grid point; each row length equals `columns.len()`.
    pub rows: Vec<Vec<Cell>>,
    /// Ordered named statistics recomputable from the rows.
    pub summary: Vec<(String, f64)>,
}

impl ScanReport {
    pub fn new(scan: &str, columns: &[&str]) -> Self {
        ScanReport {
            params: vec![("scan".to_string(), scan.to_string())],
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn stat(&mut self, key: &str, value: f64) {
        self.summary.push((key.to_string(), value));
    }

    /// Compact JSON object with fixed key order, one trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut root = Map::new();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        root.insert("rows".to_string(), Value::Array(rows));
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert(
                k.clone(),
                Number::from_f64(*v).map(Value::Number).unwrap_or(Value::Null),
            );
        }
        root.insert("summary".to_string(), Value::Object(summary));
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), Value::String(v.clone()));
        }
        root.insert("params".to_string(), Value::Object(params));
        root.insert(
            "version".to_string(),
            Value::String(REPORT_VERSION.to_string()),
        );
        let mut out = Value::Object(root).to_string();
        out.push('\n');
        out
    }

    /// CSV with `# key=value` parameter comments, a header, one record
    /// per row, and trailing `# summary.key=value` comments.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.params {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&format!("# version={REPORT_VERSION}\n"));
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(&self.columns).expect("header");
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| c.to_csv_field()).collect();
            wtr.write_record(&fields).expect("record");
        }
        let body = wtr.into_inner().expect("csv buffer");
        out.push_str(std::str::from_utf8(&body).expect("csv is utf-8"));
        for (k, v) in &self.summary {
            out.push_str(&format!("# summary.{k}={v:.16e}\n"));
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json_string(),
            OutputFormat::Csv => self.to_csv_string(),
        }
    }
}

/// Output format for report-producing commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::domain(format!(
                "unknown output format '{other}' (expected 'json' or 'csv')"
            ))),
        }
    }
}

/// Serialize any single-object artifact as compact JSON with a trailing
/// newline — the shape every scalar subcommand emits.
pub fn json_object_string<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("artifact serializes");
    out.push('\n');
    out
}

/// Minimum, maximum, and mean of a non-empty value sequence — the
/// standard summary triple.  Returns None for an empty sequence.
pub fn min_max_mean(values: impl IntoIterator<Item = f64>) -> Option<(f64, f64, f64)> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut n = 0usize;
    for v in values {
        min = min.min(v);
        max = max.max(v);
        sum += v;
        n += 1;
    }
    if n == 0 {
        None
    } else {
        Some((min, max, sum / n as f64))
    }
}
