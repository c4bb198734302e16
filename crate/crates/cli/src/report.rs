//! Run reports rendered as CSV (RFC-4180-style quoting) or JSON lines.
//!
//! Floats are printed with 17 significant digits so identical arguments
//! produce byte-identical output; timestamps and timings go to stderr only.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Str(s) => csv_quote(s),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => {
                if v.is_finite() {
                    fmt_float(*v)
                } else {
                    format!("\"{}\"", fmt_float(*v))
                }
            }
            Cell::Str(s) => json_quote(s),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => "null".to_string(),
        }
    }
}

/// 17 significant digits, locale-free.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A labeled table plus run metadata. Only the table reaches stdout; the
/// metadata (including the timestamp) is stderr-only so identical arguments
/// stay byte-identical.
pub struct RunReport {
    pub command: &'static str,
    pub parameters: Vec<(String, String)>,
    pub timestamp: String,
    pub tool_version: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl RunReport {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            parameters: Vec::new(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            tool_version: env!("CARGO_PKG_VERSION"),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Data rows to stdout; command metadata (with timestamp) to stderr.
    pub fn emit(&self, format: OutputFormat) {
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        eprintln!(
            "# radial-duality v{} {} {} ({})",
            self.tool_version,
            self.command,
            params.join(" "),
            self.timestamp,
        );
        match format {
            OutputFormat::Csv => {
                println!("{}", self.columns.join(","));
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    println!("{}", cells.join(","));
                }
            }
            OutputFormat::Json => {
                for row in &self.rows {
                    let fields: Vec<String> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(name, cell)| format!("{}:{}", json_quote(name), cell.json()))
                        .collect();
                    println!("{{{}}}", fields.join(","));
                }
            }
        }
    }
}
