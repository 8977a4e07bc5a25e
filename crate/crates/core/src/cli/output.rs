//! Reports: tables plus pass/fail checks, rendered as JSON or CSV.
//!
//! Every rendering starts with `{version, seed, config_hash}`. JSON floats
//! carry 17 significant digits; CSV floats use the shortest round-trip form.
//! Neither depends on locale.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Number, Value};
use sha2::{Digest, Sha256};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn with_columns(name: &str, columns: Vec<String>) -> Self {
        Self { name: name.into(), columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// A named pass/fail outcome with the number it was judged on.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub threshold: f64,
}

impl Check {
    /// Passes when `value <= threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), pass: value <= threshold, value, threshold }
    }

    /// Passes when `value == 0` exactly.
    pub fn exact(name: impl Into<String>, value: f64) -> Self {
        Self { name: name.into(), pass: value == 0.0, value, threshold: 0.0 }
    }

    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        Self { name: name.into(), pass, value: pass as u8 as f64, threshold: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub config_hash: String,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    let canonical = serde_json::to_string(config)?;
    let digest = Sha256::digest(canonical.as_bytes());
    Ok(digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    }))
}

fn json_number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(if x.is_nan() { "NaN".into() } else if x > 0.0 { "Infinity".into() } else { "-Infinity".into() });
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("scientific notation is valid JSON"))
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Int(v) => Value::from(*v),
        Cell::Num(v) => json_number(*v),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Bool(b) => Value::Bool(*b),
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Num(v) if v.is_nan() => "NaN".into(),
        Cell::Num(v) if v.is_infinite() => if *v > 0.0 { "Infinity".into() } else { "-Infinity".into() },
        Cell::Num(v) => format!("{v:?}"),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
    }
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, config_hash: String) -> Self {
        Self { command: command.into(), seed, config_hash, tables: Vec::new(), checks: Vec::new() }
    }

    /// True when every check passed (vacuously true without checks).
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn metadata(&self) -> Value {
        let mut m = Map::new();
        m.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
        m.insert("seed".into(), Value::from(self.seed));
        m.insert("config_hash".into(), Value::String(self.config_hash.clone()));
        m.insert("command".into(), Value::String(self.command.clone()));
        Value::Object(m)
    }

    fn render_json(&self) -> Result<String> {
        let mut root = Map::new();
        root.insert("metadata".into(), self.metadata());
        let mut tables = Map::new();
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().map(cell_json)).collect()))
                .collect();
            tables.insert(t.name.clone(), Value::Array(rows));
        }
        root.insert("tables".into(), Value::Object(tables));
        let checks = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), Value::String(c.name.clone()));
                m.insert("pass".into(), Value::Bool(c.pass));
                m.insert("value".into(), json_number(c.value));
                m.insert("threshold".into(), json_number(c.threshold));
                Value::Object(m)
            })
            .collect();
        root.insert("checks".into(), Value::Array(checks));
        root.insert("pass".into(), Value::Bool(self.passes()));
        let mut text = serde_json::to_string_pretty(&Value::Object(root))?;
        text.push('\n');
        Ok(text)
    }

    /// Comment lines carry the metadata; each table is a header plus rows,
    /// separated by a blank line and introduced by `# table: <name>`.
    fn render_csv(&self) -> Result<String> {
        let mut out = format!(
            "# version={},seed={},config_hash={},command={}\n",
            env!("CARGO_PKG_VERSION"),
            self.seed,
            self.config_hash,
            self.command
        );
        let mut blocks: Vec<(String, Vec<String>, Vec<Vec<String>>)> = self
            .tables
            .iter()
            .map(|t| (t.name.clone(), t.columns.clone(), t.rows.iter().map(|r| r.iter().map(cell_text).collect()).collect()))
            .collect();
        if !self.checks.is_empty() {
            let rows = self
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.pass.to_string(), cell_text(&Cell::Num(c.value)), cell_text(&Cell::Num(c.threshold))])
                .collect();
            blocks.push(("checks".into(), ["name", "pass", "value", "threshold"].map(String::from).to_vec(), rows));
        }
        for (i, (name, columns, rows)) in blocks.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "# table: {name}");
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(columns)?;
            for r in rows {
                w.write_record(r)?;
            }
            let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
            out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        }
        Ok(out)
    }
}
