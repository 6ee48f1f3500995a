//! Tabular output in long format: one record per grid cell, axis values
//! repeated on every row.

use serde::Serialize;

use crate::args::Format;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    /// Integers verbatim, floats with 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Cell::Int(_) => true,
            Cell::Float(v) => v.is_finite(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ensure_finite(&self, file: &str) -> CliResult<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|c| !c.is_finite()) {
                return Err(CliError::SelfCheck {
                    file: file.to_string(),
                    detail: format!("non-finite {} in row {i}", self.columns[j]),
                });
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

pub fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

/// One rendered output file, kept in memory until every self-check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub file: String,
    pub columns: Vec<String>,
    pub rows: usize,
    pub contents: String,
}

impl Rendered {
    pub fn from_table(stem: &str, table: &Table, format: Format) -> CliResult<Self> {
        let file = format!("{stem}.{}", extension(format));
        table.ensure_finite(&file)?;
        Ok(Self { contents: table.render(format)?, columns: table.columns.clone(), rows: table.len(), file })
    }
}
