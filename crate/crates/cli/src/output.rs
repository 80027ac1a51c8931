use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::args::Format;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            // 17 significant digits
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i64::from(i))
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

/// One run's worth of output: a table plus metadata.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: Map<String, Value>,
    /// Lines for stderr regardless of format.
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, config: Value, headers: Vec<&'static str>) -> Self {
        Self {
            command,
            config,
            headers,
            rows: Vec::new(),
            diagnostics: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn diag(&mut self, key: &str, value: impl Into<Value>) {
        self.diagnostics.insert(key.to_string(), value.into());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .headers
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "results": results,
            "diagnostics": self.diagnostics,
        })
    }

    /// CSV goes to `out` with diagnostics as `key=value` lines on `err`;
    /// JSON puts everything in one object on `out`.
    pub fn emit<W: Write, E: Write>(&self, format: Format, out: &mut W, err: &mut E) -> io::Result<()> {
        for w in &self.warnings {
            writeln!(err, "warning: {w}")?;
        }
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                w.flush()?;
                for (k, v) in &self.diagnostics {
                    match v {
                        Value::String(s) => writeln!(err, "{k}={s}")?,
                        other => writeln!(err, "{k}={other}")?,
                    }
                }
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)?;
            }
        }
        out.flush()
    }
}
