use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command's result in both shapes: a JSON document and a flat table.
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, header: &[&str]) -> Self {
        Output { json, header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(io::Error::other)?;
                s.push('\n');
                Ok(s.into_bytes())
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.into_inner().map_err(|e| io::Error::other(e.to_string()))
            }
            Format::Text => {
                let cols = self.header.len().max(self.rows.iter().map(Vec::len).max().unwrap_or(0));
                let mut width = vec![0; cols];
                for r in std::iter::once(&self.header).chain(&self.rows) {
                    for (i, c) in r.iter().enumerate() {
                        width[i] = width[i].max(c.chars().count());
                    }
                }
                let mut out = String::new();
                for r in std::iter::once(&self.header).chain(&self.rows) {
                    let line: Vec<String> =
                        r.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = width[i])).collect();
                    out.push_str(line.join("  ").trim_end());
                    out.push('\n');
                }
                Ok(out.into_bytes())
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let bytes = self.render(format)?;
        match out {
            Some(path) => File::create(path)?.write_all(&bytes),
            None => io::stdout().lock().write_all(&bytes),
        }
    }
}

/// Flattens a JSON coefficient list into CSV cells.
pub fn cells(v: &Value) -> Vec<String> {
    match v {
        Value::Array(a) => a.iter().map(cell).collect(),
        other => vec![cell(other)],
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
