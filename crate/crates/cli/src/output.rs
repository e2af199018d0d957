use std::io::Write;

use exspectra_core::report::{format_float, round12};
use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a command produced, ready to be written in either format.
pub struct Output {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub result: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Plain-text rendering used when no format is requested.
    pub text: Option<String>,
    pub passed: bool,
}

impl Output {
    pub fn new(command: &'static str, parameters: Map<String, Value>) -> Self {
        Output {
            command,
            parameters,
            result: Value::Null,
            header: Vec::new(),
            rows: Vec::new(),
            text: None,
            passed: true,
        }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn write(&self, format: Option<Format>, timing_ms: f64, out: &mut impl Write) -> Result<(), CliError> {
        match (format, &self.text) {
            (None, Some(text)) => out.write_all(text.as_bytes())?,
            (Some(Format::Csv), _) => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            _ => {
                let envelope = json!({
                    "command": self.command,
                    "parameters": self.parameters,
                    "result": self.result,
                    "timing_ms": (timing_ms * 1000.0).round() / 1000.0,
                    "version": env!("CARGO_PKG_VERSION"),
                });
                serde_json::to_writer_pretty(&mut *out, &envelope)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// Float rendering shared by the JSON and CSV paths.
pub fn num(x: f64) -> Value {
    json!(round12(x))
}

pub fn cell(x: f64) -> String {
    format_float(x)
}
