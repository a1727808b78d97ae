use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::Format;

/// Rows for the CSV form of a report.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_match: Option<bool>,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    pub details: Value,
    #[serde(skip)]
    pub table: Table,
    /// One-line human summary.
    #[serde(skip)]
    pub summary: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            params: BTreeMap::new(),
            pass: false,
            min_margin: None,
            exact_match: None,
            witnesses: Vec::new(),
            runtime_ms: None,
            details: Value::Null,
            table: Table::default(),
            summary: String::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), json!(value));
        self
    }

    pub fn details(mut self, value: impl Serialize) -> Result<Self> {
        self.details = serde_json::to_value(value)?;
        Ok(self)
    }

    pub fn status(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.table.headers.is_empty() {
            w.write_record(["key", "value"])?;
            w.write_record(["pass", &self.pass.to_string()])?;
            if let Some(m) = self.min_margin {
                w.write_record(["min_margin", &m.to_string()])?;
            }
            if let Some(e) = self.exact_match {
                w.write_record(["exact_match", &e.to_string()])?;
            }
        } else {
            w.write_record(&self.table.headers)?;
            for row in &self.table.rows {
                w.write_record(row)?;
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn write(&self, out: &Path, format: Format) -> Result<()> {
        let text = match format {
            Format::Json => self.to_json()?,
            Format::Csv => self.to_csv()?,
        };
        if out == Path::new("-") {
            io::stdout().write_all(text.as_bytes())?;
        } else {
            let mut f = File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
            f.write_all(text.as_bytes())?;
        }
        Ok(())
    }
}
