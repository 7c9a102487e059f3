//! CSV and JSON writers. JSON documents share one envelope:
//! `{schema_version, config, rows, checksums}`.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Ordered rows with named columns; values are already formatted strings.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self) -> Result<(), String> {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        w.write_record(&self.columns).map_err(|e| e.to_string())?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| e.to_string())?;
        }
        w.flush().map_err(|e| e.to_string())
    }

    pub fn json_rows(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    m.insert(c.to_string(), Value::String(v.clone()));
                }
                Value::Object(m)
            })
            .collect()
    }
}

pub fn write_json(config: &RunConfig, rows: Vec<Value>, checksums: Value) -> Result<(), String> {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "rows": rows,
        "checksums": checksums,
    });
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| e.to_string())?;
    writeln!(out).map_err(|e| e.to_string())
}
