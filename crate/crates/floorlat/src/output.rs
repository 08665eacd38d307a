//! CSV/JSON emission for the command-line front end.
//!
//! A record echoes its inputs, names its columns, and carries rows of
//! numeric cells in a fixed order, so identical requests produce
//! byte-identical output in either format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

/// One output cell. Floats use Rust's shortest round-trip formatting,
/// which is deterministic.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

fn format_float(v: f64) -> String {
    let mut s = String::new();
    write!(s, "{v}").unwrap();
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputRecord {
    pub schema_version: String,
    /// Echo of the request parameters; BTreeMap keeps key order stable.
    pub inputs: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl OutputRecord {
    pub fn new(inputs: &[(&str, String)], columns: &[&str]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            inputs: inputs
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header row, comma separator, LF line endings. Cells never contain
    /// commas, so no quoting is required.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }
}
