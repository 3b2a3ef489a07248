// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Tabular results and their CSV and JSON encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::config::{Format, RunConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub version: String,
    pub config: RunConfig,
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputTable {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl OutputTable {
    pub fn new(metadata: Metadata, columns: &[&str], rows: Vec<Vec<f64>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(Error::invalid("output table", format!("row {i} has {} values", row.len())));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::invalid(
                    "output table",
                    format!("non-finite value in row {i}, column `{}`", columns[j]),
                ));
            }
        }
        Ok(Self {
            metadata,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        })
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// `#` metadata lines, one header line, then rows at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let config = serde_json::to_string(&self.metadata.config).expect("config serializes");
        let tolerances = serde_json::to_string(&self.metadata.tolerances).expect("tolerances serialize");
        let _ = writeln!(out, "# version: {}", self.metadata.version);
        let _ = writeln!(out, "# config: {config}");
        let _ = writeln!(out, "# tolerances: {tolerances}");
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("table serializes");
        text.push('\n');
        text
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// The config echoed in a CSV metadata header.
pub fn config_echo(csv: &str) -> Option<&str> {
    csv.lines().find_map(|l| l.strip_prefix("# config: "))
}
