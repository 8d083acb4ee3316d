//! Machine-readable report documents emitted by the CLI: command echo,
//! named verdicts, residuals, witnesses, and row-major complex matrices,
//! with a deterministic serialization and a derived exit status.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bundle::ComplexPair;
use crate::C64;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    /// Row-major complex entries.
    pub entries: Vec<ComplexPair>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportDocument {
    pub command: String,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub residuals: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, MatrixDump>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub exit_code: i32,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            verdicts: Vec::new(),
            residuals: BTreeMap::new(),
            witnesses: Vec::new(),
            matrices: BTreeMap::new(),
            notes: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
        self.exit_code = self.derived_exit_code();
    }

    pub fn residual(&mut self, name: impl Into<String>, value: f64) {
        self.residuals.insert(name.into(), value);
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn matrix(&mut self, name: impl Into<String>, rows: usize, cols: usize, data: &[C64]) {
        self.matrices.insert(
            name.into(),
            MatrixDump {
                rows,
                cols,
                entries: data.iter().map(|z| (*z).into()).collect(),
            },
        );
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Exit 0 iff every verdict passes; verdict failures are exit 1. Input
    /// errors never reach a report and exit 2 at the CLI boundary.
    fn derived_exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail") + "\n"
    }
}
