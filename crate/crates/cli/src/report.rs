use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

/// One reported number. `tolerance` is the accuracy the value is claimed to,
/// or the threshold it is compared against when `pass` is a check outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    /// `None` for informational values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Record {
    pub fn value(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            pass: None,
            note: None,
        }
    }

    pub fn check(name: impl Into<String>, value: f64, tolerance: f64, pass: bool) -> Self {
        Self {
            pass: Some(pass),
            ..Self::value(name, value, tolerance)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_cell(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn format_cell(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.12}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Vec<Record>, table: Option<Table>) -> Self {
        let checks = results.iter().filter(|r| r.pass.is_some()).count();
        let passed = results.iter().filter(|r| r.pass == Some(true)).count();
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            inputs,
            results,
            table,
            summary: Summary {
                checks,
                passed,
                pass: passed == checks,
            },
        }
    }

    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    /// Human-readable lines, one per record, followed by the summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = match r.pass {
                Some(true) => " PASS",
                Some(false) => " FAIL",
                None => "",
            };
            let _ = write!(out, "{:<40} {:>22} (tol {:.1e}){status}", r.name, format_value(r.value), r.tolerance);
            if let Some(note) = &r.note {
                let _ = write!(out, "  {note}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}: {}/{} checks passed",
            self.command, self.summary.passed, self.summary.checks
        );
        out
    }
}

fn format_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.12}")
    } else {
        format!("{v}")
    }
}
