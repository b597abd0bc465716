//! Run records and their CSV/JSON emission.

use std::fs::File;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::OutputFormat;

/// One completed run, as emitted by `solve`, `sweep`, and `reproduce`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub method: String,
    /// `key=value;key=value`, round-trip formatted.
    pub params: String,
    pub status: String,
    pub iterations: usize,
    pub res: f64,
    pub wall_seconds: f64,
    /// Condition-report summary: `satisfied`, `unsatisfied`, or `n/a`.
    pub condition: String,
}

pub fn write_records<T: Serialize>(
    records: &[T],
    format: OutputFormat,
    out: Option<&str>,
) -> Result<(), String> {
    let rendered = render(records, format)?;
    match out {
        Some(path) => {
            let mut f = File::create(path).map_err(|e| e.to_string())?;
            f.write_all(rendered.as_bytes()).map_err(|e| e.to_string())
        }
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

pub fn render<T: Serialize>(records: &[T], format: OutputFormat) -> Result<String, String> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())
        }
        OutputFormat::Json => {
            let mut s = String::new();
            for r in records {
                s.push_str(&serde_json::to_string(r).map_err(|e| e.to_string())?);
                s.push('\n');
            }
            Ok(s)
        }
    }
}

/// Write a residual history as `iteration,res` rows.
pub fn write_trace(path: &str, history: &[f64]) -> Result<(), String> {
    let mut f = File::create(path).map_err(|e| e.to_string())?;
    writeln!(f, "iteration,res").map_err(|e| e.to_string())?;
    for (k, res) in history.iter().enumerate() {
        writeln!(f, "{},{res}", k + 1).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Flat condition-report rows for CSV/JSON emission.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionRecord {
    pub which: String,
    pub id: String,
    pub lhs: f64,
    /// Right-hand side; absent for pure value rows such as spectral radii.
    pub rhs: Option<f64>,
    pub satisfied: Option<bool>,
}

impl ConditionRecord {
    pub fn from_report(report: &gave_kit::analysis::ConditionReport) -> Vec<Self> {
        report
            .inequalities
            .iter()
            .map(|r| Self {
                which: report.which.clone(),
                id: r.id.clone(),
                lhs: r.lhs,
                rhs: Some(r.rhs),
                satisfied: Some(r.satisfied),
            })
            .collect()
    }

    pub fn value(which: &str, id: &str, value: f64) -> Self {
        Self {
            which: which.to_string(),
            id: id.to_string(),
            lhs: value,
            rhs: None,
            satisfied: None,
        }
    }
}
