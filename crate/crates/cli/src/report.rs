//! Probe reports: a single JSON shape for every experiment, with stable key
//! order and byte-reproducible serialization, plus a CSV view with one row
//! per sample and complex values flattened to re/im column pairs.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

/// Outcome of a probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Informational,
}

/// A fitted scalar with a 95% confidence interval.
#[derive(Debug, Clone, Serialize)]
pub struct FittedQuantity {
    pub name: String,
    pub value: f64,
    pub stderr: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// One experiment's reproducible record: the seed and parameters that
/// produced it, the per-sample table, the verdict, and any fitted
/// quantities. Serialization is deterministic: struct fields appear in
/// declaration order and parameter maps are key-sorted.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub probe: String,
    pub seed: u64,
    pub parameters: Map<String, Value>,
    pub verdict: Verdict,
    pub fitted: Vec<FittedQuantity>,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub samples: Vec<Vec<Value>>,
}

impl ProbeReport {
    pub fn new(probe: &str, seed: u64, columns: &[&str]) -> Self {
        ProbeReport {
            probe: probe.to_string(),
            seed,
            parameters: Map::new(),
            verdict: Verdict::Informational,
            fitted: Vec::new(),
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            samples: Vec::new(),
        }
    }

    pub fn set_parameter(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width != header width");
        self.samples.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Canonical JSON bytes (UTF-8, stable key order).
    pub fn to_json_string(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Report(e.to_string()))
    }

    /// CSV with one row per sample.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.samples {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON number from an f64; non-finite values become null so the report
/// stays serializable and visibly marks the failure.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Ordinary least squares of y against x, with the standard error of the
/// slope and a 95% confidence interval.
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
}

pub fn fit_line(x: &[f64], y: &[f64]) -> Option<LineFit> {
    let n = x.len();
    if n < 3 || n != y.len() {
        return None;
    }
    let nf = n as f64;
    let mean_x = x.iter().sum::<f64>() / nf;
    let mean_y = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x
        .iter()
        .zip(y.iter())
        .map(|(a, b)| (a - mean_x) * (b - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = x
        .iter()
        .zip(y.iter())
        .map(|(a, b)| (b - (intercept + slope * a)).powi(2))
        .sum();
    let variance = ss_res / (nf - 2.0);
    Some(LineFit {
        slope,
        intercept,
        slope_stderr: (variance / sxx).sqrt(),
    })
}

impl LineFit {
    pub fn fitted(&self, name: &str) -> FittedQuantity {
        FittedQuantity {
            name: name.to_string(),
            value: self.slope,
            stderr: self.slope_stderr,
            ci_low: self.slope - 1.96 * self.slope_stderr,
            ci_high: self.slope + 1.96 * self.slope_stderr,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_serialize_deterministically() {
        let build = || {
            let mut r = ProbeReport::new("demo", 7, &["x", "y"]);
            r.set_parameter("beta", 0.5);
            r.set_parameter("alpha", 1);
            r.push_row(vec![num(1.0), num(2.0)]);
            r.verdict = Verdict::Pass;
            r.to_json_string().unwrap()
        };
        assert_eq!(build(), build());
        // map keys are sorted regardless of insertion order
        let text = build();
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"beta\"").unwrap());
    }

    #[test]
    fn csv_flattens_rows() {
        let mut r = ProbeReport::new("demo", 0, &["t", "class"]);
        r.push_row(vec![num(0.1), Value::String("inside".into())]);
        let csv = r.to_csv_string();
        assert_eq!(csv, "t,class\n0.1,inside\n");
    }

    #[test]
    fn line_fit_recovers_exact_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 2.5 * v - 1.0).collect();
        let fit = fit_line(&x, &y).unwrap();
        assert!((fit.slope - 2.5).abs() < 1e-12);
        assert!((fit.intercept + 1.0).abs() < 1e-12);
        assert!(fit.slope_stderr < 1e-12);
    }
}
