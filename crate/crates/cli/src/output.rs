//! Serialization of command results. The JSON field set is a stable
//! machine-readable contract; CSV uses one header row with matrices
//! flattened row-major and vector fields joined by ';'.

use std::path::PathBuf;

use infogeo_core::nalgebra::DMatrix;
use serde::Serialize;

use crate::CmdError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct MetricOutput {
    pub family: String,
    pub dim: usize,
    pub mass: Option<f64>,
    pub theta: Vec<f64>,
    pub method: String,
    pub g: Vec<Vec<f64>>,
    pub g_error: Vec<Vec<f64>>,
    pub unconverged: bool,
    pub seed: Option<u64>,
    pub tool_version: String,
}

pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|a| (0..m.ncols()).map(|b| m[(a, b)]).collect())
        .collect()
}

pub fn join_f64(values: &[f64], sep: &str) -> String {
    values
        .iter()
        .map(|v| format_f64(*v))
        .collect::<Vec<_>>()
        .join(sep)
}

/// Shortest representation that round-trips the exact double.
pub fn format_f64(v: f64) -> String {
    let mut buf = ryu_format(v);
    if buf.ends_with(".0") {
        buf.truncate(buf.len() - 2);
    }
    buf
}

fn ryu_format(v: f64) -> String {
    // serde_json already guarantees shortest-round-trip formatting
    serde_json::to_string(&v).unwrap_or_else(|_| v.to_string())
}

impl MetricOutput {
    pub fn to_csv(&self) -> String {
        let n = self.dim;
        let mut header = vec![
            "family".to_string(),
            "dim".to_string(),
            "mass".to_string(),
            "theta".to_string(),
            "method".to_string(),
            "seed".to_string(),
            "tool_version".to_string(),
            "unconverged".to_string(),
        ];
        for a in 0..n {
            for b in 0..n {
                header.push(format!("g_{a}_{b}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                header.push(format!("g_err_{a}_{b}"));
            }
        }

        let mut row = vec![
            self.family.clone(),
            self.dim.to_string(),
            self.mass.map(format_f64).unwrap_or_default(),
            join_f64(&self.theta, ";"),
            self.method.clone(),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.tool_version.clone(),
            self.unconverged.to_string(),
        ];
        for rows in [&self.g, &self.g_error] {
            for r in rows {
                for v in r {
                    row.push(format_f64(*v));
                }
            }
        }
        format!("{}\n{}\n", header.join(","), row.join(","))
    }
}

/// Write `content` to the path or stdout.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CmdError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CmdError::Usage(format!("cannot write {}: {e}", path.display()))),
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}
