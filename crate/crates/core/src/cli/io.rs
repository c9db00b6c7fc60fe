//! Matrix files and run reports.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// A matrix as JSON: row-major `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, name: Option<String>) -> Self {
        let entries = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
        Self { rows: m.nrows(), cols: m.ncols(), entries, name }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            let label = self.name.as_deref().unwrap_or("matrix");
            return Err(Error::validation(format!("{label}: entries do not match the declared {}x{} shape", self.rows, self.cols)));
        }
        let rows: Vec<Vec<C64>> = self.entries.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
        ComplexMatrix::from_rows(&rows)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(MatrixFile),
    Many(Vec<MatrixFile>),
}

/// Reads a file holding one matrix object or an array of them.
pub fn read_matrix_files(path: &Path) -> Result<Vec<MatrixFile>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::validation(format!("{}: {e}", path.display())))?;
    let parsed: OneOrMany =
        serde_json::from_str(&text).map_err(|e| Error::validation(format!("{}: not a matrix file: {e}", path.display())))?;
    Ok(match parsed {
        OneOrMany::One(m) => vec![m],
        OneOrMany::Many(ms) => ms,
    })
}

pub fn write_matrix_file(path: &Path, matrix: &MatrixFile) -> Result<()> {
    let text = serde_json::to_string_pretty(matrix).map_err(|e| Error::numerical(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::validation(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Runtime {
    pub workers: usize,
    pub wall_time_seconds: f64,
}

/// Output document of every subcommand. Everything except `runtime` is a
/// function of the command, parameters and seed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub results: Value,
    pub runtime: Runtime,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values serialize") + "\n"
    }

    /// The report without its `runtime` section.
    pub fn reproducible_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report values serialize");
        value.as_object_mut().expect("report is an object").remove("runtime");
        serde_json::to_string_pretty(&value).expect("report values serialize") + "\n"
    }

    /// `path,value` rows flattened from the JSON document.
    pub fn to_csv(&self) -> Result<String> {
        let value = serde_json::to_value(self).expect("report values serialize");
        let mut rows = Vec::new();
        flatten("", &value, &mut rows);
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(["path", "value"]).map_err(csv_error)?;
        for (path, v) in rows {
            writer.write_record([path, v]).map_err(csv_error)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::numerical(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write(&self, format: super::Format, output: Option<&Path>) -> Result<()> {
        let text = match format {
            super::Format::Json => self.to_json(),
            super::Format::Csv => self.to_csv()?,
        };
        match output {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::validation(format!("{}: {e}", path.display()))),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Error::validation(format!("stdout: {e}"))),
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::numerical(format!("csv: {e}"))
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
