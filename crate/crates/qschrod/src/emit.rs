use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{Quantity, ScenarioConfig};
use crate::scenario::{RunMetadata, ScenarioResult};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// The single-document JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonDocument {
    pub config: ScenarioConfig,
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub matrices: BTreeMap<Quantity, Vec<Vec<f64>>>,
}

/// Long-format `t,x,value` table with 17 significant digits.
pub fn csv_table(times: &[f64], positions: &[f64], matrix: &[Vec<f64>]) -> String {
    let mut out = String::from("t,x,value\n");
    for (t, row) in times.iter().zip(matrix) {
        for (x, v) in positions.iter().zip(row) {
            writeln!(out, "{t:.16e},{x:.16e},{v:.16e}").expect("writing to a String");
        }
    }
    out
}

pub fn json_document(result: &ScenarioResult) -> Result<String> {
    let doc = JsonDocument {
        config: result.config.clone(),
        times: result.times.clone(),
        positions: result.positions.clone(),
        matrices: result.matrices.clone(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn metadata_json(metadata: &RunMetadata) -> Result<String> {
    Ok(serde_json::to_string_pretty(metadata)?)
}

fn write(path: PathBuf, contents: &str) -> Result<PathBuf> {
    std::fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes the data files and `metadata.json` into `dir/<name>/`; returns
/// the paths written. Wall time goes into the metadata only when
/// `record_timing` is set, so repeated runs stay byte-identical.
pub fn emit(result: &ScenarioResult, dir: &Path, format: Format, record_timing: bool) -> Result<Vec<PathBuf>> {
    let dir = dir.join(&result.config.name);
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut written = Vec::new();
    match format {
        Format::Csv => {
            for (q, m) in &result.matrices {
                let table = csv_table(&result.times, &result.positions, m);
                written.push(write(dir.join(format!("{q}.csv")), &table)?);
            }
        }
        Format::Json => written.push(write(dir.join("result.json"), &json_document(result)?)?),
    }
    let mut metadata = result.metadata.clone();
    if record_timing {
        metadata.wall_time_seconds = Some(result.wall_time_seconds);
    }
    written.push(write(dir.join("metadata.json"), &metadata_json(&metadata)?)?);
    Ok(written)
}
