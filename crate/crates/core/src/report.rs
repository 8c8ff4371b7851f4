//! Machine-readable run report.
//!
//! One pretty-printed JSON document per run. Keys appear in declaration
//! order and floats are written in shortest round-trip form, so identical
//! runs produce identical bytes and parsing a report gives back the exact
//! values that were written.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::elbow::{TangentSeries, Warning};
use crate::error::{Error, Result};
use crate::kmeans::Clustering;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub n: usize,
    pub p: usize,
    pub distinct: usize,
    pub source: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub k_min: usize,
    pub k_max: usize,
    pub restarts: usize,
    pub max_iter: usize,
    pub seed: u64,
    pub tol: f64,
    pub normalize: bool,
    pub monotone_repair: bool,
    pub oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSection {
    /// SSE(1..=k_max) as computed.
    pub raw: Vec<f64>,
    /// The values the elbow was selected on, after optional repair and normalisation.
    pub analyzed: Vec<f64>,
    pub monotone: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NoValidElbow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub status: Status,
    pub dataset: DatasetSummary,
    pub config: ConfigEcho,
    pub curve: CurveSection,
    pub tangents: TangentSeries,
    pub elbow_k: Option<usize>,
    pub elbow_tangent: Option<f64>,
    pub warnings: Vec<Warning>,
    pub clustering: Option<Clustering>,
}

impl ReportDocument {
    /// Checks that the sections agree on lengths and that status matches content.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Usage(format!("inconsistent report: {msg}")));
        if self.schema != SCHEMA_VERSION {
            return bad(format!("unsupported schema {}", self.schema));
        }
        let len = self.curve.raw.len();
        if self.curve.analyzed.len() != len || len != self.config.k_max {
            return bad(format!(
                "curve lengths {} / {} do not match k_max {}",
                len,
                self.curve.analyzed.len(),
                self.config.k_max
            ));
        }
        if len < 3
            || self.tangents.tangents.len() != len - 2
            || self.tangents.valid.len() != len - 2
        {
            return bad("tangent series must have k_max - 2 entries".into());
        }
        match (self.status, self.elbow_k, &self.clustering) {
            (Status::Ok, Some(k), Some(c)) => {
                if !(2..len).contains(&k) || !self.tangents.valid[k - 2] {
                    return bad(format!("elbow k = {k} is not a valid interior corner"));
                }
                if c.k != k || c.assignment.len() != self.dataset.n {
                    return bad("final clustering does not match elbow or dataset".into());
                }
            }
            (Status::NoValidElbow, None, None) => {}
            _ => return bad("status, elbow_k and clustering disagree".into()),
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        self.validate()?;
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Usage(format!("cannot serialise report: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Self =
            serde_json::from_str(s).map_err(|e| Error::Data(format!("malformed report: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }
}

pub fn emit_report(report: &ReportDocument, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = report.to_json()?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_report(path: impl AsRef<Path>) -> Result<ReportDocument> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ReportDocument::from_json(&text)
}
