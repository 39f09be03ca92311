//! Feature matrices, PCA, k-means and clustering evaluation.

mod kmeans;
mod metrics;
mod pca;
mod study;

pub use kmeans::{kmeans, KMeansConfig, KMeansResult};
pub use metrics::{ari, nmi, silhouette};
pub use pca::{pca, Pca};
pub use study::{cluster_features, extract_features, run_study, ClusteringReport, StudyConfig};

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_NAMES};

/// Instances by features, with optional instance ids and ground-truth labels.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    names: Vec<String>,
    rows: Vec<Vec<f64>>,
    ids: Option<Vec<String>>,
    labels: Option<Vec<String>>,
}

impl FeatureMatrix {
    pub fn new(names: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        for (row, r) in rows.iter().enumerate() {
            if r.len() != names.len() {
                return Err(Error::Ragged {
                    row,
                    expected: names.len(),
                    got: r.len(),
                });
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::Parse {
                line: 1,
                message: format!("duplicate column `{dup}`"),
            });
        }
        Ok(Self {
            names,
            rows,
            ids: None,
            labels: None,
        })
    }

    pub fn from_features(features: &[FeatureVector]) -> Self {
        Self {
            names: FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
            rows: features.iter().map(|f| f.to_array().to_vec()).collect(),
            ids: None,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rows.len() {
            return Err(Error::LengthMismatch {
                left: self.rows.len(),
                right: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_ids(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.rows.len() {
            return Err(Error::LengthMismatch {
                left: self.rows.len(),
                right: ids.len(),
            });
        }
        self.ids = Some(ids);
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn ids(&self) -> Option<&[String]> {
        self.ids.as_deref()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.names.len()
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[col]).collect()
    }

    /// Keeps only the named columns, in the given order.
    pub fn select(&self, columns: &[&str]) -> Result<Self> {
        let idx = columns
            .iter()
            .map(|c| {
                self.names
                    .iter()
                    .position(|n| n == c)
                    .ok_or_else(|| Error::MissingColumn(c.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            names: columns.iter().map(|s| s.to_string()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| idx.iter().map(|&i| r[i]).collect())
                .collect(),
            ids: self.ids.clone(),
            labels: self.labels.clone(),
        })
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.num_rows(), self.num_cols(), |i, j| self.rows[i][j])
    }

    /// Reads a CSV with a header. Columns named `instance` and `label` are
    /// taken as ids and ground truth; all others must be numeric.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = rdr.headers()?.clone();
        let id_col = header.iter().position(|h| h == "instance");
        let label_col = header.iter().position(|h| h == "label");
        let feature_cols: Vec<usize> = (0..header.len())
            .filter(|&i| Some(i) != id_col && Some(i) != label_col)
            .collect();
        let names = feature_cols.iter().map(|&i| header[i].to_string()).collect();
        let mut rows = Vec::new();
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        for (r, record) in rdr.records().enumerate() {
            let record = record?;
            let line = r + 2;
            let row = feature_cols
                .iter()
                .map(|&i| {
                    record[i].parse::<f64>().map_err(|_| Error::Parse {
                        line,
                        message: format!("non-numeric `{}` in column `{}`", &record[i], &header[i]),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
            if let Some(i) = id_col {
                ids.push(record[i].to_string());
            }
            if let Some(i) = label_col {
                labels.push(record[i].to_string());
            }
        }
        let mut m = Self::new(names, rows)?;
        if id_col.is_some() {
            m = m.with_ids(ids)?;
        }
        if label_col.is_some() {
            m = m.with_labels(labels)?;
        }
        Ok(m)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header: Vec<&str> = Vec::new();
        if self.ids.is_some() {
            header.push("instance");
        }
        header.extend(self.names.iter().map(String::as_str));
        if self.labels.is_some() {
            header.push("label");
        }
        w.write_record(&header)?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut rec: Vec<String> = Vec::with_capacity(header.len());
            if let Some(ids) = &self.ids {
                rec.push(ids[i].clone());
            }
            rec.extend(row.iter().map(|v| v.to_string()));
            if let Some(labels) = &self.labels {
                rec.push(labels[i].clone());
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Min-Max scales every column to `[0, 1]` independently; constant columns
/// become zeros.
pub fn normalize_features(mat: &FeatureMatrix) -> Result<FeatureMatrix> {
    if mat.num_rows() < 2 {
        return Err(Error::TooFewRows {
            needed: 2,
            got: mat.num_rows(),
        });
    }
    let mut out = mat.clone();
    for col in 0..mat.num_cols() {
        let scaled = crate::tsdata::min_max(&mat.column(col));
        for (row, v) in out.rows.iter_mut().zip(scaled) {
            row[col] = v;
        }
    }
    Ok(out)
}

/// Feature groups used when clustering on part of the feature vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureSubset {
    Intra,
    Inter,
    All,
    Relational,
    #[serde(rename = "mnet")]
    MNet,
}

impl FeatureSubset {
    pub const EVERY: [FeatureSubset; 5] = [
        FeatureSubset::Intra,
        FeatureSubset::Inter,
        FeatureSubset::All,
        FeatureSubset::Relational,
        FeatureSubset::MNet,
    ];

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            FeatureSubset::Intra => &["k1", "k2", "d1", "d2", "S1", "S2", "Q1", "Q2"],
            FeatureSubset::Inter => &["k12", "d12", "S12", "Q12"],
            FeatureSubset::All => &["k12_all", "d12_all", "S12_all", "Q12_all"],
            FeatureSubset::Relational => &["r1_2", "r2_1", "JSD_intra", "JSD_inter", "JSD_all"],
            FeatureSubset::MNet => &FEATURE_NAMES,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureSubset::Intra => "intra",
            FeatureSubset::Inter => "inter",
            FeatureSubset::All => "all",
            FeatureSubset::Relational => "relational",
            FeatureSubset::MNet => "mnet",
        }
    }
}

impl fmt::Display for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeatureSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "intra" => FeatureSubset::Intra,
            "inter" => FeatureSubset::Inter,
            "all" | "all-layer" => FeatureSubset::All,
            "relational" => FeatureSubset::Relational,
            "mnet" | "full" => FeatureSubset::MNet,
            _ => return Err(Error::UnknownSubset(s.to_string())),
        })
    }
}
