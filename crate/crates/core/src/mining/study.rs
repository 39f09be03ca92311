use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{kmeans, metrics, normalize_features, pca, FeatureMatrix, FeatureSubset, KMeansConfig};
use crate::error::{Error, Result};
use crate::features::{extract, FeatureConfig, FeatureVector};
use crate::seed::derive_seed;
use crate::tsdata::MultivariateTimeSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct StudyConfig {
    pub seed: u64,
    /// k-means restarts per (subset, k).
    pub repetitions: usize,
    pub subsets: Vec<FeatureSubset>,
    pub features: FeatureConfig,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            repetitions: 10,
            subsets: FeatureSubset::EVERY.to_vec(),
            features: FeatureConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusteringReport {
    pub subset: FeatureSubset,
    pub k: usize,
    /// Zero-based cluster per row.
    pub assignment: Vec<usize>,
    pub ari: Option<f64>,
    pub nmi: Option<f64>,
    /// Absent when fewer than two clusters are populated.
    pub silhouette: Option<f64>,
    pub wcss: f64,
    pub seed: u64,
    pub repetitions: usize,
}

/// Bivariate feature vectors for every instance, computed in parallel.
pub fn extract_features(
    instances: &[MultivariateTimeSeries],
    config: &FeatureConfig,
) -> Result<Vec<FeatureVector>> {
    instances.par_iter().map(|mts| extract(mts, config)).collect()
}

/// Normalize, project on all principal components and cluster, for every
/// requested subset and k.
pub fn cluster_features(
    matrix: &FeatureMatrix,
    k_range: &[usize],
    config: &StudyConfig,
) -> Result<Vec<ClusteringReport>> {
    let normalized = normalize_features(matrix)?;
    let mut reports = Vec::new();
    for &subset in &config.subsets {
        let sub = normalized.select(subset.columns())?;
        let scores = pca(&sub.to_matrix())?.scores;
        for &k in k_range {
            let seed = derive_seed(config.seed, &[k as u64]);
            let km = kmeans(
                &scores,
                &KMeansConfig {
                    k,
                    seed,
                    restarts: config.repetitions,
                    max_iter: 300,
                },
            )?;
            let (ari, nmi) = match matrix.labels() {
                Some(labels) => (
                    Some(metrics::ari(labels, &km.assignment)?),
                    Some(metrics::nmi(labels, &km.assignment)?),
                ),
                None => (None, None),
            };
            let silhouette = match metrics::silhouette(&scores, &km.assignment) {
                Ok(s) => Some(s),
                Err(Error::TooFewClusters(_)) => None,
                Err(e) => return Err(e),
            };
            reports.push(ClusteringReport {
                subset,
                k,
                assignment: km.assignment,
                ari,
                nmi,
                silhouette,
                wcss: km.wcss,
                seed,
                repetitions: config.repetitions,
            });
        }
    }
    Ok(reports)
}

/// Full pipeline from raw instances to clustering reports.
pub fn run_study(
    instances: &[MultivariateTimeSeries],
    labels: Option<&[String]>,
    k_range: &[usize],
    config: &StudyConfig,
) -> Result<Vec<ClusteringReport>> {
    if instances.is_empty() {
        return Err(Error::TooFewRows { needed: 1, got: 0 });
    }
    let features = extract_features(instances, &config.features)?;
    let mut matrix = FeatureMatrix::from_features(&features);
    if let Some(labels) = labels {
        matrix = matrix.with_labels(labels.to_vec())?;
    }
    cluster_features(&matrix, k_range, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsdata::{generate, DgpKind, DgpSpec};

    #[test]
    fn small_study_is_deterministic() {
        let mut instances = Vec::new();
        let mut labels = Vec::new();
        for kind in [DgpKind::IBwn, DgpKind::SVar] {
            for i in 0..4 {
                instances.push(generate(&DgpSpec::new(kind, 200, i)).unwrap());
                labels.push(kind.name().to_string());
            }
        }
        let cfg = StudyConfig {
            seed: 5,
            ..StudyConfig::default()
        };
        let a = run_study(&instances, Some(&labels), &[2, 3], &cfg).unwrap();
        let b = run_study(&instances, Some(&labels), &[2, 3], &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        for r in &a {
            assert!((-1.0..=1.0).contains(&r.ari.unwrap()));
            assert!((0.0..=1.0).contains(&r.nmi.unwrap()));
        }
    }

    #[test]
    fn empty_study_is_an_error() {
        assert!(run_study(&[], None, &[2], &StudyConfig::default()).is_err());
    }
}
