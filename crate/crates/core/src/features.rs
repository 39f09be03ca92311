//! Topological features of intra-, inter- and all-layer subgraphs and the
//! relational features between layers.
//!
//! For a pair of layers `α`, `β` the feature vector holds, in order:
//!
//! | group      | features                                          |
//! |------------|---------------------------------------------------|
//! | intra      | `k1 k2`, `d1 d2`, `S1 S2`, `Q1 Q2`                |
//! | inter      | `k12`, `d12`, `S12`, `Q12`                        |
//! | all-layer  | `k12_all d12_all S12_all Q12_all`                 |
//! | relational | `r1_2 r2_1 JSD_intra JSD_inter JSD_all`           |
//!
//! (interleaved as `k1 k2 k12 d1 d2 d12 …` in [`FEATURE_NAMES`]).

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::community::{louvain, LouvainConfig};
use crate::error::{Error, Result};
use crate::network::{build_mhvg, MultilayerNetwork, SubgraphView, ViewKind};
use crate::seed::{derive_seed, rng_from_seed};
use crate::tsdata::MultivariateTimeSeries;

pub const NUM_FEATURES: usize = 21;

/// Canonical column order.
pub const FEATURE_NAMES: [&str; NUM_FEATURES] = [
    "k1", "k2", "k12", "d1", "d2", "d12", "S1", "S2", "S12", "Q1", "Q2", "Q12", "k12_all",
    "d12_all", "S12_all", "Q12_all", "r1_2", "r2_1", "JSD_intra", "JSD_inter", "JSD_all",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub k1: f64,
    pub k2: f64,
    pub k12: f64,
    pub d1: f64,
    pub d2: f64,
    pub d12: f64,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S2")]
    pub s2: f64,
    #[serde(rename = "S12")]
    pub s12: f64,
    #[serde(rename = "Q1")]
    pub q1: f64,
    #[serde(rename = "Q2")]
    pub q2: f64,
    #[serde(rename = "Q12")]
    pub q12: f64,
    pub k12_all: f64,
    pub d12_all: f64,
    #[serde(rename = "S12_all")]
    pub s12_all: f64,
    #[serde(rename = "Q12_all")]
    pub q12_all: f64,
    pub r1_2: f64,
    pub r2_1: f64,
    #[serde(rename = "JSD_intra")]
    pub jsd_intra: f64,
    #[serde(rename = "JSD_inter")]
    pub jsd_inter: f64,
    #[serde(rename = "JSD_all")]
    pub jsd_all: f64,
}

impl FeatureVector {
    /// Values in [`FEATURE_NAMES`] order.
    pub fn to_array(&self) -> [f64; NUM_FEATURES] {
        [
            self.k1,
            self.k2,
            self.k12,
            self.d1,
            self.d2,
            self.d12,
            self.s1,
            self.s2,
            self.s12,
            self.q1,
            self.q2,
            self.q12,
            self.k12_all,
            self.d12_all,
            self.s12_all,
            self.q12_all,
            self.r1_2,
            self.r2_1,
            self.jsd_intra,
            self.jsd_inter,
            self.jsd_all,
        ]
    }

    pub fn from_array(v: [f64; NUM_FEATURES]) -> Self {
        Self {
            k1: v[0],
            k2: v[1],
            k12: v[2],
            d1: v[3],
            d2: v[4],
            d12: v[5],
            s1: v[6],
            s2: v[7],
            s12: v[8],
            q1: v[9],
            q2: v[10],
            q12: v[11],
            k12_all: v[12],
            d12_all: v[13],
            s12_all: v[14],
            q12_all: v[15],
            r1_2: v[16],
            r2_1: v[17],
            jsd_intra: v[18],
            jsd_inter: v[19],
            jsd_all: v[20],
        }
    }
}

/// Empirical degree distribution `P(k) = n_k / N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    pub support: Vec<usize>,
    pub probs: Vec<f64>,
    pub normalizer: usize,
}

impl DegreeDistribution {
    pub fn from_degrees(degrees: &[usize]) -> Self {
        let mut sorted = degrees.to_vec();
        sorted.sort_unstable();
        let n = sorted.len();
        let mut support = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for k in sorted {
            if support.last() == Some(&k) {
                *counts.last_mut().unwrap() += 1;
            } else {
                support.push(k);
                counts.push(1);
            }
        }
        Self {
            support,
            probs: counts.iter().map(|&c| c as f64 / n as f64).collect(),
            normalizer: n,
        }
    }

    /// `P(k)`, zero outside the support.
    pub fn prob(&self, k: usize) -> f64 {
        self.support
            .binary_search(&k)
            .map_or(0.0, |i| self.probs[i])
    }

    pub fn mean(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.probs)
            .map(|(&k, p)| k as f64 * p)
            .sum()
    }
}

/// Mean degree of a view: `2|E| / N`.
pub fn average_degree(view: &SubgraphView) -> f64 {
    2.0 * view.num_edges() as f64 / view.num_nodes() as f64
}

/// Distribution of the view degrees of the nodes of `layer`, normalized by
/// that layer's node count.
pub fn degree_distribution(view: &SubgraphView, layer: usize) -> Result<DegreeDistribution> {
    let degrees: Vec<usize> = view
        .layer_nodes(layer)?
        .map(|v| view.graph().degree(v))
        .collect();
    Ok(DegreeDistribution::from_degrees(&degrees))
}

/// Exact mean shortest-path length over ordered node pairs of the view.
///
/// Inter-layer views can split into two components (the forced edges
/// `a_t - b_{t+1}` form two zigzags that only an even-gap edge joins), so
/// unreachable pairs are left out of the mean.
pub fn average_path_length(view: &SubgraphView) -> Result<f64> {
    view.graph().reachable_path_length(None)
}

/// Mean over the nodes of `source` of inter-degree divided by intra-degree.
pub fn average_ratio_degree(net: &MultilayerNetwork, source: usize, other: usize) -> Result<f64> {
    let intra = net.intra_degrees(source)?;
    let inter = net.inter_degrees(source, other)?;
    let sum: f64 = inter
        .iter()
        .zip(&intra)
        .map(|(&x, &k)| x as f64 / k as f64)
        .sum();
    Ok(sum / intra.len() as f64)
}

/// Jensen–Shannon divergence in bits over the union of both supports.
pub fn jsd(p: &DegreeDistribution, q: &DegreeDistribution) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut total = 0.0;
    let term = |a: f64, mid: f64| if a > 0.0 { a * (a / mid).log2() } else { 0.0 };
    while i < p.support.len() || j < q.support.len() {
        let (a, b) = match (p.support.get(i), q.support.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                (p.probs[i - 1], q.probs[j - 1])
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                (p.probs[i - 1], 0.0)
            }
            (Some(_), None) => {
                i += 1;
                (p.probs[i - 1], 0.0)
            }
            _ => {
                j += 1;
                (0.0, q.probs[j - 1])
            }
        };
        let mid = 0.5 * (a + b);
        total += 0.5 * term(a, mid) + 0.5 * term(b, mid);
    }
    total.clamp(0.0, 1.0)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FeatureConfig {
    pub louvain: LouvainConfig,
    /// Use BFS from this many randomly chosen sources per view instead of
    /// all nodes.
    pub path_sources: Option<usize>,
    /// Seed for source sampling.
    pub seed: u64,
}

struct ViewStats {
    path_length: f64,
    communities: usize,
    modularity: f64,
}

fn view_stats(view: &SubgraphView, config: &FeatureConfig, stream: u64) -> Result<ViewStats> {
    let n = view.num_nodes();
    let path_length = match config.path_sources {
        Some(k) if k < n => {
            let mut nodes: Vec<usize> = (0..n).collect();
            nodes.shuffle(&mut rng_from_seed(derive_seed(config.seed, &[stream])));
            nodes.truncate(k.max(1));
            nodes.sort_unstable();
            view.graph().reachable_path_length(Some(&nodes))?
        }
        _ => average_path_length(view)?,
    };
    let comm = louvain(view.graph(), &config.louvain)?;
    Ok(ViewStats {
        path_length,
        communities: comm.partition.num_communities(),
        modularity: comm.modularity,
    })
}

/// All 21 features for the layer pair `(a, b)`.
pub fn pair_features(
    net: &MultilayerNetwork,
    a: usize,
    b: usize,
    config: &FeatureConfig,
) -> Result<FeatureVector> {
    let kinds = [
        ViewKind::Intra(a),
        ViewKind::Intra(b),
        ViewKind::Inter(a, b),
        ViewKind::All(a, b),
    ];
    let views = kinds
        .iter()
        .map(|&k| net.subgraph(k))
        .collect::<Result<Vec<_>>>()?;
    let stats = views
        .par_iter()
        .enumerate()
        .map(|(i, v)| view_stats(v, config, i as u64))
        .collect::<Result<Vec<_>>>()?;
    let [intra_a, intra_b, inter, all] = [&views[0], &views[1], &views[2], &views[3]];

    let jsd_of = |view: &SubgraphView| -> Result<f64> {
        Ok(jsd(
            &degree_distribution(view, a)?,
            &degree_distribution(view, b)?,
        ))
    };

    Ok(FeatureVector {
        k1: average_degree(intra_a),
        k2: average_degree(intra_b),
        k12: average_degree(inter),
        d1: stats[0].path_length,
        d2: stats[1].path_length,
        d12: stats[2].path_length,
        s1: stats[0].communities as f64,
        s2: stats[1].communities as f64,
        s12: stats[2].communities as f64,
        q1: stats[0].modularity,
        q2: stats[1].modularity,
        q12: stats[2].modularity,
        k12_all: average_degree(all),
        d12_all: stats[3].path_length,
        s12_all: stats[3].communities as f64,
        q12_all: stats[3].modularity,
        r1_2: average_ratio_degree(net, a, b)?,
        r2_1: average_ratio_degree(net, b, a)?,
        jsd_intra: jsd(
            &degree_distribution(intra_a, a)?,
            &degree_distribution(intra_b, b)?,
        ),
        jsd_inter: jsd_of(inter)?,
        jsd_all: jsd_of(all)?,
    })
}

/// Feature vector of a bivariate network.
pub fn feature_vector(net: &MultilayerNetwork, config: &FeatureConfig) -> Result<FeatureVector> {
    if net.num_layers() != 2 {
        return Err(Error::LayerCount {
            expected: 2,
            got: net.num_layers(),
        });
    }
    pair_features(net, 0, 1, config)
}

/// Feature vectors for every unordered layer pair `(a, b)`, `a < b`.
pub fn all_pair_features(
    net: &MultilayerNetwork,
    config: &FeatureConfig,
) -> Result<Vec<((usize, usize), FeatureVector)>> {
    let m = net.num_layers();
    (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .map(|(a, b)| Ok(((a, b), pair_features(net, a, b, config)?)))
        .collect()
}

/// Maps a bivariate series and extracts its features.
pub fn extract(mts: &MultivariateTimeSeries, config: &FeatureConfig) -> Result<FeatureVector> {
    feature_vector(&build_mhvg(mts), config)
}
