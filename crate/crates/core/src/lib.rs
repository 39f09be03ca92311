//! Multilayer horizontal visibility graphs (MHVG) for multivariate time
//! series.
//!
//! Each component of a series becomes a horizontal visibility layer, and
//! every pair of components is linked by a cross-visibility bipartite layer
//! built on Min-Max rescaled values. Twenty-one network features per layer
//! pair summarize the result, and the [`mining`] module clusters instances
//! on those features.
//!
//! ```
//! use mhvg::{build_mhvg, extract, generate, DgpKind, DgpSpec, FeatureConfig};
//!
//! let mts = generate(&DgpSpec::new(DgpKind::CBwn, 300, 7)).unwrap();
//! let net = build_mhvg(&mts);
//! assert_eq!(net.num_layers(), 2);
//! let f = extract(&mts, &FeatureConfig::default()).unwrap();
//! assert!(f.k12 > 0.0);
//! ```

pub mod community;
pub mod error;
pub mod features;
pub mod graph;
pub mod mining;
pub mod network;
pub mod seed;
pub mod tsdata;
pub mod visibility;

pub use community::{detect_communities, louvain, modularity, LouvainConfig, LouvainResult, Partition};
pub use error::{Error, Result};
pub use features::{extract, feature_vector, FeatureConfig, FeatureVector, FEATURE_NAMES};
pub use graph::Graph;
pub use mining::{run_study, ClusteringReport, FeatureMatrix, FeatureSubset, StudyConfig};
pub use network::{build_mhvg, MultilayerNetwork, SubgraphView, ViewKind};
pub use tsdata::{generate, DgpKind, DgpSpec, MultivariateTimeSeries, UnivariateSeries};
pub use visibility::{build_cross_hvg, build_hvg, CrossAdjacency};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/visibility.md")]
    mod visibility {}
    #[doc = include_str!("../../../book/src/multilayer.md")]
    mod multilayer {}
    #[doc = include_str!("../../../book/src/features.md")]
    mod features {}
    #[doc = include_str!("../../../book/src/communities.md")]
    mod communities {}
    #[doc = include_str!("../../../book/src/mining.md")]
    mod mining {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
