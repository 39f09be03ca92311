use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series must contain at least 2 observations, got {0}")]
    SeriesTooShort(usize),
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },
    #[error("value at position {index} is outside [0, 1]")]
    OutOfUnitRange { index: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("a multivariate series needs at least one component")]
    NoComponents,
    #[error("layer {layer} out of range for a network with {num_layers} layers")]
    InvalidLayer { layer: usize, num_layers: usize },
    #[error("layers of a pair must differ (got {0} twice)")]
    SameLayer(usize),
    #[error("node {node} out of range for a view with {num_nodes} nodes")]
    InvalidNode { node: usize, num_nodes: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("partition covers {got} nodes but the graph has {expected}")]
    PartitionSize { expected: usize, got: usize },
    #[error("unknown data generating process `{0}`")]
    UnknownDgp(String),
    #[error("unknown feature subset `{0}`")]
    UnknownSubset(String),
    #[error("operation needs exactly {expected} layers, network has {got}")]
    LayerCount { expected: usize, got: usize },
    #[error("cannot form {k} clusters from {rows} rows")]
    TooManyClusters { k: usize, rows: usize },
    #[error("k must be at least 1")]
    ZeroClusters,
    #[error("silhouette needs at least two nonempty clusters, got {0}")]
    TooFewClusters(usize),
    #[error("need at least {needed} rows, got {got}")]
    TooFewRows { needed: usize, got: usize },
    #[error("matrix is not rectangular: row {row} has {got} columns, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
