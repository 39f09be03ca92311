//! Multilayer horizontal visibility graphs and their subgraph views.
//!
//! Layers are addressed 0-based in the API. Text and JSON exports use
//! 1-based layers and nodes.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tsdata::{min_max_rescale, MultivariateTimeSeries};
use crate::visibility::{build_cross_hvg, build_hvg, CrossAdjacency};

/// Node-aligned multilayer network: one HVG per component and one
/// cross-HVG per unordered pair of components.
#[derive(Clone, Debug, PartialEq)]
pub struct MultilayerNetwork {
    num_timestamps: usize,
    layers: Vec<Graph>,
    /// Pairs `(a, b)` with `a < b`, in lexicographic order.
    pairs: Vec<((usize, usize), CrossAdjacency)>,
}

/// Maps a multivariate series to its multilayer horizontal visibility graph.
///
/// Intra-layer edges come from the raw components; inter-layer edges from
/// the Min-Max rescaled components.
pub fn build_mhvg(mts: &MultivariateTimeSeries) -> MultilayerNetwork {
    let m = mts.num_components();
    let (layers, rescaled): (Vec<Graph>, Vec<_>) = mts
        .components()
        .par_iter()
        .map(|c| (build_hvg(c), min_max_rescale(c)))
        .unzip();
    let keys: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .collect();
    let pairs = keys
        .into_par_iter()
        .map(|(a, b)| {
            let cross = build_cross_hvg(&rescaled[a], &rescaled[b])
                .expect("components share a length");
            ((a, b), cross)
        })
        .collect();
    MultilayerNetwork {
        num_timestamps: mts.len(),
        layers,
        pairs,
    }
}

impl MultilayerNetwork {
    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn num_timestamps(&self) -> usize {
        self.num_timestamps
    }

    fn check_layer(&self, layer: usize) -> Result<()> {
        if layer >= self.num_layers() {
            return Err(Error::InvalidLayer {
                layer,
                num_layers: self.num_layers(),
            });
        }
        Ok(())
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.check_layer(a)?;
        self.check_layer(b)?;
        if a == b {
            return Err(Error::SameLayer(a));
        }
        Ok(())
    }

    /// The HVG of one layer.
    pub fn intra(&self, layer: usize) -> Result<&Graph> {
        self.check_layer(layer)?;
        Ok(&self.layers[layer])
    }

    /// Inter-layer adjacency stored for `a < b`.
    fn stored_pair(&self, a: usize, b: usize) -> &CrossAdjacency {
        let idx = self
            .pairs
            .binary_search_by_key(&(a, b), |(k, _)| *k)
            .expect("every unordered pair is stored");
        &self.pairs[idx].1
    }

    /// Inter-layer adjacency oriented from `a` to `b`.
    pub fn inter(&self, a: usize, b: usize) -> Result<CrossAdjacency> {
        self.check_pair(a, b)?;
        Ok(if a < b {
            self.stored_pair(a, b).clone()
        } else {
            self.stored_pair(b, a).transposed()
        })
    }

    /// Intra-layer degree `k_i^α`.
    pub fn intra_degrees(&self, layer: usize) -> Result<Vec<usize>> {
        Ok(self.intra(layer)?.degrees())
    }

    /// Inter-layer degree `k_i^{α≺β}` of every node of `source`.
    pub fn inter_degrees(&self, source: usize, other: usize) -> Result<Vec<usize>> {
        self.check_pair(source, other)?;
        Ok(if source < other {
            self.stored_pair(source, other).degrees_a()
        } else {
            self.stored_pair(other, source).degrees_b()
        })
    }

    /// All-layer degree `k_i^{α⪯β} = k_i^α + k_i^{α≺β}`.
    pub fn all_degrees(&self, source: usize, other: usize) -> Result<Vec<usize>> {
        let intra = self.intra_degrees(source)?;
        let inter = self.inter_degrees(source, other)?;
        Ok(intra.iter().zip(&inter).map(|(a, b)| a + b).collect())
    }

    pub fn intra_edge_counts(&self) -> Vec<usize> {
        self.layers.iter().map(Graph::num_edges).collect()
    }

    /// Inter-layer edge counts for pairs `(1,2), (1,3), …, (2,3), …`.
    pub fn inter_edge_counts(&self) -> Vec<usize> {
        self.pairs.iter().map(|(_, c)| c.num_edges()).collect()
    }

    pub fn subgraph(&self, kind: ViewKind) -> Result<SubgraphView> {
        let t = self.num_timestamps;
        let graph = match kind {
            ViewKind::Intra(a) => self.intra(a)?.clone(),
            ViewKind::Inter(a, b) => self.inter(a, b)?.as_graph().clone(),
            ViewKind::All(a, b) => {
                let cross = self.inter(a, b)?;
                let edges = self.layers[a]
                    .edges()
                    .chain(self.layers[b].edges().map(|(u, v)| (u + t, v + t)))
                    .chain(cross.edges().map(|(i, j)| (i, j + t)));
                Graph::from_edges(2 * t, edges)
            }
        };
        Ok(SubgraphView {
            kind,
            num_timestamps: t,
            graph,
        })
    }

    pub fn summary(&self) -> NetworkSummary {
        NetworkSummary {
            m: self.num_layers(),
            t: self.num_timestamps,
            intra_edge_counts: self.intra_edge_counts(),
            inter_edge_counts: self.inter_edge_counts(),
        }
    }

    /// Writes `layer_i node_i layer_j node_j` lines (1-based): every intra
    /// block in layer order, then every inter block in pair order, each
    /// sorted by node.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (layer, g) in self.layers.iter().enumerate() {
            for (u, v) in g.edges() {
                writeln!(out, "{} {} {} {}", layer + 1, u + 1, layer + 1, v + 1)?;
            }
        }
        for ((a, b), cross) in &self.pairs {
            for (i, j) in cross.edges() {
                writeln!(out, "{} {} {} {}", a + 1, i + 1, b + 1, j + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub m: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub intra_edge_counts: Vec<usize>,
    pub inter_edge_counts: Vec<usize>,
}

/// Which blocks of the supra-adjacency matrix a view keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViewKind {
    /// Diagonal block of one layer.
    Intra(usize),
    /// Off-diagonal blocks of a pair; bipartite.
    Inter(usize, usize),
    /// Both diagonal blocks and the off-diagonal blocks of a pair.
    All(usize, usize),
}

/// A materialized subgraph of a [`MultilayerNetwork`].
///
/// Intra views number nodes `0..T`. Pair views put the first layer at
/// `0..T` and the second at `T..2T`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgraphView {
    kind: ViewKind,
    num_timestamps: usize,
    graph: Graph,
}

impl SubgraphView {
    pub fn kind(&self) -> ViewKind {
        self.kind
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.num_nodes() {
            return Err(Error::InvalidNode {
                node,
                num_nodes: self.num_nodes(),
            });
        }
        Ok(())
    }

    pub fn degree(&self, node: usize) -> Result<usize> {
        self.check_node(node)?;
        Ok(self.graph.degree(node))
    }

    pub fn neighbors(&self, node: usize) -> Result<&[u32]> {
        self.check_node(node)?;
        Ok(self.graph.neighbors(node))
    }

    /// `(layer, timestamp)` of a view node, both 0-based.
    pub fn locate(&self, node: usize) -> Result<(usize, usize)> {
        self.check_node(node)?;
        let t = self.num_timestamps;
        Ok(match self.kind {
            ViewKind::Intra(a) => (a, node),
            ViewKind::Inter(a, b) | ViewKind::All(a, b) => {
                if node < t {
                    (a, node)
                } else {
                    (b, node - t)
                }
            }
        })
    }

    /// View nodes belonging to `layer`.
    pub fn layer_nodes(&self, layer: usize) -> Result<std::ops::Range<usize>> {
        let t = self.num_timestamps;
        match self.kind {
            ViewKind::Intra(a) if a == layer => Ok(0..t),
            ViewKind::Inter(a, _) | ViewKind::All(a, _) if a == layer => Ok(0..t),
            ViewKind::Inter(_, b) | ViewKind::All(_, b) if b == layer => Ok(t..2 * t),
            _ => Err(Error::InvalidLayer {
                layer,
                num_layers: self.num_nodes() / t.max(1),
            }),
        }
    }
}
