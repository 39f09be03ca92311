//! Horizontal visibility (within one series) and cross-horizontal
//! visibility (between two rescaled series).
//!
//! Nodes are 0-based timestamps. Both constructions scan outward from each
//! timestamp while tracking the running maximum of the intermediate values
//! and stop as soon as that maximum blocks the origin, so the cost is linear
//! in the number of candidate pairs actually inspected.

use crate::error::Result;
use crate::graph::Graph;
use crate::tsdata::{max_series, RescaledSeries, UnivariateSeries};

/// Horizontal visibility graph of a series.
///
/// `i < j` are joined iff every `y[k]`, `i < k < j`, is strictly below both
/// `y[i]` and `y[j]`. Ties block visibility.
pub fn build_hvg(series: &UnivariateSeries) -> Graph {
    Graph::from_edges(series.len(), hvg_edges(series.values()))
}

pub(crate) fn hvg_edges(y: &[f64]) -> Vec<(usize, usize)> {
    let n = y.len();
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..n.saturating_sub(1) {
        edges.push((i, i + 1));
        let mut blocker = y[i + 1];
        for j in i + 2..n {
            if blocker >= y[i] {
                break;
            }
            if y[j] > blocker {
                edges.push((i, j));
                blocker = y[j];
            }
        }
    }
    edges
}

/// Inter-layer adjacency between two node-aligned layers `a` and `b`.
///
/// Edges join `a`-node `i` to `b`-node `j` with `i != j`; contemporaneous
/// pairs are never connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossAdjacency {
    len: usize,
    /// `(i, j)` pairs, sorted, meaning `a_i — b_j`.
    edges: Vec<(u32, u32)>,
    from_a: Graph,
}

impl CrossAdjacency {
    fn new(len: usize, mut edges: Vec<(u32, u32)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let from_a = Graph::from_edges(
            2 * len,
            edges.iter().map(|&(i, j)| (i as usize, len + j as usize)),
        );
        Self { len, edges, from_a }
    }

    /// Number of timestamps per layer.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Sorted `(i, j)` pairs meaning `a_i — b_j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(i, j)| (i as usize, j as usize))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i as u32, j as u32)).is_ok()
    }

    /// Inter-layer degree of `a_i`.
    pub fn degree_a(&self, i: usize) -> usize {
        self.from_a.degree(i)
    }

    /// Inter-layer degree of `b_j`.
    pub fn degree_b(&self, j: usize) -> usize {
        self.from_a.degree(self.len + j)
    }

    pub fn degrees_a(&self) -> Vec<usize> {
        (0..self.len).map(|i| self.degree_a(i)).collect()
    }

    pub fn degrees_b(&self) -> Vec<usize> {
        (0..self.len).map(|j| self.degree_b(j)).collect()
    }

    /// The bipartite graph on `2T` nodes: `a` occupies `0..T`, `b` `T..2T`.
    pub fn as_graph(&self) -> &Graph {
        &self.from_a
    }

    /// The same adjacency seen from `b` to `a`.
    pub fn transposed(&self) -> Self {
        Self::new(self.len, self.edges.iter().map(|&(i, j)| (j, i)).collect())
    }
}

/// Cross-horizontal visibility graph of two series on a common scale.
///
/// `a_i` and `b_j` (`i != j`) are joined iff `min(a[i], b[j])` exceeds
/// `max(a[t], b[t])` for every `t` strictly between `i` and `j`. Adjacent
/// timestamps are always joined, in both orientations.
pub fn build_cross_hvg(a: &RescaledSeries, b: &RescaledSeries) -> Result<CrossAdjacency> {
    let upper = max_series(a, b)?;
    let (a, b, upper) = (a.values(), b.values(), upper.values());
    let n = a.len();
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(4 * n);

    // to the right of a_i
    for i in 0..n.saturating_sub(1) {
        edges.push((i as u32, (i + 1) as u32));
        let mut blocker = upper[i + 1];
        for j in i + 2..n {
            if blocker >= a[i] {
                break;
            }
            if b[j] > blocker {
                edges.push((i as u32, j as u32));
            }
            if upper[j] > blocker {
                blocker = upper[j];
            }
        }
    }
    // to the left of a_i
    for i in 1..n {
        edges.push((i as u32, (i - 1) as u32));
        let mut blocker = upper[i - 1];
        for j in (0..i - 1).rev() {
            if blocker >= a[i] {
                break;
            }
            if b[j] > blocker {
                edges.push((i as u32, j as u32));
            }
            if upper[j] > blocker {
                blocker = upper[j];
            }
        }
    }
    Ok(CrossAdjacency::new(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: &[f64]) -> UnivariateSeries {
        UnivariateSeries::new(v.to_vec()).unwrap()
    }

    fn unit(v: &[f64]) -> RescaledSeries {
        RescaledSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hvg_small_example() {
        let g = build_hvg(&series(&[1.0, 3.0, 2.0, 4.0]));
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 1), (1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(g.degrees(), vec![1, 3, 2, 2]);
    }

    #[test]
    fn monotone_and_constant_series_give_paths() {
        for v in [vec![1.0, 2.0, 3.0, 4.0, 5.0], vec![7.0; 4], vec![5.0, 4.0, 3.0]] {
            let g = build_hvg(&series(&v));
            let path: Vec<_> = (0..v.len() - 1).map(|i| (i, i + 1)).collect();
            assert_eq!(g.edges().collect::<Vec<_>>(), path);
        }
    }

    #[test]
    fn cross_small_example() {
        let c = build_cross_hvg(&unit(&[0.2, 0.9, 0.4]), &unit(&[0.5, 0.1, 0.7])).unwrap();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert_eq!(c.degrees_a(), vec![1, 2, 1]);
        assert_eq!(c.degrees_b(), vec![1, 2, 1]);
    }

    #[test]
    fn cross_long_range_edge() {
        // a_0 = 0.9 and b_3 = 0.8 see over the low middle
        let c = build_cross_hvg(&unit(&[0.9, 0.1, 0.2, 0.0]), &unit(&[0.0, 0.3, 0.1, 0.8])).unwrap();
        assert!(c.has_edge(0, 3));
        assert!(!c.has_edge(0, 2));
        assert!(!c.has_edge(0, 0));
        // b_0 = 0 cannot see a_3 past 0.3
        assert!(!c.has_edge(3, 0));
    }

    #[test]
    fn cross_length_two_has_only_forced_edges() {
        let c = build_cross_hvg(&unit(&[0.3, 0.6]), &unit(&[1.0, 0.0])).unwrap();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn cross_length_mismatch() {
        assert!(build_cross_hvg(&unit(&[0.3, 0.6]), &unit(&[1.0, 0.0, 0.5])).is_err());
    }

    #[test]
    fn transpose_swaps_roles() {
        let c = build_cross_hvg(&unit(&[0.2, 0.9, 0.4, 1.0]), &unit(&[0.5, 0.1, 0.7, 0.0])).unwrap();
        let t = c.transposed();
        for (i, j) in c.edges() {
            assert!(t.has_edge(j, i));
        }
        assert_eq!(c.degrees_a(), t.degrees_b());
    }
}
