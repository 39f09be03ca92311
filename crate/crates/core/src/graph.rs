//! Compact undirected simple graphs in compressed sparse row form.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted per-node neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    /// Builds a graph on `num_nodes` nodes. Each edge may be listed in
    /// either orientation; duplicates and self-loops are dropped.
    pub fn from_edges(num_nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut degree = vec![0usize; num_nodes];
        let mut pairs = Vec::new();
        for (u, v) in edges {
            assert!(u < num_nodes && v < num_nodes, "edge ({u}, {v}) out of range");
            if u == v {
                continue;
            }
            pairs.push((u as u32, v as u32));
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(num_nodes + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..num_nodes].to_vec();
        let mut neighbors = vec![0u32; *offsets.last().unwrap()];
        for (u, v) in pairs {
            neighbors[fill[u as usize]] = v;
            fill[u as usize] += 1;
            neighbors[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        // sort and dedupe each list, then compact
        let mut compact = Vec::with_capacity(neighbors.len());
        let mut new_offsets = Vec::with_capacity(num_nodes + 1);
        new_offsets.push(0);
        for v in 0..num_nodes {
            let list = &mut neighbors[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            let start = compact.len();
            for &w in list.iter() {
                if compact.len() == start || *compact.last().unwrap() != w {
                    compact.push(w);
                }
            }
            new_offsets.push(compact.len());
        }
        Self {
            offsets: new_offsets,
            neighbors: compact,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.num_nodes()).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.neighbors[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_nodes()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(move |&v| (u, v as usize))
                .filter(|(u, v)| u < v)
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_nodes();
        if n == 0 {
            return true;
        }
        let mut dist = vec![u32::MAX; n];
        let mut queue = Vec::with_capacity(n);
        bfs(self, 0, &mut dist, &mut queue).1 == n
    }

    /// Sum of shortest-path lengths from `source` to every other node.
    pub fn distance_sum(&self, source: usize) -> Result<u64> {
        let mut dist = vec![u32::MAX; self.num_nodes()];
        let mut queue = Vec::with_capacity(self.num_nodes());
        let (sum, reached) = bfs(self, source, &mut dist, &mut queue);
        if reached != self.num_nodes() {
            return Err(Error::Disconnected);
        }
        Ok(sum)
    }

    /// Distance sum and number of reached (source, target) pairs, with a BFS
    /// from each of `sources` (all nodes when `None`). Self pairs excluded.
    fn distance_totals(&self, sources: Option<&[usize]>) -> (u64, u64, usize) {
        let n = self.num_nodes();
        let all: Vec<usize>;
        let sources = match sources {
            Some(s) => s,
            None => {
                all = (0..n).collect();
                &all
            }
        };
        let (sum, pairs) = sources
            .par_iter()
            .map_init(
                || (vec![u32::MAX; n], Vec::with_capacity(n)),
                |(dist, queue), &s| {
                    let (sum, reached) = bfs(self, s, dist, queue);
                    (sum, reached as u64 - 1)
                },
            )
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        (sum, pairs, sources.len())
    }

    /// Mean shortest-path length over ordered pairs of distinct nodes,
    /// `Σ_{i≠j} d(i,j) / (N (N-1))`, with a BFS from each source in
    /// `sources` (all nodes when `None`).
    pub fn average_path_length(&self, sources: Option<&[usize]>) -> Result<f64> {
        let n = self.num_nodes();
        if n < 2 {
            return Ok(0.0);
        }
        let (sum, pairs, count) = self.distance_totals(sources);
        if pairs != (count * (n - 1)) as u64 {
            return Err(Error::Disconnected);
        }
        Ok(sum as f64 / pairs as f64)
    }

    /// Like [`Graph::average_path_length`], but averages over mutually
    /// reachable pairs only, so disconnected graphs are allowed.
    pub fn reachable_path_length(&self, sources: Option<&[usize]>) -> Result<f64> {
        let (sum, pairs, _) = self.distance_totals(sources);
        if pairs == 0 {
            return Err(Error::NoEdges);
        }
        Ok(sum as f64 / pairs as f64)
    }
}

/// Breadth-first search from `source`; returns (distance sum, nodes reached).
/// `dist` must be all `u32::MAX` on entry and is restored before return.
fn bfs(g: &Graph, source: usize, dist: &mut [u32], queue: &mut Vec<u32>) -> (u64, usize) {
    queue.clear();
    queue.push(source as u32);
    dist[source] = 0;
    let mut head = 0;
    let mut sum = 0u64;
    while head < queue.len() {
        let v = queue[head] as usize;
        head += 1;
        let dv = dist[v];
        sum += dv as u64;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if dist[w] == u32::MAX {
                dist[w] = dv + 1;
                queue.push(w as u32);
            }
        }
    }
    for &v in queue.iter() {
        dist[v as usize] = u32::MAX;
    }
    (sum, queue.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1)))
    }

    #[test]
    fn builds_sorted_deduplicated_lists() {
        let g = Graph::from_edges(4, [(2, 0), (0, 2), (0, 1), (3, 3), (1, 3)]);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(3), &[1]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3)]);
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn path_lengths() {
        assert!((path(3).average_path_length(None).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let k4 = Graph::from_edges(4, (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))));
        assert_eq!(k4.average_path_length(None).unwrap(), 1.0);
        assert_eq!(path(5).distance_sum(0).unwrap(), 10);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert!(!g.is_connected());
        assert!(matches!(g.average_path_length(None), Err(Error::Disconnected)));
        assert!(path(4).is_connected());
        // two components, each a single edge
        assert_eq!(g.reachable_path_length(None).unwrap(), 1.0);
        assert!(matches!(
            Graph::from_edges(3, []).reachable_path_length(None),
            Err(Error::NoEdges)
        ));
    }
}
