//! Modularity and Louvain community detection.

use std::io::Write;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::network::SubgraphView;
use crate::seed::rng_from_seed;

/// Smallest modularity improvement that counts as a move.
pub const MIN_GAIN: f64 = 1e-9;

/// Assignment of every node to one community; ids are contiguous from 1 in
/// order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    num_communities: usize,
}

impl Partition {
    /// Relabels arbitrary labels to contiguous ids from 1.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut ids = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = ids.len() + 1;
                *ids.entry(l.clone()).or_insert(next)
            })
            .collect();
        Self {
            assignment,
            num_communities: ids.len(),
        }
    }

    pub fn single(num_nodes: usize) -> Self {
        Self::from_labels(&vec![0u8; num_nodes])
    }

    pub fn singletons(num_nodes: usize) -> Self {
        Self::from_labels(&(0..num_nodes).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn num_communities(&self) -> usize {
        self.num_communities
    }

    /// Writes `layer,node,community` rows (1-based) for the nodes of a view.
    pub fn write_csv<W: Write>(&self, view: &SubgraphView, out: W) -> Result<()> {
        if self.len() != view.num_nodes() {
            return Err(Error::PartitionSize {
                expected: view.num_nodes(),
                got: self.len(),
            });
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["layer", "node", "community"])?;
        for (node, &c) in self.assignment.iter().enumerate() {
            let (layer, t) = view.locate(node)?;
            w.write_record([(layer + 1).to_string(), (t + 1).to_string(), c.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Newman modularity of `part` on an unweighted graph:
/// `Q = Σ_c [ L_c / |E| − (D_c / 2|E|)² ]`, with `L_c` the edges inside
/// community `c` and `D_c` its degree total.
pub fn modularity(graph: &Graph, part: &Partition) -> Result<f64> {
    if part.len() != graph.num_nodes() {
        return Err(Error::PartitionSize {
            expected: graph.num_nodes(),
            got: part.len(),
        });
    }
    let m = graph.num_edges() as f64;
    if m == 0.0 {
        return Err(Error::NoEdges);
    }
    let s = part.num_communities();
    let mut inside = vec![0f64; s + 1];
    let mut total = vec![0f64; s + 1];
    for (u, v) in graph.edges() {
        let (cu, cv) = (part.community(u), part.community(v));
        if cu == cv {
            inside[cu] += 1.0;
        }
        total[cu] += 1.0;
        total[cv] += 1.0;
    }
    Ok(inside
        .iter()
        .zip(&total)
        .map(|(l, d)| l / m - (d / (2.0 * m)).powi(2))
        .sum())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LouvainConfig {
    /// Shuffle the node visitation order with this seed. `None` visits
    /// nodes in ascending id order.
    pub shuffle_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LouvainResult {
    pub partition: Partition,
    pub modularity: f64,
    /// Modularity of the flattened partition after each aggregation level.
    pub level_modularity: Vec<f64>,
}

/// Weighted graph used between aggregation levels.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
    strength: Vec<f64>,
    total_weight: f64,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<(usize, f64)>> = (0..g.num_nodes())
            .map(|v| g.neighbors(v).iter().map(|&w| (w as usize, 1.0)).collect())
            .collect();
        let strength = adj.iter().map(|l| l.len() as f64).collect();
        Self {
            self_loops: vec![0.0; adj.len()],
            adj,
            strength,
            total_weight: g.num_edges() as f64,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Local moving phase; returns the community of each node and whether
    /// any node moved.
    fn local_moves(&self, order: &[usize]) -> (Vec<usize>, bool) {
        let n = self.len();
        let m = self.total_weight;
        let mut community: Vec<usize> = (0..n).collect();
        let mut tot = self.strength.clone();
        let mut link = vec![0f64; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut moved_any = false;

        loop {
            let mut moved = false;
            for &i in order {
                let own = community[i];
                let k = self.strength[i];
                for &(j, w) in &self.adj[i] {
                    let c = community[j];
                    if link[c] == 0.0 {
                        touched.push(c);
                    }
                    link[c] += w;
                }
                tot[own] -= k;
                let score = |c: usize, link: &[f64], tot: &[f64]| link[c] - tot[c] * k / (2.0 * m);
                let stay = score(own, &link, &tot);
                let mut best = own;
                let mut best_score = stay;
                for &c in &touched {
                    let s = score(c, &link, &tot);
                    if s > best_score || (s == best_score && c < best) {
                        best = c;
                        best_score = s;
                    }
                }
                if best != own && (best_score - stay) / m > MIN_GAIN {
                    community[i] = best;
                    moved = true;
                } else {
                    best = own;
                }
                tot[best] += k;
                for &c in &touched {
                    link[c] = 0.0;
                }
                touched.clear();
            }
            if !moved {
                break;
            }
            moved_any = true;
        }
        (community, moved_any)
    }

    /// Collapses communities into nodes. `community` must use ids `0..s`.
    fn aggregate(&self, community: &[usize], s: usize) -> Self {
        let mut self_loops = vec![0f64; s];
        let mut strength = vec![0f64; s];
        let mut weights: Vec<Vec<(usize, f64)>> = vec![Vec::new(); s];
        for i in 0..self.len() {
            let ci = community[i];
            self_loops[ci] += self.self_loops[i];
            strength[ci] += self.strength[i];
            for &(j, w) in &self.adj[i] {
                let cj = community[j];
                if ci == cj {
                    self_loops[ci] += w / 2.0;
                } else {
                    weights[ci].push((cj, w));
                }
            }
        }
        let adj = weights
            .into_iter()
            .map(|mut list| {
                list.sort_unstable_by_key(|&(c, _)| c);
                let mut merged: Vec<(usize, f64)> = Vec::with_capacity(list.len());
                for (c, w) in list {
                    match merged.last_mut() {
                        Some((last, acc)) if *last == c => *acc += w,
                        _ => merged.push((c, w)),
                    }
                }
                merged
            })
            .collect();
        Self {
            adj,
            self_loops,
            strength,
            total_weight: self.total_weight,
        }
    }
}

/// Renumbers labels to `0..s` by first appearance.
fn compact(labels: &mut [usize]) -> usize {
    let mut map = vec![usize::MAX; labels.len()];
    let mut next = 0;
    for l in labels.iter_mut() {
        if map[*l] == usize::MAX {
            map[*l] = next;
            next += 1;
        }
        *l = map[*l];
    }
    next
}

/// Multilevel Louvain optimization of modularity.
pub fn louvain(graph: &Graph, config: &LouvainConfig) -> Result<LouvainResult> {
    let n = graph.num_nodes();
    if graph.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let mut rng = config.shuffle_seed.map(rng_from_seed);
    let mut level = Level::from_graph(graph);
    let mut membership: Vec<usize> = (0..n).collect();
    let mut level_modularity = Vec::new();

    loop {
        let mut order: Vec<usize> = (0..level.len()).collect();
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let (mut community, moved) = level.local_moves(&order);
        if !moved {
            break;
        }
        let s = compact(&mut community);
        for c in membership.iter_mut() {
            *c = community[*c];
        }
        level_modularity.push(modularity(graph, &Partition::from_labels(&membership))?);
        if s == level.len() {
            break;
        }
        level = level.aggregate(&community, s);
    }

    let partition = Partition::from_labels(&membership);
    let q = modularity(graph, &partition)?;
    Ok(LouvainResult {
        partition,
        modularity: q,
        level_modularity,
    })
}

/// Detects communities of a view with ascending-id node order.
pub fn detect_communities(view: &SubgraphView, config: &LouvainConfig) -> Result<Partition> {
    Ok(louvain(view.graph(), config)?.partition)
}

/// Number of communities `S` and modularity `Q` of a view.
pub fn s_and_q(view: &SubgraphView, config: &LouvainConfig) -> Result<(usize, f64)> {
    let result = louvain(view.graph(), config)?;
    Ok((result.partition.num_communities(), result.modularity))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique_edges(nodes: std::ops::Range<usize>) -> Vec<(usize, usize)> {
        let v: Vec<usize> = nodes.collect();
        v.iter()
            .flat_map(|&i| v.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    #[test]
    fn one_community_has_zero_modularity() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]);
        assert!(modularity(&g, &Partition::single(5)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn two_triangles() {
        let mut e = clique_edges(0..3);
        e.extend(clique_edges(3..6));
        let g = Graph::from_edges(6, e);
        let p = Partition::from_labels(&[0, 0, 0, 1, 1, 1]);
        assert!((modularity(&g, &p).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn singletons_are_negative() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)]);
        let q = modularity(&g, &Partition::singletons(4)).unwrap();
        let m2 = 2.0 * 4.0;
        let expected: f64 = -g.degrees().iter().map(|&k| (k as f64 / m2).powi(2)).sum::<f64>();
        assert!((q - expected).abs() < 1e-15);
        assert!(q < 0.0);
    }

    #[test]
    fn errors() {
        let empty = Graph::from_edges(3, []);
        assert!(matches!(
            modularity(&empty, &Partition::single(3)),
            Err(Error::NoEdges)
        ));
        let g = Graph::from_edges(3, [(0, 1)]);
        assert!(matches!(
            modularity(&g, &Partition::single(2)),
            Err(Error::PartitionSize { .. })
        ));
    }

    #[test]
    fn cliques_joined_by_bridge() {
        let mut e = clique_edges(0..5);
        e.extend(clique_edges(5..10));
        e.push((4, 5));
        let g = Graph::from_edges(10, e);
        let r = louvain(&g, &LouvainConfig::default()).unwrap();
        assert_eq!(r.partition.num_communities(), 2);
        let a = r.partition.assignment();
        assert!(a[..5].iter().all(|&c| c == a[0]));
        assert!(a[5..].iter().all(|&c| c == a[5]));
        assert_ne!(a[0], a[5]);
    }

    #[test]
    fn complete_graph_is_one_community() {
        let g = Graph::from_edges(5, clique_edges(0..5));
        let r = louvain(&g, &LouvainConfig::default()).unwrap();
        assert_eq!(r.partition.num_communities(), 1);
        assert!(r.modularity.abs() < 1e-15);
    }

    #[test]
    fn path_of_three() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let r = louvain(&g, &LouvainConfig::default()).unwrap();
        assert!((1..=2).contains(&r.partition.num_communities()));
        assert!((r.modularity - modularity(&g, &r.partition).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn shuffled_runs_repeat() {
        let mut e = clique_edges(0..4);
        e.extend(clique_edges(4..8));
        e.extend(clique_edges(8..12));
        e.extend([(3, 4), (7, 8), (11, 0)]);
        let g = Graph::from_edges(12, e);
        let cfg = LouvainConfig {
            shuffle_seed: Some(3),
        };
        assert_eq!(louvain(&g, &cfg).unwrap(), louvain(&g, &cfg).unwrap());
        assert_eq!(louvain(&g, &cfg).unwrap().partition.num_communities(), 3);
    }

    #[test]
    fn partition_labels_are_contiguous() {
        let p = Partition::from_labels(&["x", "y", "x", "z"]);
        assert_eq!(p.assignment(), &[1, 2, 1, 3]);
        assert_eq!(p.num_communities(), 3);
    }
}
