//! Brute-force reference implementations shared by the integration tests.
//! Deliberately naive: they follow the definitions directly and share no
//! code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Horizontal visibility by direct evaluation of every intermediate value.
pub fn hvg_edges(y: &[f64]) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            if (i + 1..j).all(|k| y[k] < y[i] && y[k] < y[j]) {
                edges.insert((i, j));
            }
        }
    }
    edges
}

/// Cross-horizontal visibility: `(i, j)` links `a_i` and `b_j`.
pub fn cross_edges(a: &[f64], b: &[f64]) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for i in 0..a.len() {
        for j in 0..b.len() {
            if i == j {
                continue;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            let top = a[i].min(b[j]);
            if (lo + 1..hi).all(|t| top > a[t].max(b[t])) {
                edges.insert((i, j));
            }
        }
    }
    edges
}

pub fn min_max(x: &[f64]) -> Vec<f64> {
    let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return vec![0.0; x.len()];
    }
    x.iter().map(|v| (v - lo) / (hi - lo)).collect()
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u != v {
            a[u][v] = true;
            a[v][u] = true;
        }
    }
    a
}

/// All-pairs distances; `None` marks unreachable pairs.
pub fn floyd_warshall(adj: &[Vec<bool>]) -> Vec<Vec<Option<u64>>> {
    let n = adj.len();
    let mut d: Vec<Vec<Option<u64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Some(0)
                    } else if adj[i][j] {
                        Some(1)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| x + y < c) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Mean distance over ordered pairs of distinct mutually reachable nodes.
pub fn reachable_mean_distance(adj: &[Vec<bool>]) -> Option<f64> {
    let d = floyd_warshall(adj);
    let (mut sum, mut count) = (0u64, 0u64);
    for (i, row) in d.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                if let Some(v) = v {
                    sum += v;
                    count += 1;
                }
            }
        }
    }
    (count > 0).then(|| sum as f64 / count as f64)
}

/// Newman modularity from the dense formula `(1/2m) Σ_ij [A_ij - k_i k_j / 2m] δ(c_i, c_j)`.
pub fn dense_modularity(adj: &[Vec<bool>], labels: &[usize]) -> f64 {
    let n = adj.len();
    let k: Vec<f64> = adj
        .iter()
        .map(|r| r.iter().filter(|&&x| x).count() as f64)
        .collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                let a = if adj[i][j] { 1.0 } else { 0.0 };
                q += a - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Pair-counting Rand statistics by enumerating every pair.
pub fn pair_counts(x: &[usize], y: &[usize]) -> (f64, f64, f64, f64) {
    let (mut both, mut only_x, mut only_y, mut total) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let sx = x[i] == x[j];
            let sy = y[i] == y[j];
            total += 1.0;
            match (sx, sy) {
                (true, true) => both += 1.0,
                (true, false) => only_x += 1.0,
                (false, true) => only_y += 1.0,
                _ => {}
            }
        }
    }
    (both, only_x, only_y, total)
}

/// Hubert-Arabie ARI from raw pair counts.
pub fn ari_from_pairs(x: &[usize], y: &[usize]) -> f64 {
    let (both, only_x, only_y, total) = pair_counts(x, y);
    let sx = both + only_x;
    let sy = both + only_y;
    let expected = sx * sy / total;
    let max = 0.5 * (sx + sy);
    if max == expected {
        return 1.0;
    }
    (both - expected) / (max - expected)
}
