use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng_from_seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KMeansConfig {
    pub k: usize,
    pub seed: u64,
    /// Independent k-means++ initializations; the lowest WCSS wins.
    pub restarts: usize,
    pub max_iter: usize,
}

impl KMeansConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            restarts: 10,
            max_iter: 300,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KMeansResult {
    /// Zero-based cluster of each row.
    pub assignment: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub wcss: f64,
    /// WCSS after every assignment step of the winning run.
    pub history: Vec<f64>,
    pub iterations: usize,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn plus_plus_init(points: &[Vec<f64>], k: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_from_seed(seed);
    let n = points.len();
    let mut chosen = vec![false; n];
    let first = rng.random_range(0..n);
    chosen[first] = true;
    let mut centroids = vec![points[first].clone()];
    let mut d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &points[first])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut pick = None;
            for (i, &d) in d2.iter().enumerate() {
                if d > 0.0 {
                    pick = Some(i);
                    if target < d {
                        break;
                    }
                    target -= d;
                }
            }
            pick.expect("positive total implies a positive weight")
        } else {
            // every remaining point duplicates a centroid
            let free: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            free[rng.random_range(0..free.len())]
        };
        chosen[pick] = true;
        centroids.push(points[pick].clone());
        for (d, p) in d2.iter_mut().zip(points) {
            *d = d.min(sq_dist(p, &points[pick]));
        }
    }
    centroids
}

fn nearest(p: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(p, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn lloyd(points: &[Vec<f64>], mut centroids: Vec<Vec<f64>>, max_iter: usize) -> KMeansResult {
    let dim = points[0].len();
    let k = centroids.len();
    let mut assignment = vec![usize::MAX; points.len()];
    let mut history = Vec::new();
    let mut iterations = 0;
    loop {
        let mut changed = false;
        let mut wcss = 0.0;
        for (a, p) in assignment.iter_mut().zip(points) {
            let (c, d) = nearest(p, &centroids);
            wcss += d;
            if *a != c {
                *a = c;
                changed = true;
            }
        }
        history.push(wcss);
        if !changed || iterations == max_iter {
            return KMeansResult {
                assignment,
                centroids,
                wcss,
                history,
                iterations,
            };
        }
        iterations += 1;
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (&a, p) in assignment.iter().zip(points) {
            counts[a] += 1;
            for (s, v) in sums[a].iter_mut().zip(p) {
                *s += v;
            }
        }
        for c in 0..k {
            // an empty cluster keeps its centroid
            if counts[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
    }
}

/// Lloyd's algorithm with k-means++ seeding, best of `restarts` runs.
pub fn kmeans(data: &DMatrix<f64>, config: &KMeansConfig) -> Result<KMeansResult> {
    let n = data.nrows();
    if config.k == 0 {
        return Err(Error::ZeroClusters);
    }
    if config.k > n {
        return Err(Error::TooManyClusters { k: config.k, rows: n });
    }
    if let Some(index) = data.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let points: Vec<Vec<f64>> = data
        .row_iter()
        .map(|r| r.iter().copied().collect())
        .collect();
    let mut best: Option<KMeansResult> = None;
    for rep in 0..config.restarts.max(1) {
        let init = plus_plus_init(&points, config.k, derive_seed(config.seed, &[rep as u64]));
        let run = lloyd(&points, init, config.max_iter);
        if best.as_ref().is_none_or(|b| run.wcss < b.wcss) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs() -> DMatrix<f64> {
        let mut rows = Vec::new();
        for (cx, cy) in [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0)] {
            for i in 0..10 {
                let t = i as f64 * 0.1;
                rows.extend([cx + t.sin(), cy + t.cos()]);
            }
        }
        DMatrix::from_row_slice(30, 2, &rows)
    }

    #[test]
    fn separates_blobs() {
        let r = kmeans(&blobs(), &KMeansConfig::new(3, 1)).unwrap();
        for block in r.assignment.chunks(10) {
            assert!(block.iter().all(|&a| a == block[0]));
        }
        let mut firsts = vec![r.assignment[0], r.assignment[10], r.assignment[20]];
        firsts.sort_unstable();
        firsts.dedup();
        assert_eq!(firsts.len(), 3);
    }

    #[test]
    fn k_equals_rows_gives_zero_wcss() {
        let x = DMatrix::from_row_slice(4, 1, &[1.0, 2.0, 4.0, 8.0]);
        let r = kmeans(&x, &KMeansConfig::new(4, 3)).unwrap();
        assert_eq!(r.wcss, 0.0);
    }

    #[test]
    fn duplicate_points_still_seed() {
        let x = DMatrix::from_element(5, 2, 1.0);
        let r = kmeans(&x, &KMeansConfig::new(3, 0)).unwrap();
        assert_eq!(r.wcss, 0.0);
    }

    #[test]
    fn invalid_k() {
        let x = blobs();
        assert!(matches!(kmeans(&x, &KMeansConfig::new(0, 0)), Err(Error::ZeroClusters)));
        assert!(matches!(
            kmeans(&x, &KMeansConfig::new(31, 0)),
            Err(Error::TooManyClusters { .. })
        ));
    }

    #[test]
    fn deterministic_for_seed() {
        let x = blobs();
        let a = kmeans(&x, &KMeansConfig::new(4, 9)).unwrap();
        let b = kmeans(&x, &KMeansConfig::new(4, 9)).unwrap();
        assert_eq!(a, b);
    }
}
