use std::collections::HashMap;
use std::hash::Hash;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

fn contingency<A: Eq + Hash, B: Eq + Hash>(
    a: &[A],
    b: &[B],
) -> Result<(Vec<Vec<usize>>, Vec<usize>, Vec<usize>)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::TooFewRows { needed: 1, got: 0 });
    }
    let mut ia = HashMap::new();
    let mut ib = HashMap::new();
    let pairs: Vec<(usize, usize)> = a
        .iter()
        .zip(b)
        .map(|(x, y)| {
            let na = ia.len();
            let nb = ib.len();
            (*ia.entry(x).or_insert(na), *ib.entry(y).or_insert(nb))
        })
        .collect();
    let mut table = vec![vec![0usize; ib.len()]; ia.len()];
    for (i, j) in pairs {
        table[i][j] += 1;
    }
    let rows = table.iter().map(|r| r.iter().sum()).collect();
    let cols = (0..ib.len()).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    Ok((table, rows, cols))
}

fn comb2(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) / 2.0
}

/// Adjusted Rand index. Two identical trivial partitions score 1.
pub fn ari<A: Eq + Hash, B: Eq + Hash>(truth: &[A], pred: &[B]) -> Result<f64> {
    let (table, rows, cols) = contingency(truth, pred)?;
    let index: f64 = table.iter().flatten().map(|&c| comb2(c)).sum();
    let sa: f64 = rows.iter().map(|&c| comb2(c)).sum();
    let sb: f64 = cols.iter().map(|&c| comb2(c)).sum();
    let total = comb2(truth.len());
    let expected = if total > 0.0 { sa * sb / total } else { 0.0 };
    let max = 0.5 * (sa + sb);
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

fn entropy(counts: &[usize], n: f64) -> f64 {
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalized mutual information with the arithmetic-mean normalizer.
pub fn nmi<A: Eq + Hash, B: Eq + Hash>(truth: &[A], pred: &[B]) -> Result<f64> {
    let (table, rows, cols) = contingency(truth, pred)?;
    let n = truth.len() as f64;
    let ha = entropy(&rows, n);
    let hb = entropy(&cols, n);
    if ha == 0.0 && hb == 0.0 {
        return Ok(1.0);
    }
    let mut mi = 0.0;
    for (i, row) in table.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                let c = c as f64;
                mi += c / n * (c * n / (rows[i] as f64 * cols[j] as f64)).ln();
            }
        }
    }
    Ok((mi / (0.5 * (ha + hb))).clamp(0.0, 1.0))
}

/// Mean silhouette width with Euclidean distance. Points in singleton
/// clusters score 0.
pub fn silhouette(data: &DMatrix<f64>, assignment: &[usize]) -> Result<f64> {
    let n = data.nrows();
    if assignment.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: assignment.len(),
        });
    }
    let k = assignment.iter().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; k];
    for &a in assignment {
        sizes[a] += 1;
    }
    let nonempty = sizes.iter().filter(|&&s| s > 0).count();
    if nonempty < 2 {
        return Err(Error::TooFewClusters(nonempty));
    }
    let dist = |i: usize, j: usize| (data.row(i) - data.row(j)).norm();
    let mut total = 0.0;
    for i in 0..n {
        let mut sums = vec![0.0; k];
        for j in 0..n {
            if i != j {
                sums[assignment[j]] += dist(i, j);
            }
        }
        let own = assignment[i];
        if sizes[own] == 1 {
            continue;
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..k)
            .filter(|&c| c != own && sizes[c] > 0)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
    }
    Ok(total / n as f64)
}
