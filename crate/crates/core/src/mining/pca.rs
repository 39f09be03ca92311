use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Principal components of mean-centered (not standardized) data.
#[derive(Clone, Debug)]
pub struct Pca {
    pub mean: DVector<f64>,
    /// Columns are components, ordered by decreasing variance. Each column
    /// has its largest-magnitude entry positive.
    pub loadings: DMatrix<f64>,
    /// Eigenvalues of the sample covariance (denominator `n - 1`).
    pub explained_variance: DVector<f64>,
    /// Rows are observations projected on every component.
    pub scores: DMatrix<f64>,
}

impl Pca {
    pub fn explained_ratio(&self) -> DVector<f64> {
        let total = self.explained_variance.sum();
        if total > 0.0 {
            &self.explained_variance / total
        } else {
            DVector::zeros(self.explained_variance.len())
        }
    }

    /// Maps scores back to the original (uncentered) coordinates.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut x = &self.scores * self.loadings.transpose();
        for mut row in x.row_iter_mut() {
            row += self.mean.transpose();
        }
        x
    }
}

pub fn pca(data: &DMatrix<f64>) -> Result<Pca> {
    let (n, p) = data.shape();
    if n < 2 {
        return Err(Error::TooFewRows { needed: 2, got: n });
    }
    if let Some(index) = data.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let mean = DVector::from_fn(p, |j, _| data.column(j).mean());
    let mut centered = data.clone();
    for mut row in centered.row_iter_mut() {
        row -= mean.transpose();
    }
    let cov = centered.transpose() * &centered / (n as f64 - 1.0);
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut loadings = DMatrix::zeros(p, p);
    let mut variance = DVector::zeros(p);
    for (dst, &src) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(src).clone_owned();
        let lead = v.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        if lead < 0.0 {
            v.neg_mut();
        }
        loadings.set_column(dst, &v);
        variance[dst] = eig.eigenvalues[src].max(0.0);
    }
    let scores = &centered * &loadings;
    Ok(Pca {
        mean,
        loadings,
        explained_variance: variance,
        scores,
    })
}
