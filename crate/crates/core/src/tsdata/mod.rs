//! Time-series containers, Min-Max rescaling and the synthetic
//! data-generating processes used in the clustering study.

mod dgp;
mod io;

pub use dgp::{generate, DgpKind, DgpSpec, Model, DEFAULT_BURN_IN};
pub use io::{read_csv, read_csv_path, write_csv};

use crate::error::{Error, Result};

/// A scalar series of finite observations, at least two long.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariateSeries(Vec<f64>);

impl UnivariateSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::SeriesTooShort(values.len()));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for UnivariateSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// `m` aligned component series sharing one length.
#[derive(Clone, Debug, PartialEq)]
pub struct MultivariateTimeSeries {
    components: Vec<UnivariateSeries>,
}

impl MultivariateTimeSeries {
    pub fn new(components: Vec<UnivariateSeries>) -> Result<Self> {
        let first = components.first().ok_or(Error::NoComponents)?;
        let len = first.len();
        for c in &components[1..] {
            if c.len() != len {
                return Err(Error::LengthMismatch {
                    left: len,
                    right: c.len(),
                });
            }
        }
        Ok(Self { components })
    }

    /// Builds a series from raw column vectors, validating each one.
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let components = columns
            .into_iter()
            .map(UnivariateSeries::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Number of timestamps `T`.
    pub fn len(&self) -> usize {
        self.components[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn component(&self, index: usize) -> &UnivariateSeries {
        &self.components[index]
    }

    pub fn components(&self) -> &[UnivariateSeries] {
        &self.components
    }
}

/// A series whose values all lie in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RescaledSeries(Vec<f64>);

impl RescaledSeries {
    /// Wraps values that are already on the unit scale.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values
            .iter()
            .position(|v| !v.is_finite() || *v < 0.0 || *v > 1.0)
        {
            return Err(Error::OutOfUnitRange { index });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Min-Max image of a series: `(y - min) / (max - min)`.
///
/// A constant series maps to all zeros.
pub fn min_max_rescale(series: &UnivariateSeries) -> RescaledSeries {
    RescaledSeries(min_max(series.values()))
}

pub(crate) fn min_max(values: &[f64]) -> Vec<f64> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let range = hi - lo;
    if !(range > 0.0) {
        return vec![0.0; values.len()];
    }
    values
        .iter()
        .map(|&v| ((v - lo) / range).clamp(0.0, 1.0))
        .collect()
}

/// Pointwise maximum of two rescaled series.
pub fn max_series(a: &RescaledSeries, b: &RescaledSeries) -> Result<RescaledSeries> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(RescaledSeries(
        a.0.iter().zip(&b.0).map(|(x, y)| x.max(*y)).collect(),
    ))
}
