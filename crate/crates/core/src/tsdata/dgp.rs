//! The six bivariate data-generating processes: independent and correlated
//! white noise, weak and strong VAR(1), weak and strong VGARCH(1,1).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{MultivariateTimeSeries, UnivariateSeries};
use crate::error::{Error, Result};
use crate::seed::Gaussian;

pub const DEFAULT_BURN_IN: usize = 500;

type Vec2 = [f64; 2];
type Mat2 = [[f64; 2]; 2];

const IDENTITY: Mat2 = [[1.0, 0.0], [0.0, 1.0]];
const WEAK_COV: Mat2 = [[1.0, 0.10], [0.10, 1.5]];
const STRONG_COV: Mat2 = [[1.0, 0.86], [0.86, 1.5]];

const GARCH_OMEGA: Vec2 = [0.05, 0.02];
const GARCH_ALPHA: Mat2 = [[0.10, 0.0], [0.0, 0.05]];
const GARCH_BETA: Mat2 = [[0.85, 0.0], [0.0, 0.88]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DgpKind {
    #[serde(rename = "iBWN")]
    IBwn,
    #[serde(rename = "cBWN")]
    CBwn,
    #[serde(rename = "wVAR")]
    WVar,
    #[serde(rename = "sVAR")]
    SVar,
    #[serde(rename = "wGARCH")]
    WGarch,
    #[serde(rename = "sGARCH")]
    SGarch,
}

/// Model equations and parameters behind a [`DgpKind`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// `Y_t = ε_t`, `ε_t ~ N(0, cov)`.
    WhiteNoise { cov: Mat2 },
    /// `Y_t = intercept + coef · Y_{t-1} + ε_t`.
    Var { intercept: Vec2, coef: Mat2, cov: Mat2 },
    /// `σ_t = ω + α Y²_{t-1} + β σ_{t-1}`, `Y_{i,t} = sqrt(σ_{ii,t}) ε_{i,t}`.
    Garch {
        omega: Vec2,
        alpha: Mat2,
        beta: Mat2,
        cov: Mat2,
    },
}

impl DgpKind {
    pub const ALL: [DgpKind; 6] = [
        DgpKind::IBwn,
        DgpKind::CBwn,
        DgpKind::WVar,
        DgpKind::SVar,
        DgpKind::WGarch,
        DgpKind::SGarch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DgpKind::IBwn => "iBWN",
            DgpKind::CBwn => "cBWN",
            DgpKind::WVar => "wVAR",
            DgpKind::SVar => "sVAR",
            DgpKind::WGarch => "wGARCH",
            DgpKind::SGarch => "sGARCH",
        }
    }

    pub fn model(self) -> Model {
        match self {
            DgpKind::IBwn => Model::WhiteNoise { cov: IDENTITY },
            DgpKind::CBwn => Model::WhiteNoise { cov: STRONG_COV },
            DgpKind::WVar => Model::Var {
                intercept: [2.5, 0.5],
                coef: [[0.20, 0.10], [0.02, 0.10]],
                cov: WEAK_COV,
            },
            DgpKind::SVar => Model::Var {
                intercept: [0.0, 0.0],
                coef: [[0.70, 0.02], [0.30, 0.80]],
                cov: STRONG_COV,
            },
            DgpKind::WGarch => Model::Garch {
                omega: GARCH_OMEGA,
                alpha: GARCH_ALPHA,
                beta: GARCH_BETA,
                cov: WEAK_COV,
            },
            DgpKind::SGarch => Model::Garch {
                omega: GARCH_OMEGA,
                alpha: GARCH_ALPHA,
                beta: GARCH_BETA,
                cov: STRONG_COV,
            },
        }
    }
}

impl fmt::Display for DgpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DgpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.to_ascii_lowercase().as_str() {
            "ibwn" => DgpKind::IBwn,
            "cbwn" => DgpKind::CBwn,
            "wvar" => DgpKind::WVar,
            "svar" => DgpKind::SVar,
            "wgarch" | "wvgarch" => DgpKind::WGarch,
            "sgarch" | "svgarch" => DgpKind::SGarch,
            _ => return Err(Error::UnknownDgp(s.to_string())),
        };
        Ok(kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgpSpec {
    pub kind: DgpKind,
    pub length: usize,
    pub seed: u64,
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
}

fn default_burn_in() -> usize {
    DEFAULT_BURN_IN
}

impl DgpSpec {
    pub fn new(kind: DgpKind, length: usize, seed: u64) -> Self {
        Self {
            kind,
            length,
            seed,
            burn_in: DEFAULT_BURN_IN,
        }
    }
}

fn cholesky(cov: &Mat2) -> Mat2 {
    let l11 = cov[0][0].sqrt();
    let l21 = cov[1][0] / l11;
    let l22 = (cov[1][1] - l21 * l21).sqrt();
    [[l11, 0.0], [l21, l22]]
}

fn mat_vec(m: &Mat2, v: &Vec2) -> Vec2 {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

struct Noise {
    gaussian: Gaussian,
    factor: Mat2,
}

impl Noise {
    fn new(seed: u64, cov: &Mat2) -> Self {
        Self {
            gaussian: Gaussian::new(seed),
            factor: cholesky(cov),
        }
    }

    fn draw(&mut self) -> Vec2 {
        let z = [self.gaussian.sample(), self.gaussian.sample()];
        mat_vec(&self.factor, &z)
    }
}

/// One step of the conditional-variance recursion.
fn garch_variance(omega: &Vec2, alpha: &Mat2, beta: &Mat2, sigma: &Vec2, y: &Vec2) -> Vec2 {
    let shock = mat_vec(alpha, &[y[0] * y[0], y[1] * y[1]]);
    let persist = mat_vec(beta, sigma);
    [omega[0] + shock[0] + persist[0], omega[1] + shock[1] + persist[1]]
}

/// Simulates a bivariate series of `spec.length` observations after
/// discarding `spec.burn_in` warm-up samples.
pub fn generate(spec: &DgpSpec) -> Result<MultivariateTimeSeries> {
    if spec.length < 2 {
        return Err(Error::SeriesTooShort(spec.length));
    }
    let total = spec.burn_in + spec.length;
    let mut out = [
        Vec::with_capacity(spec.length),
        Vec::with_capacity(spec.length),
    ];
    let mut push = |t: usize, y: Vec2| {
        if t >= spec.burn_in {
            out[0].push(y[0]);
            out[1].push(y[1]);
        }
    };

    match spec.kind.model() {
        Model::WhiteNoise { cov } => {
            let mut noise = Noise::new(spec.seed, &cov);
            for t in 0..total {
                push(t, noise.draw());
            }
        }
        Model::Var {
            intercept,
            coef,
            cov,
        } => {
            let mut noise = Noise::new(spec.seed, &cov);
            let mut y = var_mean(&intercept, &coef);
            for t in 0..total {
                let lag = mat_vec(&coef, &y);
                let e = noise.draw();
                y = [intercept[0] + lag[0] + e[0], intercept[1] + lag[1] + e[1]];
                push(t, y);
            }
        }
        Model::Garch {
            omega,
            alpha,
            beta,
            cov,
        } => {
            let mut noise = Noise::new(spec.seed, &cov);
            let mut sigma = [
                omega[0] / (1.0 - alpha[0][0] - beta[0][0]),
                omega[1] / (1.0 - alpha[1][1] - beta[1][1]),
            ];
            let mut y = [0.0, 0.0];
            for t in 0..total {
                if t > 0 {
                    sigma = garch_variance(&omega, &alpha, &beta, &sigma, &y);
                }
                let e = noise.draw();
                y = [sigma[0].sqrt() * e[0], sigma[1].sqrt() * e[1]];
                push(t, y);
            }
        }
    }

    let [a, b] = out;
    MultivariateTimeSeries::new(vec![UnivariateSeries::new(a)?, UnivariateSeries::new(b)?])
}

/// Unconditional mean `(I - coef)^{-1} intercept` of a VAR(1).
fn var_mean(intercept: &Vec2, coef: &Mat2) -> Vec2 {
    let a = 1.0 - coef[0][0];
    let b = -coef[0][1];
    let c = -coef[1][0];
    let d = 1.0 - coef[1][1];
    let det = a * d - b * c;
    [
        (d * intercept[0] - b * intercept[1]) / det,
        (-c * intercept[0] + a * intercept[1]) / det,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn garch_variance_stays_positive(
            s0 in 1e-12f64..1e3, s1 in 1e-12f64..1e3,
            y0 in -1e3f64..1e3, y1 in -1e3f64..1e3,
            garch in prop::sample::select(vec![DgpKind::WGarch, DgpKind::SGarch]),
        ) {
            let Model::Garch { omega, alpha, beta, .. } = garch.model() else { unreachable!() };
            let next = garch_variance(&omega, &alpha, &beta, &[s0, s1], &[y0, y1]);
            prop_assert!(next[0] > 0.0 && next[1] > 0.0);
            prop_assert!(next[0] >= omega[0] && next[1] >= omega[1]);
        }
    }

    fn corr(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let ma = a.iter().sum::<f64>() / n;
        let mb = b.iter().sum::<f64>() / n;
        let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
        let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
        let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
        cov / (va * vb).sqrt()
    }

    fn cov(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let ma = a.iter().sum::<f64>() / n;
        let mb = b.iter().sum::<f64>() / n;
        a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / (n - 1.0)
    }

    fn eigen_moduli(m: &Mat2) -> [f64; 2] {
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let disc = tr * tr / 4.0 - det;
        if disc >= 0.0 {
            [(tr / 2.0 + disc.sqrt()).abs(), (tr / 2.0 - disc.sqrt()).abs()]
        } else {
            [det.sqrt(), det.sqrt()]
        }
    }

    fn sample(kind: DgpKind, length: usize, seed: u64) -> MultivariateTimeSeries {
        generate(&DgpSpec::new(kind, length, seed)).unwrap()
    }

    #[test]
    fn parse_names() {
        for kind in DgpKind::ALL {
            assert_eq!(kind.name().parse::<DgpKind>().unwrap(), kind);
        }
        assert!("bogus".parse::<DgpKind>().is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        for kind in DgpKind::ALL {
            assert_eq!(sample(kind, 300, 11), sample(kind, 300, 11));
            assert_ne!(sample(kind, 300, 11), sample(kind, 300, 12));
        }
    }

    #[test]
    fn burn_in_is_discarded() {
        let mut spec = DgpSpec::new(DgpKind::IBwn, 10, 3);
        spec.burn_in = 0;
        let full = generate(&DgpSpec { length: 20, ..spec }).unwrap();
        spec.burn_in = 10;
        let tail = generate(&spec).unwrap();
        assert_eq!(tail.component(0).values(), &full.component(0).values()[10..]);
    }

    #[test]
    fn white_noise_cross_correlation() {
        let target = 0.86 / 1.5f64.sqrt();
        for seed in 0..30 {
            let i = sample(DgpKind::IBwn, 10_000, seed);
            let r = corr(i.component(0).values(), i.component(1).values());
            assert!(r.abs() < 0.05, "iBWN seed {seed}: {r}");
            let c = sample(DgpKind::CBwn, 10_000, seed);
            let r = corr(c.component(0).values(), c.component(1).values());
            assert!((r - target).abs() < 0.05, "cBWN seed {seed}: {r}");
        }
    }

    #[test]
    fn correlated_noise_reproduces_covariance() {
        let s = sample(DgpKind::CBwn, 100_000, 5);
        let (a, b) = (s.component(0).values(), s.component(1).values());
        assert!((cov(a, a) - 1.0).abs() < 0.05);
        assert!((cov(a, b) - 0.86).abs() < 0.05);
        assert!((cov(b, b) - 1.5).abs() < 0.05);
    }

    #[test]
    fn strong_var_is_persistent() {
        let s = sample(DgpKind::SVar, 10_000, 9);
        let y = s.component(0).values();
        let acf1 = corr(&y[..y.len() - 1], &y[1..]);
        assert!(acf1 > 0.5, "lag-1 acf {acf1}");
    }

    #[test]
    fn var_matrices_are_stationary() {
        for kind in [DgpKind::WVar, DgpKind::SVar] {
            let Model::Var { coef, .. } = kind.model() else {
                unreachable!()
            };
            for m in eigen_moduli(&coef) {
                assert!(m < 1.0, "{kind}: {m}");
            }
        }
    }

    #[test]
    fn var_starts_at_unconditional_mean() {
        let m = var_mean(&[2.5, 0.5], &[[0.20, 0.10], [0.02, 0.10]]);
        // (I - Φ) m = φ
        assert!(((0.8 * m[0] - 0.1 * m[1]) - 2.5).abs() < 1e-12);
        assert!(((-0.02 * m[0] + 0.9 * m[1]) - 0.5).abs() < 1e-12);
        let s = sample(DgpKind::WVar, 50_000, 1);
        let mean0 = s.component(0).values().iter().sum::<f64>() / 50_000.0;
        assert!((mean0 - m[0]).abs() < 0.05);
    }

    #[test]
    fn garch_is_heavy_tailed_and_finite() {
        let s = sample(DgpKind::WGarch, 20_000, 4);
        for c in s.components() {
            let y = c.values();
            let n = y.len() as f64;
            let m2 = y.iter().map(|v| v * v).sum::<f64>() / n;
            let m4 = y.iter().map(|v| v.powi(4)).sum::<f64>() / n;
            // volatility clustering gives excess kurtosis over the Gaussian 3
            assert!(m4 / (m2 * m2) > 3.0);
        }
    }

    #[test]
    fn cholesky_roundtrip() {
        let l = cholesky(&STRONG_COV);
        let back = [
            [l[0][0] * l[0][0], l[0][0] * l[1][0]],
            [l[1][0] * l[0][0], l[1][0] * l[1][0] + l[1][1] * l[1][1]],
        ];
        for i in 0..2 {
            for j in 0..2 {
                assert!((back[i][j] - STRONG_COV[i][j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn short_length_rejected() {
        assert!(generate(&DgpSpec::new(DgpKind::IBwn, 1, 0)).is_err());
    }
}
