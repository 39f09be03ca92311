//! Seed expansion and Gaussian sampling.
//!
//! Every random stream in the crate is a [`ChaCha20Rng`] seeded through
//! [`SeedableRng::seed_from_u64`]. Child seeds are derived from a master seed
//! with [`derive_seed`], which folds a path of stream identifiers through the
//! SplitMix64 finalizer:
//!
//! ```text
//! s_0 = master
//! s_{i+1} = splitmix64(s_i ^ splitmix64(id_i + 0x9E3779B97F4A7C15))
//! ```
//!
//! so `derive_seed(7, &[2, 13])` is the seed of instance 13 of stream 2.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed from `master` along `path`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(master, |s, &id| {
        splitmix64(s ^ splitmix64(id.wrapping_add(GOLDEN)))
    })
}

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Standard normal draws by the Box–Muller transform.
///
/// Each pair of uniforms `u1 ∈ (0, 1]`, `u2 ∈ [0, 1)` yields
/// `sqrt(-2 ln u1) * cos(2π u2)` and then `sqrt(-2 ln u1) * sin(2π u2)`.
#[derive(Clone, Debug)]
pub struct Gaussian {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl Gaussian {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: rng_from_seed(seed),
            spare: None,
        }
    }

    pub fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2 = self.rng.random::<f64>();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}
