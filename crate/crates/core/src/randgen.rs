//! Seeded random Z-tensors for the classification benchmark.
//!
//! Entries of a noise tensor `D` are drawn i.i.d. uniform on the open
//! interval `(0, 1)`; diagonal entries become `a_d + D_{i...i}` and the rest
//! `-D_{i1...im}`. The generator is ChaCha8 seeded from a single `u64`, and
//! entries are drawn in row-major order, so a spec reproduces the same tensor
//! bit for bit within a build.

use rand::distr::{Distribution, Open01};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tensor::DenseTensor;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub order: usize,
    pub dim: usize,
    /// Diagonal offset; must be positive.
    pub a_d: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(order: usize, dim: usize, a_d: f64, seed: u64) -> Result<Self> {
        let spec = GenSpec { order, dim, a_d, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a_d > 0.0 && self.a_d.is_finite()) {
            return Err(Error::InvalidSettings("a_d must be positive and finite".into()));
        }
        if self.order < 2 {
            return Err(Error::OrderTooSmall(self.order));
        }
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(())
    }

    /// The spec for trial `k` of a batch: same shape, seed `seed + k`.
    pub fn trial(&self, k: u64) -> GenSpec {
        GenSpec {
            seed: self.seed.wrapping_add(k),
            ..*self
        }
    }
}

/// Generates one random Z-tensor with diagonal in `(a_d, a_d + 1)` and
/// off-diagonal entries in `(-1, 0)`.
pub fn procedure1(spec: &GenSpec) -> Result<DenseTensor> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let a_d = spec.a_d;
    DenseTensor::from_fn(spec.order, spec.dim, |idx| {
        let d: f64 = Open01.sample(&mut rng);
        if idx.windows(2).all(|w| w[0] == w[1]) {
            a_d + d
        } else {
            -d
        }
    })
}
