//! Positive definiteness of even-order homogeneous forms.
//!
//! The form `f(x) = sum A_{i1...im} x_{i1}...x_{im}` only sees the symmetric
//! part of `A`, so the coefficient tensor is symmetrized first. For an even
//! order symmetric Z-tensor, `f` is positive definite exactly when the tensor
//! is an M-tensor, which [`classify_m_tensor`] decides.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::classify::{classify_m_tensor, MTensorStatus, MTensorVerdict};
use crate::error::{Error, Result};
use crate::spectral::IterationSettings;
use crate::tensor::DenseTensor;

/// Sampling budget used for witnesses when the caller does not set one.
pub const DEFAULT_WITNESS_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PdStatus {
    PositiveDefinite,
    NotPositiveDefinite,
    Inapplicable,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PdReason {
    OddOrder,
    NotZTensor,
    Numerical,
}

impl PdReason {
    pub fn code(&self) -> &'static str {
        match self {
            PdReason::OddOrder => "odd-order",
            PdReason::NotZTensor => "not-z-tensor",
            PdReason::Numerical => "numerical",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdVerdict {
    pub status: PdStatus,
    pub tau: Option<f64>,
    /// Nonzero `x` with `f(x) <= 0`, when one was found.
    pub witness: Option<Vec<f64>>,
    pub reason: Option<PdReason>,
    /// The input was not symmetric and was averaged before testing.
    pub symmetrized: bool,
    pub classification: Option<MTensorVerdict>,
}

pub fn test_positive_definite(t: &DenseTensor, settings: &IterationSettings) -> Result<PdVerdict> {
    test_positive_definite_with(t, settings, DEFAULT_WITNESS_SAMPLES)
}

/// As [`test_positive_definite`], with an explicit sampling budget for
/// witness search. Sampling uses `settings.seed`.
pub fn test_positive_definite_with(t: &DenseTensor, settings: &IterationSettings, samples: usize) -> Result<PdVerdict> {
    settings.validate()?;
    let symmetrized = !t.is_symmetric();
    let s = t.symmetrize();
    let mut verdict = PdVerdict {
        status: PdStatus::Indeterminate,
        tau: None,
        witness: None,
        reason: None,
        symmetrized,
        classification: None,
    };

    if s.order() % 2 == 1 {
        verdict.status = PdStatus::NotPositiveDefinite;
        verdict.reason = Some(PdReason::OddOrder);
        verdict.witness = Some(odd_order_witness(&s, settings.seed)?);
        return Ok(verdict);
    }
    if !s.is_z_tensor() {
        verdict.status = PdStatus::Inapplicable;
        verdict.reason = Some(PdReason::NotZTensor);
        return Ok(verdict);
    }

    let class = classify_m_tensor(&s, settings)?;
    verdict.tau = Some(class.tau);
    match class.status {
        MTensorStatus::MTensor => verdict.status = PdStatus::PositiveDefinite,
        MTensorStatus::NotMTensor => {
            verdict.status = PdStatus::NotPositiveDefinite;
            // f(x) = tau * sum x_i^m at an exact eigenpair, so the Perron
            // vector is the first candidate
            let x = &class.eigenvector;
            verdict.witness = if s.form(x)? <= 0.0 && x.iter().any(|&v| v != 0.0) {
                Some(x.clone())
            } else if samples > 0 {
                falsify_by_sampling(&s, samples, settings.seed)?
            } else {
                None
            };
        }
        MTensorStatus::Indeterminate => {
            verdict.reason = Some(PdReason::Numerical);
        }
    }
    verdict.classification = Some(class);
    Ok(verdict)
}

/// For odd `m`, `f(-x) = -f(x)`, so any `x` with `f(x) != 0` yields a witness.
fn odd_order_witness(s: &DenseTensor, seed: u64) -> Result<Vec<f64>> {
    let n = s.dim();
    let mut probes = vec![vec![1.0; n]];
    probes.extend((0..n).map(|i| basis(n, i)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    probes.extend((0..64).map(|_| normal_vector(n, &mut rng)));
    for x in probes {
        let f = s.form(&x)?;
        if f > 0.0 {
            return Ok(x.into_iter().map(|v| -v).collect());
        }
        if f < 0.0 {
            return Ok(x);
        }
    }
    Ok(basis(n, 0))
}

fn basis(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

fn normal_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// Draws up to `trials` uniform points on the unit sphere and returns the
/// first with `f(x) <= 0`.
pub fn falsify_by_sampling(t: &DenseTensor, trials: usize, seed: u64) -> Result<Option<Vec<f64>>> {
    if trials == 0 {
        return Err(Error::InvalidSettings("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut x = normal_vector(t.dim(), &mut rng);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        x.iter_mut().for_each(|v| *v /= norm);
        if t.form(&x)? <= 0.0 {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
