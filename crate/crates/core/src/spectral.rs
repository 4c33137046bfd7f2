//! Largest eigenvalue of nonnegative tensors by shifted power iteration.
//!
//! For a nonnegative tensor `A` the iteration runs on
//! `B = A + sigma I + epsilon E`, where `E` is the all-ones tensor. Each step
//! evaluates `y = B x^{m-1}` and brackets the spectral radius of `B` between
//! the smallest and largest quotient `y_i / x_i^{m-1}` (Collatz–Wielandt),
//! then moves to `x <- y^{[1/(m-1)]}` normalized. The shift keeps the
//! iteration from oscillating; it is subtracted from the result.

use crate::error::{Error, Result};
use crate::tensor::{hadamard_power, DenseTensor};

/// Norm used to rescale iterates between steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IterateNorm {
    /// Positive iterates sum to one.
    #[default]
    L1,
    /// Largest component equals one.
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationSettings {
    /// Relative bracket width at which the iteration stops.
    pub tol: f64,
    pub max_iter: usize,
    /// Diagonal shift added before iterating.
    pub sigma: f64,
    /// Magnitude of the all-entries perturbation.
    pub epsilon: f64,
    pub norm: IterateNorm,
    /// Retry once with a tiny positive epsilon when an unperturbed run fails.
    pub epsilon_fallback: bool,
    /// Seed for any randomized helpers built on top of these settings.
    pub seed: u64,
}

impl Default for IterationSettings {
    fn default() -> Self {
        IterationSettings {
            tol: 1e-10,
            max_iter: 10_000,
            sigma: 1.0,
            epsilon: 0.0,
            norm: IterateNorm::L1,
            epsilon_fallback: true,
            seed: 0,
        }
    }
}

impl IterationSettings {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSettings(msg.to_string()));
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol must be positive and finite");
        }
        if self.max_iter == 0 {
            return bad("max_iter must be at least 1");
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return bad("sigma must be positive and finite");
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad("epsilon must be nonnegative and finite");
        }
        Ok(())
    }

    pub fn with_sigma(self, sigma: f64) -> Self {
        IterationSettings { sigma, ..self }
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        IterationSettings { epsilon, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }

    fn shifted(&self, by: f64) -> Bracket {
        Bracket {
            lower: self.lower + by,
            upper: self.upper + by,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralOutcome {
    /// Estimate of the largest eigenvalue (spectral radius) of `A + epsilon_used E`.
    pub lambda: f64,
    /// Final iterate, normalized and nonnegative.
    pub eigenvector: Vec<f64>,
    pub iterations: usize,
    /// Last bracket, in the eigenvalue scale of the input tensor.
    pub final_bracket: Bracket,
    /// Last bracket for the shifted tensor `B`; contains `lambda + sigma`.
    pub shifted_bracket: Bracket,
    /// `residual(A, lambda, eigenvector)` on the unperturbed input.
    pub residual: f64,
    pub converged: bool,
    pub epsilon_used: f64,
    /// Certified bound on `lambda - rho(A)` caused by the perturbation;
    /// zero when `epsilon_used` is zero.
    pub epsilon_bias: f64,
    pub sigma: f64,
}

/// Global bounds on the real eigenvalues of any tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueBounds {
    /// `min_i (A_{i...i} - C_i)`.
    pub lower: f64,
    /// `max_i (A_{i...i} + C_i)`.
    pub upper: f64,
    /// `C_i`, the absolute off-diagonal sums of each slice.
    pub offdiag_row_sums: Vec<f64>,
}

/// Every real eigenvalue of `t` lies in the returned `[lower, upper]`.
pub fn real_eigenvalue_bounds(t: &DenseTensor) -> EigenvalueBounds {
    let sums = t.offdiag_abs_row_sums();
    let diag = t.diagonal();
    let lower = diag.iter().zip(&sums).map(|(d, c)| d - c).fold(f64::INFINITY, f64::min);
    let upper = diag
        .iter()
        .zip(&sums)
        .map(|(d, c)| d + c)
        .fold(f64::NEG_INFINITY, f64::max);
    EigenvalueBounds {
        lower,
        upper,
        offdiag_row_sums: sums,
    }
}

/// Collatz–Wielandt bounds `min/max_i (A x^{m-1})_i / x_i^{m-1}` for a
/// nonnegative tensor and a strictly positive vector.
pub fn cw_bracket(t: &DenseTensor, x: &[f64]) -> Result<Bracket> {
    if !t.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| **v <= 0.0) {
        return Err(Error::NotPositive { index, value });
    }
    let y = t.apply(x)?;
    let p = hadamard_power(x, (t.order() - 1) as f64)?;
    Ok(quotient_bracket(&y, &p, x).expect("x is strictly positive"))
}

/// `||A x^{m-1} - lambda x^{[m-1]}||_inf / max(1, ||x||_inf)^{m-1}`.
pub fn residual(t: &DenseTensor, lambda: f64, x: &[f64]) -> Result<f64> {
    let y = t.apply(x)?;
    let xmax = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if xmax == 0.0 {
        return Err(Error::ZeroVector);
    }
    let p = hadamard_power(x, (t.order() - 1) as f64)?;
    let defect = y.iter().zip(&p).fold(0.0f64, |m, (a, b)| m.max((a - lambda * b).abs()));
    Ok(defect / xmax.max(1.0).powi(t.order() as i32 - 1))
}

/// Min/max of `y_i / p_i` over the components where `x_i > 0`. Components
/// whose power `p_i = x_i^{m-1}` underflows to zero are skipped as well.
fn quotient_bracket(y: &[f64], p: &[f64], x: &[f64]) -> Option<Bracket> {
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for ((yi, pi), xi) in y.iter().zip(p).zip(x) {
        if *xi > 0.0 && *pi > 0.0 {
            let q = yi / pi;
            lower = lower.min(q);
            upper = upper.max(q);
        }
    }
    (lower <= upper).then_some(Bracket { lower, upper })
}

/// Largest eigenvalue and Perron vector of a nonnegative tensor.
///
/// With `epsilon = 0` and `epsilon_fallback` set, a run that exhausts
/// `max_iter` or hits a vanishing iterate is retried once with
/// `epsilon = 1e-12 * max(1, max |a|)`.
///
/// When a perturbation was used, `lambda` estimates the radius of
/// `A + epsilon E` and `epsilon_bias` bounds the overestimate. The bound is
/// the Collatz–Wielandt lower bound for `A` at the final iterate `z`:
/// `rho(A) >= rho(A + epsilon E) - epsilon * (sum z / min z)^{m-1}`.
/// It equals `epsilon * n^{m-1}` at a uniform vector and grows as the
/// Perron vector becomes skewed.
pub fn largest_eigenvalue(t: &DenseTensor, settings: &IterationSettings) -> Result<SpectralOutcome> {
    settings.validate()?;
    if !t.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    let first = power_iteration(t, settings, settings.epsilon);
    let retry = settings.epsilon_fallback
        && settings.epsilon == 0.0
        && match &first {
            Ok(out) => !out.converged,
            Err(Error::ZeroIterate) => true,
            Err(_) => false,
        };
    if retry {
        let eps = 1e-12 * t.max_abs().max(1.0);
        return power_iteration(t, settings, eps);
    }
    first
}

fn power_iteration(t: &DenseTensor, settings: &IterationSettings, epsilon: f64) -> Result<SpectralOutcome> {
    let n = t.dim();
    let degree = (t.order() - 1) as f64;
    let sigma = settings.sigma;
    let mut x = vec![1.0 / n as f64; n];
    let mut bracket = Bracket { lower: 0.0, upper: 0.0 };
    let mut converged = false;
    let mut iterations = 0;

    for k in 1..=settings.max_iter {
        iterations = k;
        let p = hadamard_power(&x, degree)?;
        let mut y = t.apply(&x)?;
        // E x^{m-1} has every component equal to (sum x)^{m-1}
        let spread = if epsilon > 0.0 {
            epsilon * x.iter().sum::<f64>().powf(degree)
        } else {
            0.0
        };
        for (yi, pi) in y.iter_mut().zip(&p) {
            *yi += sigma * pi + spread;
        }
        bracket = quotient_bracket(&y, &p, &x).ok_or(Error::ZeroIterate)?;
        let estimate = bracket.midpoint() - sigma;
        if bracket.upper == bracket.lower || bracket.width() <= settings.tol * (1.0 + estimate.abs()) {
            converged = true;
            break;
        }
        if k == settings.max_iter {
            break;
        }
        let mut next = hadamard_power(&y, 1.0 / degree)?;
        let scale = match settings.norm {
            IterateNorm::L1 => next.iter().sum::<f64>(),
            IterateNorm::Max => next.iter().fold(0.0f64, |m, v| m.max(*v)),
        };
        if scale.is_nan() || scale <= 0.0 {
            return Err(Error::ZeroIterate);
        }
        next.iter_mut().for_each(|v| *v /= scale);
        x = next;
    }

    let lambda = bracket.midpoint() - sigma;
    let residual = residual(t, lambda, &x)?;
    let epsilon_bias = if epsilon > 0.0 {
        let min = x.iter().cloned().fold(f64::INFINITY, f64::min);
        epsilon * (x.iter().sum::<f64>() / min).powf(degree)
    } else {
        0.0
    };
    Ok(SpectralOutcome {
        lambda,
        eigenvector: x,
        iterations,
        final_bracket: bracket.shifted(-sigma),
        shifted_bracket: bracket,
        residual,
        converged,
        epsilon_used: epsilon,
        epsilon_bias,
        sigma,
    })
}
