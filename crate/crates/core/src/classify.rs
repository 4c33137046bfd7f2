//! M-tensor classification of Z-tensors.
//!
//! A Z-tensor `A` (nonpositive off-diagonal entries) is an M-tensor exactly
//! when its smallest real eigenvalue `tau(A)` is positive. With `U` the upper
//! bound on real eigenvalues, `C = U I - A` is nonnegative and
//! `tau(A) = U - rho(C)`, so one Perron iteration on `C` decides the class.

use crate::error::{Error, Result};
use crate::spectral::{largest_eigenvalue, real_eigenvalue_bounds, residual, IterationSettings, SpectralOutcome};
use crate::tensor::{decode, DenseTensor};

/// Largest dimension accepted by [`is_reducible_exact`] by default.
pub const EXACT_REDUCIBILITY_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MTensorStatus {
    MTensor,
    NotMTensor,
    Indeterminate,
}

impl MTensorStatus {
    fn from_margin(tau: f64, guard_band: f64) -> Self {
        if tau > guard_band {
            MTensorStatus::MTensor
        } else if tau < -guard_band {
            MTensorStatus::NotMTensor
        } else {
            MTensorStatus::Indeterminate
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MTensorVerdict {
    pub status: MTensorStatus,
    /// Smallest real eigenvalue estimate, `U - rho(C)`.
    pub tau: f64,
    /// Perron vector of `C`; also an eigenvector of `A` for `tau`.
    pub eigenvector: Vec<f64>,
    /// Half-width of the band around zero reported as indeterminate.
    pub guard_band: f64,
    /// The diagonal shift used to build `C = U I - A`.
    pub upper_bound: f64,
    pub lower_bound: f64,
    /// `residual(A, tau, eigenvector)`.
    pub residual: f64,
    /// Diagnostics of the inner iteration on `C`.
    pub spectral: SpectralOutcome,
}

/// Computes `tau(A)` through `C = (U + extra_shift) I - A`.
///
/// `extra_shift >= 0` only moves the spectrum of `C`; the returned `tau`
/// is the same up to iteration tolerance.
pub fn smallest_real_eigenvalue_shifted(
    t: &DenseTensor,
    settings: &IterationSettings,
    extra_shift: f64,
) -> Result<(f64, SpectralOutcome)> {
    if !t.is_z_tensor() {
        return Err(Error::NotZTensor);
    }
    if !(extra_shift >= 0.0 && extra_shift.is_finite()) {
        return Err(Error::InvalidSettings("extra shift must be nonnegative".into()));
    }
    let shift = real_eigenvalue_bounds(t).upper + extra_shift;
    let c = t.shift_combine(-1.0, -shift);
    let out = largest_eigenvalue(&c, settings)?;
    Ok((shift - out.lambda, out))
}

/// `tau(A)` and its nonnegative eigenvector for a Z-tensor.
pub fn smallest_real_eigenvalue(t: &DenseTensor, settings: &IterationSettings) -> Result<(f64, Vec<f64>)> {
    let (tau, out) = smallest_real_eigenvalue_shifted(t, settings, 0.0)?;
    Ok((tau, out.eigenvector))
}

/// Decides whether a Z-tensor is an M-tensor.
///
/// Values of `tau` within `max(10 tol (1 + |U|), epsilon_bias)` of zero are
/// reported as indeterminate, as is any run whose inner iteration did not
/// converge.
pub fn classify_m_tensor(t: &DenseTensor, settings: &IterationSettings) -> Result<MTensorVerdict> {
    let bounds = real_eigenvalue_bounds(t);
    let (tau, spectral) = smallest_real_eigenvalue_shifted(t, settings, 0.0)?;
    let u = bounds.upper;
    let guard_band = (10.0 * settings.tol * (1.0 + u.abs())).max(spectral.epsilon_bias);
    let status = if spectral.converged {
        MTensorStatus::from_margin(tau, guard_band)
    } else {
        MTensorStatus::Indeterminate
    };
    Ok(MTensorVerdict {
        status,
        tau,
        eigenvector: spectral.eigenvector.clone(),
        guard_band,
        upper_bound: u,
        lower_bound: bounds.lower,
        residual: residual(t, tau, &spectral.eigenvector)?,
        spectral,
    })
}

/// `A = s I - B` with `B` nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub s: f64,
    pub b: DenseTensor,
}

impl Decomposition {
    /// Perron iteration on `B`; the tensor is an M-tensor iff `s > rho(B)`.
    /// Returns `s - rho(B)` along with the diagnostics.
    pub fn margin(&self, settings: &IterationSettings) -> Result<(f64, SpectralOutcome)> {
        let out = largest_eigenvalue(&self.b, settings)?;
        Ok((self.s - out.lambda, out))
    }
}

/// Splits a Z-tensor as `s I - B`; requires `s >= max_i A_{i...i}`.
pub fn decompose(t: &DenseTensor, s: f64) -> Result<Decomposition> {
    if !t.is_z_tensor() {
        return Err(Error::NotZTensor);
    }
    let max_diagonal = t.diagonal().into_iter().fold(f64::NEG_INFINITY, f64::max);
    if !s.is_finite() || s < max_diagonal {
        return Err(Error::ScalarBelowDiagonal {
            scalar: s,
            max_diagonal,
        });
    }
    Ok(Decomposition {
        s,
        b: t.shift_combine(-1.0, -s),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceReport {
    /// `C_i <= |A_{i...i}|` for every `i`.
    pub diagonally_dominant: bool,
    /// `C_i < |A_{i...i}|` for every `i`.
    pub strictly_dominant: bool,
    pub strict_row_exists: bool,
    /// 1-based rows with strict inequality.
    pub rows_strict: Vec<usize>,
    pub diagonal_nonnegative: bool,
}

pub fn check_diagonal_dominance(t: &DenseTensor) -> DominanceReport {
    let sums = t.offdiag_abs_row_sums();
    let diag = t.diagonal();
    let rows_strict: Vec<usize> = diag
        .iter()
        .zip(&sums)
        .enumerate()
        .filter(|(_, (d, c))| **c < d.abs())
        .map(|(i, _)| i + 1)
        .collect();
    DominanceReport {
        diagonally_dominant: diag.iter().zip(&sums).all(|(d, c)| *c <= d.abs()),
        strictly_dominant: rows_strict.len() == t.dim(),
        strict_row_exists: !rows_strict.is_empty(),
        rows_strict,
        diagonal_nonnegative: diag.iter().all(|&d| d >= 0.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sufficiency {
    ProvenMTensor,
    NoConclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SufficientTest {
    pub outcome: Sufficiency,
    /// The digraph connectivity check stood in for exact irreducibility.
    pub proxy_used: bool,
}

/// Diagonal-dominance certificate: a Z-tensor with nonnegative diagonal that
/// is strictly dominant, or irreducible and dominant with at least one strict
/// row, is an M-tensor.
///
/// Irreducibility is checked exactly up to [`EXACT_REDUCIBILITY_LIMIT`] and
/// by strong connectivity of the index digraph above it.
pub fn sufficient_m_test(t: &DenseTensor) -> SufficientTest {
    let no = |proxy_used| SufficientTest {
        outcome: Sufficiency::NoConclusion,
        proxy_used,
    };
    let yes = |proxy_used| SufficientTest {
        outcome: Sufficiency::ProvenMTensor,
        proxy_used,
    };
    if !t.is_z_tensor() {
        return no(false);
    }
    let dom = check_diagonal_dominance(t);
    if !dom.diagonal_nonnegative {
        return no(false);
    }
    if dom.strictly_dominant {
        return yes(false);
    }
    if !(dom.diagonally_dominant && dom.strict_row_exists) {
        return no(false);
    }
    let (irreducible, proxy_used) = if t.dim() <= EXACT_REDUCIBILITY_LIMIT {
        let witness = is_reducible_exact(t, EXACT_REDUCIBILITY_LIMIT).expect("dimension within limit");
        (witness.is_none(), false)
    } else {
        (is_weakly_irreducible(t), true)
    };
    if irreducible {
        yes(proxy_used)
    } else {
        no(proxy_used)
    }
}

/// Strong connectivity of the digraph with an edge `i -> j` whenever some
/// nonzero `A_{i i2...im}` has `j` among `i2..im`.
pub fn is_weakly_irreducible(t: &DenseTensor) -> bool {
    let n = t.dim();
    let mut adj = vec![vec![false; n]; n];
    let mut idx = vec![0usize; t.order()];
    for (offset, &v) in t.entries().iter().enumerate() {
        if v != 0.0 {
            decode(offset, n, &mut idx);
            for &j in &idx[1..] {
                adj[idx[0]][j] = true;
            }
        }
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for w in 0..n {
                let edge = if forward { adj[u][w] } else { adj[w][u] };
                if edge && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Searches for a nonempty proper subset `I` (1-based) with
/// `A_{i1...im} = 0` for all `i1` in `I` and all `i2..im` outside `I`.
/// Returns the first witness in increasing bitmask order, or `None` when the
/// tensor is irreducible.
pub fn is_reducible_exact(t: &DenseTensor, limit: usize) -> Result<Option<Vec<usize>>> {
    let n = t.dim();
    if n > limit || n >= usize::BITS as usize {
        return Err(Error::TooLargeForExact { dim: n, limit });
    }
    let m = t.order();
    let mut tail = vec![0usize; m - 1];
    for mask in 1usize..(1 << n) - 1 {
        let (inside, outside): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| mask & (1 << i) != 0);
        let k = outside.len();
        let count = k.pow((m - 1) as u32);
        let constrained_zero = inside.iter().all(|&i| {
            (0..count).all(|c| {
                decode(c, k, &mut tail);
                let offset = tail.iter().fold(i, |acc, &j| acc * n + outside[j]);
                t.entries()[offset] == 0.0
            })
        });
        if constrained_zero {
            return Ok(Some(inside.into_iter().map(|i| i + 1).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> DenseTensor {
        DenseTensor::new(3, 2, vec![4.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 4.0]).unwrap()
    }

    fn three_i_minus_ones() -> DenseTensor {
        DenseTensor::new(3, 2, vec![2.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 2.0]).unwrap()
    }

    fn settings() -> IterationSettings {
        IterationSettings::default()
    }

    #[test]
    fn classify_fixture() {
        let v = classify_m_tensor(&q(), &settings()).unwrap();
        assert_eq!(v.status, MTensorStatus::MTensor);
        assert_eq!(v.tau, 1.0);
        assert_eq!(v.upper_bound, 7.0);
        assert_eq!(v.eigenvector, vec![0.5, 0.5]);
        assert_eq!(v.residual, 0.0);
    }

    #[test]
    fn classify_not_m() {
        let v = classify_m_tensor(&three_i_minus_ones(), &settings()).unwrap();
        assert_eq!(v.status, MTensorStatus::NotMTensor);
        assert_eq!(v.tau, -1.0);
    }

    #[test]
    fn classify_unit() {
        let v = classify_m_tensor(&DenseTensor::unit(3, 3).unwrap(), &settings()).unwrap();
        assert_eq!(v.status, MTensorStatus::MTensor);
        assert_eq!(v.tau, 1.0);
    }

    #[test]
    fn classify_rejects_non_z() {
        let t = DenseTensor::filled(3, 2, 1.0).unwrap();
        assert_eq!(classify_m_tensor(&t, &settings()), Err(Error::NotZTensor));
    }

    #[test]
    fn zero_tau_is_indeterminate() {
        // 4I - ones has tau = 4 - 4 = 0
        let t = DenseTensor::unit(3, 2).unwrap().scale(4.0);
        let t = &t + &DenseTensor::filled(3, 2, -1.0).unwrap();
        let v = classify_m_tensor(&t, &settings()).unwrap();
        assert_eq!(v.status, MTensorStatus::Indeterminate);
        assert!(v.tau.abs() <= v.guard_band);
    }

    #[test]
    fn smallest_eigenpairs() {
        assert_eq!(
            smallest_real_eigenvalue(&q(), &settings()).unwrap(),
            (1.0, vec![0.5, 0.5])
        );
        let m = DenseTensor::new(2, 2, vec![2.0, -1.0, -1.0, 2.0]).unwrap();
        let (tau, x) = smallest_real_eigenvalue(&m, &settings()).unwrap();
        assert_eq!(tau, 1.0);
        assert_eq!(x, vec![0.5, 0.5]);
        let alt = DenseTensor::unit(3, 2).unwrap().scale(5.0);
        let alt = &alt + &DenseTensor::filled(3, 2, -1.0).unwrap();
        assert_eq!(alt, q());
    }

    #[test]
    fn decompositions() {
        let d = decompose(&q(), 5.0).unwrap();
        assert_eq!(d.b, DenseTensor::filled(3, 2, 1.0).unwrap());
        let (margin, out) = d.margin(&settings()).unwrap();
        assert_eq!(out.lambda, 4.0);
        assert_eq!(margin, 1.0);
        let d = decompose(&q(), 4.0).unwrap();
        assert_eq!(d.b.diagonal(), vec![0.0, 0.0]);
        assert_eq!(d.b.entry(&[1, 2, 1].into()).unwrap(), 1.0);
        assert!(matches!(decompose(&q(), 3.0), Err(Error::ScalarBelowDiagonal { .. })));
        // s*I - B reconstructs A
        let d = decompose(&q(), 6.5).unwrap();
        assert_eq!(d.b.shift_combine(-1.0, -6.5), q());
    }

    #[test]
    fn dominance_reports() {
        let r = check_diagonal_dominance(&q());
        assert!(r.diagonally_dominant && r.strictly_dominant && r.diagonal_nonnegative);
        assert_eq!(r.rows_strict, vec![1, 2]);
        let r = check_diagonal_dominance(&three_i_minus_ones());
        assert!(!r.diagonally_dominant && !r.strictly_dominant && !r.strict_row_exists);
        assert!(check_diagonal_dominance(&DenseTensor::unit(4, 2).unwrap()).strictly_dominant);
    }

    #[test]
    fn sufficient_tests() {
        assert_eq!(sufficient_m_test(&q()).outcome, Sufficiency::ProvenMTensor);
        assert_eq!(
            sufficient_m_test(&three_i_minus_ones()).outcome,
            Sufficiency::NoConclusion
        );
        assert_eq!(
            sufficient_m_test(&DenseTensor::filled(3, 2, 1.0).unwrap()).outcome,
            Sufficiency::NoConclusion
        );
    }

    #[test]
    fn irreducibly_dominant_is_proven() {
        // tridiagonal M-matrix: rows 1 and 3 strict, row 2 tight, irreducible
        let m = DenseTensor::new(2, 3, vec![2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]).unwrap();
        let r = check_diagonal_dominance(&m);
        assert!(r.diagonally_dominant && !r.strictly_dominant);
        assert_eq!(r.rows_strict, vec![1, 3]);
        assert_eq!(
            sufficient_m_test(&m),
            SufficientTest {
                outcome: Sufficiency::ProvenMTensor,
                proxy_used: false
            }
        );
        // block diagonal: dominant with a strict row but reducible
        let m = DenseTensor::new(2, 3, vec![1.0, 0.0, 0.0, 0.0, 1.0, -1.0, 0.0, -1.0, 1.0]).unwrap();
        assert_eq!(sufficient_m_test(&m).outcome, Sufficiency::NoConclusion);
    }

    #[test]
    fn weak_irreducibility() {
        assert!(is_weakly_irreducible(&DenseTensor::filled(3, 3, 1.0).unwrap()));
        assert!(!is_weakly_irreducible(&DenseTensor::unit(3, 2).unwrap()));
        assert!(is_weakly_irreducible(&q()));
    }

    #[test]
    fn exact_reducibility() {
        assert_eq!(
            is_reducible_exact(&DenseTensor::unit(3, 2).unwrap(), 16).unwrap(),
            Some(vec![1])
        );
        assert_eq!(
            is_reducible_exact(&DenseTensor::filled(3, 3, 1.0).unwrap(), 16).unwrap(),
            None
        );
        assert_eq!(is_reducible_exact(&q(), 16).unwrap(), None);
        assert_eq!(
            is_reducible_exact(&DenseTensor::unit(2, 17).unwrap(), 16),
            Err(Error::TooLargeForExact { dim: 17, limit: 16 })
        );
    }
}
