//! Spectral toolkit for dense higher-order tensors.
//!
//! * [`tensor`]: dense storage, the contraction `A x^{m-1}`, forms,
//!   structural predicates and symmetrization.
//! * [`spectral`]: spectral radius of nonnegative tensors by shifted power
//!   iteration with Collatz–Wielandt brackets.
//! * [`classify`]: M-tensor classification of Z-tensors through their
//!   smallest real eigenvalue, plus diagonal-dominance certificates.
//! * [`posdef`]: positive definiteness of even-order forms with Z coefficients.
//! * [`randgen`]: seeded random Z-tensors for benchmarking.

pub mod classify;
pub mod error;
pub mod posdef;
pub mod randgen;
pub mod spectral;
pub mod tensor;

pub use classify::{
    check_diagonal_dominance, classify_m_tensor, decompose, is_reducible_exact, is_weakly_irreducible,
    smallest_real_eigenvalue, smallest_real_eigenvalue_shifted, sufficient_m_test, Decomposition, DominanceReport,
    MTensorStatus, MTensorVerdict, Sufficiency, SufficientTest, EXACT_REDUCIBILITY_LIMIT,
};
pub use error::{Error, Result};
pub use posdef::{
    falsify_by_sampling, test_positive_definite, test_positive_definite_with, PdReason, PdStatus, PdVerdict,
};
pub use randgen::{procedure1, GenSpec};
pub use spectral::{
    cw_bracket, largest_eigenvalue, real_eigenvalue_bounds, residual, Bracket, EigenvalueBounds, IterateNorm,
    IterationSettings, SpectralOutcome,
};
pub use tensor::{hadamard_power, DenseTensor, MultiIndex, StructureReport};
