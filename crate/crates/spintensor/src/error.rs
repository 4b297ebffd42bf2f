use thiserror::Error;

use crate::anticoherence::CriterionResiduals;

/// Errors for spin-tensor computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("dimension {got} does not match spin dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("spin mismatch: two_j = {expected} expected, got {got}")]
    SpinMismatch { expected: u32, got: u32 },

    #[error("not Hermitian (max |a_ij - conj(a_ji)| = {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (deviation {0:.3e})")]
    NotUnitTrace(f64),

    #[error("not positive semi-definite (min eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),

    #[error("state vector is not normalized (norm deviation {0:.3e})")]
    NotNormalized(f64),

    #[error("expected real quantity, got imaginary part {0:.3e}")]
    NotReal(f64),

    #[error("rotation axis is not a unit vector (norm {0})")]
    NonUnitAxis(f64),

    #[error("not a proper rotation matrix (orthogonality/determinant deviation {0:.3e})")]
    NotRotation(f64),

    #[error("two_j = {two_j} exceeds the spin cap {cap}")]
    SpinCapExceeded { two_j: u32, cap: u32 },

    #[error("multi-index rank {got} does not match required rank {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("multi-index entry {0} outside 0..=3")]
    IndexEntryOutOfRange(u8),

    #[error("tensor operator labels out of range: k = {k}, q = {q} for two_j = {two_j}")]
    TensorLabelOutOfRange { two_j: u32, k: u32, q: i32 },

    #[error("four-vector outside boost domain (need q0 < 0 and 0 < |q| < -q0): q0 = {q0}, |q| = {q_norm}")]
    BoostDomain { q0: f64, q_norm: f64 },

    #[error("cannot reduce two_j = {two_j} to two_k = {two_k}")]
    ReductionTooLarge { two_j: u32, two_k: u32 },

    #[error("operation requires two_j >= {required}, got {got}")]
    SpinTooSmall { required: u32, got: u32 },

    #[error(
        "anticoherence criteria disagree: reduced-state {reduction}, multipole {multipole}, direct-moment {moments}"
    )]
    CriterionDisagreement {
        reduction: u32,
        multipole: u32,
        moments: u32,
        residuals: Box<CriterionResiduals>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
