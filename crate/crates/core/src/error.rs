//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("entry count {len} does not match a {rows}x{cols} matrix")]
    EntryCount {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("direction is not a unit vector (norm {norm})")]
    NotUnitDirection { norm: f64 },
    #[error("expectation value has a non-negligible imaginary part ({imag:e})")]
    ImaginaryResidue { imag: f64 },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    EigenNoConvergence { sweeps: usize, off: f64 },
    #[error("slot index {index} out of range 1..=4")]
    SlotOutOfRange { index: usize },
    #[error("grid resolution {resolution} below the minimum of 8")]
    ResolutionTooSmall { resolution: usize },
    #[error("grid resolution {resolution} would overflow the cell count")]
    ResolutionTooLarge { resolution: usize },
    #[error("ensemble must contain at least one state")]
    EmptyEnsemble,
    #[error("ensembles differ in length: {lens:?}")]
    EnsembleLengthMismatch { lens: [usize; 4] },
    #[error("model '{model}' does not admit counterfactual evaluation")]
    CounterfactualUnsupported { model: String },
    #[error("outcome function returned {value}; outcomes must be -1 or +1")]
    OutcomeNotSign { value: i32 },
    #[error("unknown model '{name}'")]
    UnknownModel { name: String },
    #[error("sweep needs reps >= 2 (got {reps})")]
    TooFewReps { reps: usize },
    #[error("sweep needs at least one ensemble size")]
    EmptySweep,
}
