use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix that must be Hermitian deviates from its adjoint by more
    /// than the allowed tolerance.
    #[error("matrix is not Hermitian (max |A - A\u{2020}| = {deviation:.3e}, tol = {tol:.3e})")]
    NotHermitian { deviation: f64, tol: f64 },

    /// A matrix does not have the shape an operation requires.
    #[error("dimension mismatch: expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    /// A bipartite operation was handed a matrix whose side is not a
    /// perfect square `d^2`.
    #[error("matrix side {side} is not d^2 for any local dimension d >= 2")]
    NotBipartite { side: usize },

    /// Local dimension too large for an exhaustive operation.
    #[error("local dimension {d} exceeds the supported maximum {max}")]
    DimensionTooLarge { d: usize, max: usize },

    /// Local dimension too small for the requested family.
    #[error("local dimension {d} is below the minimum {min}")]
    DimensionTooSmall { d: usize, min: usize },

    /// A parameter list has the wrong length.
    #[error("expected {expected} value(s), got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// A scalar parameter is outside its admissible range.
    #[error("{name} must be in {range}, got {value}")]
    ParamOutOfRange {
        name: &'static str,
        range: &'static str,
        value: f64,
    },

    /// A coefficient matrix that must be positive semidefinite is not.
    #[error("coefficient matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPsd { min_eig: f64 },

    /// State coefficients do not sum to one.
    #[error("coefficients are not normalized (sum = {sum}, expected 1)")]
    BadNormalization { sum: f64 },

    /// The input is not a valid density matrix.
    #[error("not a valid state: {reason}")]
    NotAState { reason: String },

    /// A block decomposition does not actually decouple the matrix.
    #[error("invalid decomposition: cross-block entry of magnitude {residual:.3e} exceeds tol {tol:.3e}")]
    InvalidDecomposition { residual: f64, tol: f64 },

    /// Two block decompositions cannot be related (wrong block counts).
    #[error("block shape mismatch: expected 3/3 blocks, got {left}/{right}")]
    ShapeMismatch { left: usize, right: usize },

    /// A permutation specification is not a bijection on 1..=d.
    #[error("invalid permutation: {reason}")]
    BadPermutation { reason: String },

    /// A partition string could not be parsed.
    #[error("invalid partition \"{text}\": {reason}")]
    BadPartition { text: String, reason: String },

    /// A matrix file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
