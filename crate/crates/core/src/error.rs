use thiserror::Error;

/// Errors raised by the numerical and model routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix has {got} entries, expected {expected}")]
    EntryCount { expected: usize, got: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("not Hermitian: max |m - m^dagger| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("not positive semidefinite: eigenvalue {eigenvalue:e} below -{tol:e}")]
    NotPositiveSemidefinite { eigenvalue: f64, tol: f64 },

    #[error("trace is {trace}, expected 1 within {tol:e}")]
    InvalidTrace { trace: f64, tol: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("qudit dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("invalid level pair ({i}, {j}) for d = {d}: need 0 <= i < j <= d - 1")]
    InvalidPair { i: usize, j: usize, d: usize },

    #[error("spectrum is not sorted in descending order")]
    NotSorted,

    #[error("block is not in X form: off-pattern magnitude {magnitude:e} exceeds {tol:e}")]
    NotXForm { magnitude: f64, tol: f64 },

    #[error("concurrence {0} outside [0, 1]")]
    OutOfRange(f64),

    #[error("|alpha|^2 + |beta|^2 = {norm}, expected 1")]
    Unnormalized { norm: f64 },

    #[error("no dimensionless-time convention for n = {0}; use g*t directly")]
    UnsupportedTauConvention(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
