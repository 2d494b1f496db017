use thiserror::Error;

/// Errors shared by the matrix kernel and the analysis routines built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("expected {expected} entries for a {d}x{d} matrix, found {found}")]
    EntryCount { d: usize, expected: usize, found: usize },

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("non-finite entry at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix product overflowed to a non-finite value")]
    ProductOverflow,

    #[error("numeric overflow after {steps} multiplications")]
    Overflow { steps: u64 },

    #[error("invalid iteration config: {reason}")]
    InvalidIterationConfig { reason: String },

    #[error("invalid twist angle {angle}: must be finite and stay away from pi")]
    InvalidTwistAngle { angle: f64 },

    #[error("phase twist requires a 2x2 matrix, got {d}x{d}")]
    TwistDimension { d: usize },

    #[error("phase twist requires a real matrix: entry ({row},{col}) has imaginary part {im:e}")]
    TwistNotReal { row: usize, col: usize, im: f64 },

    #[error("phase twist requires nonnegative off-diagonal entries: ({row},{col}) is {value}")]
    TwistNegativeOffDiagonal { row: usize, col: usize, value: f64 },

    #[error("not a positive column-stochastic matrix: {reason}")]
    NotPositiveStochastic { reason: String },

    #[error("power iteration did not converge within {iterations} iterations")]
    PowerIterationDiverged { iterations: usize },

    #[error("matrix family is infeasible: {reason}")]
    InfeasibleFamily { reason: String },
}
