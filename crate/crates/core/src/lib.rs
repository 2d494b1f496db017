//! Does the power sequence `B, B^2, B^3, ...` of a complex square matrix
//! whose column modulus sums all equal one converge to a nonzero matrix?
//!
//! The crate answers the question twice and cross-checks the answers:
//!
//! * [`classifier`] decides analytically from the entries alone — for 2x2
//!   matrices via diagonal positivity plus the phase balance of the
//!   off-diagonal product, for d >= 3 via entrywise positivity;
//! * [`iteration`] is the numeric oracle, driving the recursion
//!   `X(n+1) = X(n) * B` and watching for a fixed point, collapse to zero,
//!   or a cycle.
//!
//! [`transforms`] supplies the phase-equivalence machinery relating a
//! matrix to its entrywise modulus matrix, [`baseline`] the exact rank-one
//! limit of positive column-stochastic matrices, and [`generator`] the
//! seeded matrix families the property suites run on.

pub mod baseline;
pub mod classifier;
pub mod error;
pub mod generator;
pub mod iteration;
pub mod matrix;
pub mod transforms;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub use num_complex::Complex64;

pub use baseline::{rank_one_limit, stationary_vector, StationaryVector};
pub use classifier::{
    classify, is_positive_real, AnalyticVerdict, ConditionDiagnostics, ConvergenceClass,
};
pub use generator::{FamilyKind, MatrixFamily};
pub use iteration::{
    fixed_point_residual, iterate, IterationConfig, IterationVerdict, NumericVerdict,
};
pub use matrix::{ComplexMatrix, NormalizationReport};
pub use transforms::{is_likewise, modulus_matrix, phase_twist, PhaseTwist};
