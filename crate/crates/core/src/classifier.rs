//! Analytic classification of whether the power sequence of a matrix with
//! unit column modulus sums converges to a nonzero matrix.
//!
//! For 2x2 matrices the sequence has a nonzero limit exactly when both
//! diagonal entries are positive real, the off-diagonal product has zero
//! argument, and the off-diagonal entries are not negative real. For d >= 3
//! the characterization collapses: every entry must be positive real.
//!
//! Inputs that violate the standing assumptions (a zero entry, column
//! modulus sums away from one, or dimension below two) are classified as
//! out of scope rather than rejected, so batch runs never abort.

use num_complex::Complex64;

use crate::matrix::{ComplexMatrix, DEFAULT_ZERO_ENTRY_THRESHOLD};

/// Default tolerance for the classifier's positivity, reality, and angular
/// checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Outcome of the analytic classification.
///
/// `NoNonzeroLimit` deliberately does not distinguish convergence to zero
/// from non-convergence; that refinement belongs to the numeric oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticVerdict {
    NonzeroLimit,
    NoNonzeroLimit,
    OutOfScope,
}

/// Per-condition diagnostics. The variant matches the dimension branch that
/// was evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum ConditionDiagnostics {
    /// d = 2 branch.
    TwoByTwo {
        diagonal_positive_real: Vec<bool>,
        /// Whether the product of the two off-diagonal entries has zero
        /// argument within the angular tolerance.
        offdiag_product_positive: bool,
        offdiag_negative_real_present: bool,
        tolerance_used: f64,
    },
    /// d >= 3 branch.
    General {
        diagonal_positive_real: Vec<bool>,
        offdiag_negative_real_present: bool,
        all_entries_positive_real: bool,
        tolerance_used: f64,
    },
}

/// Analytic verdict with diagnostics; `scope_reason` explains an
/// `OutOfScope` verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceClass {
    pub verdict: AnalyticVerdict,
    pub diagnostics: Option<ConditionDiagnostics>,
    pub scope_reason: Option<String>,
}

impl ConvergenceClass {
    fn out_of_scope(reason: String) -> Self {
        Self {
            verdict: AnalyticVerdict::OutOfScope,
            diagnostics: None,
            scope_reason: Some(reason),
        }
    }
}

/// True iff `z` is positive real within `tol`: imaginary part at most `tol`
/// in magnitude and real part exceeding `tol`.
pub fn is_positive_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol && z.re > tol
}

fn is_negative_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol && z.re < -tol
}

/// Classifies `m` analytically. `tol` bounds the accepted deviation in the
/// normalization check, the reality/positivity tests, and the angular test
/// on the off-diagonal product.
pub fn classify(m: &ComplexMatrix, tol: f64) -> ConvergenceClass {
    assert!(tol > 0.0, "tolerance must be positive");
    let d = m.dim();
    if d < 2 {
        return ConvergenceClass::out_of_scope(format!(
            "dimension {d} is below 2; only d >= 2 is characterized"
        ));
    }

    let report = m.validate_normalized(tol, DEFAULT_ZERO_ENTRY_THRESHOLD);
    if !report.all_nonzero {
        return ConvergenceClass::out_of_scope(format!(
            "matrix has an entry of modulus {:.3e} (zero entries are excluded)",
            report.min_modulus
        ));
    }
    if !report.normalized {
        return ConvergenceClass::out_of_scope(format!(
            "column modulus sums deviate from 1 by {:.3e} (tolerance {:.1e})",
            report.max_deviation, tol
        ));
    }

    let diagonal_positive_real: Vec<bool> =
        (0..d).map(|i| is_positive_real(m.get(i, i), tol)).collect();
    let diag_ok = diagonal_positive_real.iter().all(|&b| b);

    if d == 2 {
        let b12 = m.get(0, 1);
        let b21 = m.get(1, 0);
        let offdiag_product_positive = (b12 * b21).arg().abs() <= tol;
        let offdiag_negative_real_present =
            is_negative_real(b12, tol) || is_negative_real(b21, tol);
        let verdict = if diag_ok && offdiag_product_positive && !is_negative_real(b12, tol) {
            AnalyticVerdict::NonzeroLimit
        } else {
            AnalyticVerdict::NoNonzeroLimit
        };
        ConvergenceClass {
            verdict,
            diagnostics: Some(ConditionDiagnostics::TwoByTwo {
                diagonal_positive_real,
                offdiag_product_positive,
                offdiag_negative_real_present,
                tolerance_used: tol,
            }),
            scope_reason: None,
        }
    } else {
        let mut all_positive = true;
        let mut negative_real_offdiag = false;
        for i in 0..d {
            for j in 0..d {
                let z = m.get(i, j);
                if !is_positive_real(z, tol) {
                    all_positive = false;
                }
                if i != j && is_negative_real(z, tol) {
                    negative_real_offdiag = true;
                }
            }
        }
        ConvergenceClass {
            verdict: if all_positive {
                AnalyticVerdict::NonzeroLimit
            } else {
                AnalyticVerdict::NoNonzeroLimit
            },
            diagnostics: Some(ConditionDiagnostics::General {
                diagonal_positive_real,
                offdiag_negative_real_present: negative_real_offdiag,
                all_entries_positive_real: all_positive,
                tolerance_used: tol,
            }),
            scope_reason: None,
        }
    }
}
