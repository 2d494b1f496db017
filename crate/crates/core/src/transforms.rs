//! Phase-equivalence machinery: the entrywise modulus matrix, the 2x2 phase
//! twist that rotates the off-diagonal pair by opposite angles, and the
//! "likewise" relation (equal entry moduli).
//!
//! The twist leaves every power's entry moduli unchanged: the diagonal
//! entries of the n-th power are untouched and the off-diagonal entries pick
//! up the constant phases `e^{i phi}` and `e^{-i phi}`, so a twisted matrix
//! and the original have likewise powers for every n.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::Result;

/// Entries are considered real when the imaginary part is at most this.
const REAL_TOL: f64 = 1e-12;

/// Twist angles must keep at least this distance from pi.
const PI_EXCLUSION: f64 = 1e-9;

/// Rotation angle for [`phase_twist`], normalized into `[0, 2*pi)` and kept
/// away from the excluded value pi (at pi the twisted off-diagonals become
/// negative real and the phase structure degenerates to a sign flip).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTwist {
    phi: f64,
}

impl PhaseTwist {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidTwistAngle { angle: phi });
        }
        let phi = phi.rem_euclid(TAU);
        if (phi - PI).abs() <= PI_EXCLUSION {
            return Err(Error::InvalidTwistAngle { angle: phi });
        }
        Ok(Self { phi })
    }

    pub fn angle(&self) -> f64 {
        self.phi
    }
}

/// The real matrix of entry moduli `|b[i][j]|`. Idempotent as an operation.
pub fn modulus_matrix(b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(b.dim(), |i, j| Complex64::new(b.get(i, j).norm(), 0.0))
        .expect("moduli of finite entries are finite")
}

/// Applies the phase twist to a real 2x2 matrix with nonnegative
/// off-diagonal entries: the diagonal is kept, the (0,1) entry is multiplied
/// by `e^{i phi}` and the (1,0) entry by `e^{-i phi}`.
///
/// The diagonal may be any real value; only the off-diagonal pair must be
/// nonnegative for the phase bookkeeping to stay consistent across powers.
pub fn phase_twist(a: &ComplexMatrix, twist: PhaseTwist) -> Result<ComplexMatrix> {
    if a.dim() != 2 {
        return Err(Error::TwistDimension { d: a.dim() });
    }
    for i in 0..2 {
        for j in 0..2 {
            let z = a.get(i, j);
            if z.im.abs() > REAL_TOL {
                return Err(Error::TwistNotReal { row: i, col: j, im: z.im });
            }
            if i != j && z.re < 0.0 {
                return Err(Error::TwistNegativeOffDiagonal { row: i, col: j, value: z.re });
            }
        }
    }
    let rot = Complex64::from_polar(1.0, twist.phi);
    ComplexMatrix::from_rows(&[
        vec![Complex64::new(a.get(0, 0).re, 0.0), a.get(0, 1).re * rot],
        vec![a.get(1, 0).re * rot.conj(), Complex64::new(a.get(1, 1).re, 0.0)],
    ])
}

/// True iff corresponding entries of `a` and `b` have equal moduli within
/// `tol`.
pub fn is_likewise(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let mut worst = 0.0f64;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            worst = worst.max((a.get(i, j).norm() - b.get(i, j).norm()).abs());
        }
    }
    Ok(worst <= tol)
}
