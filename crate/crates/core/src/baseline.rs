//! Exact limit computation for positive column-stochastic matrices, the
//! classical baseline the complex analysis is checked against: the powers of
//! such a matrix converge to the rank-one matrix whose every column is the
//! stationary vector.

use num_complex::Complex64;

use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::Result;

const REAL_TOL: f64 = 1e-12;
const STOCHASTIC_TOL: f64 = 1e-9;
const MAX_POWER_ITERATIONS: usize = 1_000_000;

/// Stationary vector of a positive column-stochastic matrix: strictly
/// positive entries summing to one with `P * v = v` up to `residual`.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryVector {
    pub v: Vec<f64>,
    pub residual: f64,
}

/// Computes the stationary vector by power iteration from the uniform
/// distribution. Strict positivity of `p` guarantees a spectral gap, so no
/// shifting or deflation is needed.
pub fn stationary_vector(p: &ComplexMatrix, tol: f64) -> Result<StationaryVector> {
    assert!(tol > 0.0, "tolerance must be positive");
    let d = p.dim();
    let mut real = vec![vec![0.0f64; d]; d];
    for (i, row) in real.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let z = p.get(i, j);
            if z.im.abs() > REAL_TOL {
                return Err(Error::NotPositiveStochastic {
                    reason: format!("entry ({i},{j}) has imaginary part {:e}", z.im),
                });
            }
            if z.re <= 0.0 {
                return Err(Error::NotPositiveStochastic {
                    reason: format!("entry ({i},{j}) is {} (must be positive)", z.re),
                });
            }
            *cell = z.re;
        }
    }
    for (j, s) in p.column_abs_sums().iter().enumerate() {
        if (s - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::NotPositiveStochastic {
                reason: format!("column {j} sums to {s}, not 1"),
            });
        }
    }

    let mut v = vec![1.0 / d as f64; d];
    for _ in 0..MAX_POWER_ITERATIONS {
        let mut next = vec![0.0f64; d];
        for i in 0..d {
            for j in 0..d {
                next[i] += real[i][j] * v[j];
            }
        }
        let sum: f64 = next.iter().sum();
        for x in &mut next {
            *x /= sum;
        }
        let delta = v
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if delta <= 0.5 * tol {
            let mut residual = 0.0f64;
            for i in 0..d {
                let mut pv = 0.0;
                for j in 0..d {
                    pv += real[i][j] * v[j];
                }
                residual = residual.max((pv - v[i]).abs());
            }
            if residual <= tol {
                debug_assert!(v.iter().all(|&x| x > 0.0));
                return Ok(StationaryVector { v, residual });
            }
        }
    }
    Err(Error::PowerIterationDiverged { iterations: MAX_POWER_ITERATIONS })
}

/// The rank-one limit matrix: every column equals the stationary vector.
pub fn rank_one_limit(sv: &StationaryVector, d: usize) -> Result<ComplexMatrix> {
    if sv.v.len() != d {
        return Err(Error::DimensionMismatch { left: sv.v.len(), right: d });
    }
    ComplexMatrix::from_fn(d, |i, _| Complex64::new(sv.v[i], 0.0))
}
