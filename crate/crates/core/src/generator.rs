//! Seeded families of random test matrices, one per hypothesis or violation
//! of the convergence characterization: positive stochastic bases, their
//! phase twists, single rotated entries (off-diagonal or diagonal), negated
//! entries, strictly substochastic columns, and full negations.
//!
//! Generation is deterministic in `(family, seed)`: all randomness comes
//! from SplitMix64, column magnitudes come from a sorted-gaps simplex draw
//! (no transcendental functions), and only the phase constructions use trig.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::transforms::{phase_twist, PhaseTwist};
use crate::Result;

/// Default lower bound on entry moduli. Keeps every family quantitatively
/// away from the zero-entry boundary, where convergence rates degenerate.
pub const DEFAULT_MIN_MODULUS: f64 = 0.01;

/// Rotation angles are re-drawn when within this distance of pi; the
/// negative-real case is realized deterministically by the sign-based
/// families instead.
const PI_REDRAW_RADIUS: f64 = 1e-6;

/// Substochastic column sums are drawn from `[0.5, cap]`; the designated
/// deficient column is capped at `1 - 0.05`.
const SUBSTOCHASTIC_SUM_FLOOR: f64 = 0.5;
const SUBSTOCHASTIC_DEFICIT: f64 = 0.05;

/// The seven generated families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Real entries at least `min_modulus`, every column summing to one.
    PositiveStochastic,
    /// A 2x2 positive stochastic matrix with its off-diagonal pair rotated
    /// by opposite phases; keeps a nonzero limit.
    PhaseTwisted2x2,
    /// One off-diagonal entry rotated by a nonzero phase; column modulus
    /// sums stay one but the nonzero limit is destroyed.
    ComplexOffDiagonal,
    /// One diagonal entry rotated by a nonzero phase.
    ComplexDiagonal,
    /// Real with column modulus sums one and at least one negated entry.
    NegativeEntry,
    /// Positive real with every column sum at most one and at least one
    /// column at most `1 - 0.05`.
    Substochastic,
    /// The negation of a positive stochastic matrix; its powers alternate.
    AllNegative,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::PositiveStochastic => "positive-stochastic",
            FamilyKind::PhaseTwisted2x2 => "phase-twisted",
            FamilyKind::ComplexOffDiagonal => "complex-off-diagonal",
            FamilyKind::ComplexDiagonal => "complex-diagonal",
            FamilyKind::NegativeEntry => "negative-entry",
            FamilyKind::Substochastic => "substochastic",
            FamilyKind::AllNegative => "all-negative",
        }
    }
}

/// A family together with its dimension and entry-modulus floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixFamily {
    kind: FamilyKind,
    d: usize,
    min_modulus: f64,
}

impl MatrixFamily {
    pub fn new(kind: FamilyKind, d: usize) -> Result<Self> {
        Self::with_min_modulus(kind, d, DEFAULT_MIN_MODULUS)
    }

    pub fn with_min_modulus(kind: FamilyKind, d: usize, min_modulus: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InfeasibleFamily {
                reason: format!("dimension {d} is below 2"),
            });
        }
        if kind == FamilyKind::PhaseTwisted2x2 && d != 2 {
            return Err(Error::InfeasibleFamily {
                reason: format!("{} requires d = 2, got {d}", kind.name()),
            });
        }
        if !min_modulus.is_finite() || min_modulus <= 0.0 {
            return Err(Error::InfeasibleFamily {
                reason: format!("min_modulus must be positive, got {min_modulus}"),
            });
        }
        if min_modulus * d as f64 >= 1.0 {
            return Err(Error::InfeasibleFamily {
                reason: format!(
                    "min_modulus {min_modulus} * d {d} >= 1: columns cannot sum to 1"
                ),
            });
        }
        if kind == FamilyKind::Substochastic
            && min_modulus * d as f64 >= SUBSTOCHASTIC_SUM_FLOOR
        {
            return Err(Error::InfeasibleFamily {
                reason: format!(
                    "min_modulus {min_modulus} * d {d} >= {SUBSTOCHASTIC_SUM_FLOOR}: \
                     substochastic columns cannot reach their sum floor"
                ),
            });
        }
        Ok(Self { kind, d, min_modulus })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn min_modulus(&self) -> f64 {
        self.min_modulus
    }

    /// Generates the family member for `seed`; deterministic in
    /// `(self, seed)`.
    pub fn generate(&self, seed: u64) -> Result<ComplexMatrix> {
        let mut rng = SplitMix64::new(seed);
        let d = self.d;
        let m = match self.kind {
            FamilyKind::PositiveStochastic => self.stochastic_base(&mut rng)?,
            FamilyKind::PhaseTwisted2x2 => {
                let base = self.stochastic_base(&mut rng)?;
                let phi = sample_angle(&mut rng, false);
                let twist = PhaseTwist::new(phi).expect("sampled away from pi");
                phase_twist(&base, twist)?
            }
            FamilyKind::ComplexOffDiagonal => {
                let base = self.stochastic_base(&mut rng)?;
                let (i, j) = sample_offdiagonal(&mut rng, d);
                let theta = sample_angle(&mut rng, true);
                rotate_entry(&base, i, j, theta)?
            }
            FamilyKind::ComplexDiagonal => {
                let base = self.stochastic_base(&mut rng)?;
                let i = rng.below(d);
                let theta = sample_angle(&mut rng, true);
                rotate_entry(&base, i, i, theta)?
            }
            FamilyKind::NegativeEntry => {
                let base = self.stochastic_base(&mut rng)?;
                let signs = sample_cancelling_signs(&mut rng, d);
                ComplexMatrix::from_fn(d, |i, j| {
                    let z = base.get(i, j);
                    if signs[i * d + j] {
                        -z
                    } else {
                        z
                    }
                })?
            }
            FamilyKind::Substochastic => {
                let deficient = rng.below(d);
                let mut columns = Vec::with_capacity(d);
                for j in 0..d {
                    let cap = if j == deficient {
                        1.0 - SUBSTOCHASTIC_DEFICIT
                    } else {
                        1.0
                    };
                    let sum = SUBSTOCHASTIC_SUM_FLOOR
                        + rng.next_f64() * (cap - SUBSTOCHASTIC_SUM_FLOOR);
                    columns.push(self.column_magnitudes(&mut rng, sum));
                }
                ComplexMatrix::from_fn(d, |i, j| Complex64::new(columns[j][i], 0.0))?
            }
            FamilyKind::AllNegative => {
                let base = self.stochastic_base(&mut rng)?;
                ComplexMatrix::from_fn(d, |i, j| -base.get(i, j))?
            }
        };
        self.check_contract(&m);
        Ok(m)
    }

    /// Positive column-stochastic base: each column drawn from the simplex
    /// of magnitudes bounded below by `min_modulus` and summing to one.
    fn stochastic_base(&self, rng: &mut SplitMix64) -> Result<ComplexMatrix> {
        let d = self.d;
        let columns: Vec<Vec<f64>> = (0..d).map(|_| self.column_magnitudes(rng, 1.0)).collect();
        ComplexMatrix::from_fn(d, |i, j| Complex64::new(columns[j][i], 0.0))
    }

    /// Column magnitudes summing to `target`, each at least `min_modulus`:
    /// a uniform simplex point (gaps between sorted uniforms) shifted by the
    /// floor and rescaled onto the remaining mass.
    fn column_magnitudes(&self, rng: &mut SplitMix64, target: f64) -> Vec<f64> {
        let d = self.d;
        let span = target - self.min_modulus * d as f64;
        debug_assert!(span > 0.0);
        let mut cuts: Vec<f64> = (0..d - 1).map(|_| rng.next_f64()).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).expect("uniform draws are never NaN"));
        let mut out = Vec::with_capacity(d);
        let mut prev = 0.0;
        for &c in &cuts {
            out.push(self.min_modulus + span * (c - prev));
            prev = c;
        }
        out.push(self.min_modulus + span * (1.0 - prev));
        // absorb rounding so the sum hits the target exactly
        let partial: f64 = out[..d - 1].iter().sum();
        out[d - 1] = target - partial;
        out
    }

    fn check_contract(&self, m: &ComplexMatrix) {
        let sums = m.column_abs_sums();
        match self.kind {
            FamilyKind::Substochastic => {
                debug_assert!(sums.iter().all(|s| *s <= 1.0 + 1e-9));
                debug_assert!(sums.iter().any(|s| *s <= 1.0 - SUBSTOCHASTIC_DEFICIT + 1e-9));
            }
            _ => {
                debug_assert!(sums.iter().all(|s| (s - 1.0).abs() <= 1e-9));
            }
        }
        debug_assert!(m.max_entry_modulus() >= self.min_modulus - 1e-12);
        debug_assert!(
            (0..self.d)
                .all(|i| (0..self.d).all(|j| m.get(i, j).norm() >= self.min_modulus - 1e-9))
        );
    }
}

fn sample_offdiagonal(rng: &mut SplitMix64, d: usize) -> (usize, usize) {
    let i = rng.below(d);
    let mut j = rng.below(d - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Uniform angle in `[0, 2*pi)`, re-drawn near pi; with `exclude_zero` the
/// angle is additionally re-drawn at exactly zero so the rotation is real.
fn sample_angle(rng: &mut SplitMix64, exclude_zero: bool) -> f64 {
    loop {
        let theta = rng.next_f64() * TAU;
        if (theta - PI).abs() <= PI_REDRAW_RADIUS {
            continue;
        }
        if exclude_zero && theta == 0.0 {
            continue;
        }
        return theta;
    }
}

fn rotate_entry(m: &ComplexMatrix, row: usize, col: usize, theta: f64) -> Result<ComplexMatrix> {
    let rot = Complex64::from_polar(1.0, theta);
    ComplexMatrix::from_fn(m.dim(), |i, j| {
        if (i, j) == (row, col) {
            m.get(i, j) * rot
        } else {
            m.get(i, j)
        }
    })
}

/// Nonempty negation pattern whose sign matrix is not plus-or-minus a
/// rank-one pattern `u * u^T` with `u` in `{-1,+1}^d`.
///
/// Rank-one patterns are excluded because they conjugate the matrix into
/// (plus or minus) a positive stochastic one, so the powers converge to a
/// nonzero matrix or cycle with period two instead of cancelling. Every
/// accepted pattern mixes signs inside some product column, which forces
/// strict cancellation in the square and certified decay to zero.
fn sample_cancelling_signs(rng: &mut SplitMix64, d: usize) -> Vec<bool> {
    loop {
        let negated: Vec<bool> = (0..d * d).map(|_| rng.next_bool()).collect();
        if !negated.iter().any(|&b| b) {
            continue;
        }
        if is_rank_one_sign_pattern(&negated, d) {
            continue;
        }
        return negated;
    }
}

fn is_rank_one_sign_pattern(negated: &[bool], d: usize) -> bool {
    let sign = |i: usize, j: usize| -> i8 {
        if negated[i * d + j] {
            -1
        } else {
            1
        }
    };
    let plus = (0..d).all(|i| (0..d).all(|j| sign(i, j) == sign(i, 0) * sign(j, 0)));
    let minus = (0..d).all(|i| (0..d).all(|j| sign(i, j) == -(sign(i, 0) * sign(j, 0))));
    plus || minus
}

/// SplitMix64: the 64-bit mixer from Steele, Lea and Flood's "Fast
/// splittable pseudorandom number generators". Statistical quality is a
/// non-goal here; bit-exact reproducibility from the seed is the contract.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn next_bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_f64() * n as f64) as usize).min(n - 1)
    }
}
