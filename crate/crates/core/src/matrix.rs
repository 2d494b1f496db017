//! Dense complex square matrices and the handful of operations the
//! convergence analysis is built on: products, powers, column modulus sums,
//! and validation of the unit-column-sum normalization.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

/// Default tolerance for accepting a column modulus sum as equal to one.
pub const DEFAULT_NORMALIZATION_TOL: f64 = 1e-9;

/// Entries with modulus at or below this threshold count as zero entries.
pub const DEFAULT_ZERO_ENTRY_THRESHOLD: f64 = 1e-12;

/// Dense d-by-d complex matrix, row-major storage.
///
/// All stored entries are finite; constructors reject NaN and infinities.
/// The matrices in this domain are small (desk scale, d up to a few dozen),
/// so there is no sparse representation.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    d: usize,
    entries: Vec<Complex64>,
}

/// Per-column modulus sums together with the verdicts of the normalization
/// check: `normalized` holds iff every column modulus sum is within the
/// tolerance of one, `all_nonzero` iff every entry modulus exceeds the zero
/// threshold supplied at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationReport {
    pub column_sums: Vec<f64>,
    pub max_deviation: f64,
    pub min_modulus: f64,
    pub normalized: bool,
    pub all_nonzero: bool,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_vec(d: usize, entries: Vec<Complex64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != d * d {
            return Err(Error::EntryCount {
                d,
                expected: d * d,
                found: entries.len(),
            });
        }
        let m = Self { d, entries };
        m.check_finite()?;
        Ok(m)
    }

    /// Builds a matrix from a slice of rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::EmptyMatrix);
        }
        for row in rows {
            if row.len() != d {
                return Err(Error::EntryCount {
                    d,
                    expected: d * d,
                    found: row.len() * d,
                });
            }
        }
        let entries = rows.iter().flatten().copied().collect();
        Self::from_vec(d, entries)
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(f(i, j));
            }
        }
        Self::from_vec(d, entries)
    }

    /// The d-by-d identity.
    pub fn identity(d: usize) -> Self {
        assert!(d >= 1, "identity requires d >= 1");
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            entries[i * d + i] = Complex64::new(1.0, 0.0);
        }
        Self { d, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Entry at `(row, col)`. Panics if out of range.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.d && col < self.d, "index out of range");
        self.entries[row * self.d + col]
    }

    pub fn transpose(&self) -> Self {
        let d = self.d;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j];
            }
        }
        Self { d, entries }
    }

    /// Standard complex matrix product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        let d = self.d;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::ProductOverflow);
        }
        Ok(Self { d, entries })
    }

    /// `self` raised to the `n`-th power by binary exponentiation;
    /// `power(m, 0)` is the identity.
    pub fn power(&self, n: u64) -> Result<Self> {
        let mut result = Self::identity(self.d);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.multiply(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(result)
    }

    /// Modulus sum of each column: entry `j` is `sum_i |m[i][j]|`.
    pub fn column_abs_sums(&self) -> Vec<f64> {
        let d = self.d;
        let mut sums = vec![0.0; d];
        for row in self.entries.chunks_exact(d) {
            for (s, z) in sums.iter_mut().zip(row) {
                *s += z.norm();
            }
        }
        sums
    }

    /// Largest column modulus sum; this is the operator norm induced by the
    /// l1 vector norm and is non-increasing along power sequences of
    /// matrices whose column modulus sums are at most one.
    pub fn max_column_abs_sum(&self) -> f64 {
        self.column_abs_sums().into_iter().fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_entry_modulus(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_ij |a[i][j] - b[i][j]|`; zero exactly when the matrices are equal.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Checks the column normalization constraint (every column modulus sum
    /// equal to one) and the absence of zero entries. Violations are reported,
    /// never raised as errors, so corpus runs can proceed past bad inputs.
    pub fn validate_normalized(&self, tol: f64, zero_threshold: f64) -> NormalizationReport {
        assert!(tol > 0.0, "tolerance must be positive");
        assert!(zero_threshold >= 0.0, "zero threshold must be nonnegative");
        let column_sums = self.column_abs_sums();
        let max_deviation = column_sums
            .iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max);
        let min_modulus = self
            .entries
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        NormalizationReport {
            normalized: max_deviation <= tol,
            all_nonzero: min_modulus > zero_threshold,
            column_sums,
            max_deviation,
            min_modulus,
        }
    }

    fn check_finite(&self) -> Result<()> {
        for i in 0..self.d {
            for j in 0..self.d {
                let z = self.entries[i * self.d + j];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }
}
