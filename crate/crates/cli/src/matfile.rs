//! The matrix file format: a UTF-8 JSON object
//! `{"d": n, "entries": [[[re, im], ...], ...]}` with `entries` holding the
//! rows in order and every complex number written as a two-element array.

use powermat::{Complex64, ComplexMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected {d} rows, found {found}")]
    RowCount { d: usize, found: usize },
    #[error("row {row} has {found} entries, expected {d}")]
    RowLength { row: usize, d: usize, found: usize },
    #[error("non-finite number at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    d: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

/// Parses the JSON matrix schema, rejecting non-square data and non-finite
/// numbers with row/column diagnostics.
pub fn parse_matrix_file(bytes: &[u8]) -> Result<ComplexMatrix, ParseError> {
    let file: MatrixFile = serde_json::from_slice(bytes)?;
    if file.d == 0 {
        return Err(ParseError::ZeroDimension);
    }
    if file.entries.len() != file.d {
        return Err(ParseError::RowCount { d: file.d, found: file.entries.len() });
    }
    let mut entries = Vec::with_capacity(file.d * file.d);
    for (i, row) in file.entries.iter().enumerate() {
        if row.len() != file.d {
            return Err(ParseError::RowLength { row: i, d: file.d, found: row.len() });
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(ParseError::NonFinite { row: i, col: j });
            }
            entries.push(Complex64::new(re, im));
        }
    }
    Ok(ComplexMatrix::from_vec(file.d, entries).expect("validated above"))
}

/// Canonical JSON serialization of a matrix; also used to digest generated
/// inputs.
pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    let d = m.dim();
    let entries: Vec<Vec<[f64; 2]>> = (0..d)
        .map(|i| (0..d).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect();
    serde_json::to_string(&MatrixFile { d, entries }).expect("serialization cannot fail")
}
