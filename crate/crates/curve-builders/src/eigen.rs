use nalgebra::{DMatrix, SymmetricEigen};
use sic_core::ErrorCurve;

use crate::BuildError;

/// Asymmetry beyond this (relative to the largest entry) is an error;
/// below it, the matrix is symmetrized before decomposition.
const SYMMETRY_RTOL: f64 = 1e-10;
/// Eigenvalues this far below zero (relative) fail the PSD check;
/// anything closer is clamped to zero as rounding.
const PSD_RTOL: f64 = 1e-10;

/// Scree curve of a covariance matrix: V(0) is the trace and V(k) the
/// k-th largest eigenvalue for k = 1..d. The matrix must be symmetric
/// and positive semi-definite up to rounding tolerances.
pub fn eigen_curve(rows: &[Vec<f64>]) -> Result<ErrorCurve, BuildError> {
    let matrix = square_matrix(rows)?;
    let scale = matrix.amax().max(1.0);
    for i in 0..matrix.nrows() {
        for j in (i + 1)..matrix.ncols() {
            if (matrix[(i, j)] - matrix[(j, i)]).abs() > SYMMETRY_RTOL * scale {
                return Err(BuildError::NotSymmetric { row: i, col: j });
            }
        }
    }
    let symmetrized = (&matrix + matrix.transpose()) * 0.5;
    scree_curve(symmetrized)
}

/// Scree curve from raw observations (one point per row): forms the
/// sample covariance (N-1 divisor) and proceeds as [`eigen_curve`].
pub fn eigen_curve_from_data(rows: &[Vec<f64>]) -> Result<ErrorCurve, BuildError> {
    let n = rows.len();
    if n < 2 {
        return Err(BuildError::invalid_input(
            "need at least two observations for a sample covariance",
        ));
    }
    let dim = rows[0].len();
    if dim == 0 {
        return Err(BuildError::invalid_input("observations have zero dimensions"));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(BuildError::invalid_input(format!(
                "observation {i} has {} coordinates, expected {dim}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(BuildError::invalid_input(format!(
                "coordinate ({i}, {j}) is not finite"
            )));
        }
    }
    let data = DMatrix::from_row_iterator(n, dim, rows.iter().flatten().copied());
    let mean = data.row_mean();
    let centered = DMatrix::from_fn(n, dim, |i, j| data[(i, j)] - mean[j]);
    let covariance = centered.transpose() * &centered / (n as f64 - 1.0);
    scree_curve(covariance)
}

fn square_matrix(rows: &[Vec<f64>]) -> Result<DMatrix<f64>, BuildError> {
    let d = rows.len();
    if d == 0 {
        return Err(BuildError::invalid_input("matrix has no rows"));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != d {
            return Err(BuildError::invalid_input(format!(
                "row {i} has {} entries; a {d}x{d} matrix was expected",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(BuildError::invalid_input(format!(
                "entry ({i}, {j}) is not finite"
            )));
        }
    }
    Ok(DMatrix::from_row_iterator(d, d, rows.iter().flatten().copied()))
}

fn scree_curve(symmetric: DMatrix<f64>) -> Result<ErrorCurve, BuildError> {
    let scale = symmetric.amax().max(1.0);
    let trace = symmetric.trace();
    let eigen = SymmetricEigen::new(symmetric);
    let mut eigenvalues: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("symmetric eigenvalues are finite"));
    if let Some(&smallest) = eigenvalues.last() {
        if smallest < -PSD_RTOL * scale {
            return Err(BuildError::NotPositiveSemiDefinite {
                eigenvalue: smallest,
            });
        }
    }
    let mut values = Vec::with_capacity(eigenvalues.len() + 1);
    values.push(trace);
    values.extend(eigenvalues.into_iter().map(|v| v.max(0.0)));
    Ok(ErrorCurve::new(values).expect("finite eigenvalues"))
}
