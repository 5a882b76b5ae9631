use nalgebra::{Cholesky, DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{BuildError, PointCloud};

/// Samples a Gaussian mixture: `counts[i]` points from component i with
/// the given mean and covariance, via the Cholesky transform of standard
/// normals. Each component draws from its own substream of the seed, so
/// the cloud is bit-reproducible and resizing one component leaves the
/// others' points unchanged.
pub fn gaussian_mixture_cloud(
    means: &[Vec<f64>],
    covariances: &[Vec<Vec<f64>>],
    counts: &[usize],
    seed: u64,
) -> Result<PointCloud, BuildError> {
    if means.is_empty() {
        return Err(BuildError::invalid_input("no mixture components"));
    }
    if covariances.len() != means.len() || counts.len() != means.len() {
        return Err(BuildError::invalid_input(format!(
            "{} means, {} covariances, {} counts; components must align",
            means.len(),
            covariances.len(),
            counts.len()
        )));
    }
    let dim = means[0].len();
    if dim == 0 {
        return Err(BuildError::invalid_input("components have zero dimensions"));
    }
    if counts.iter().sum::<usize>() == 0 {
        return Err(BuildError::invalid_input("no points requested"));
    }
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(counts.iter().sum());
    for (i, ((mean, cov), &count)) in means.iter().zip(covariances).zip(counts).enumerate() {
        if mean.len() != dim || mean.iter().any(|v| !v.is_finite()) {
            return Err(BuildError::invalid_input(format!(
                "mean {i} must be finite with {dim} coordinates"
            )));
        }
        let factor = component_cholesky(i, cov, dim)?;
        let mu = DVector::from_column_slice(mean);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        for _ in 0..count {
            let z = DVector::from_fn(dim, |_, _| StandardNormal.sample(&mut rng));
            let point = &mu + factor.l() * z;
            rows.push(point.iter().copied().collect());
        }
    }
    PointCloud::from_rows(&rows)
}

fn component_cholesky(
    component: usize,
    cov: &[Vec<f64>],
    dim: usize,
) -> Result<Cholesky<f64, nalgebra::Dyn>, BuildError> {
    if cov.len() != dim || cov.iter().any(|row| row.len() != dim) {
        return Err(BuildError::invalid_input(format!(
            "covariance {component} is not {dim}x{dim}"
        )));
    }
    if cov.iter().flatten().any(|v| !v.is_finite()) {
        return Err(BuildError::invalid_input(format!(
            "covariance {component} has non-finite entries"
        )));
    }
    let matrix = DMatrix::from_row_iterator(dim, dim, cov.iter().flatten().copied());
    // SPD includes symmetric; Cholesky alone would silently read only the
    // lower triangle.
    let scale = matrix.amax().max(1.0);
    for r in 0..dim {
        for c in (r + 1)..dim {
            if (matrix[(r, c)] - matrix[(c, r)]).abs() > 1e-10 * scale {
                return Err(BuildError::NonSpdComponent { component });
            }
        }
    }
    Cholesky::new(matrix).ok_or(BuildError::NonSpdComponent { component })
}
