//! Kernel matrices.

use serde::{Deserialize, Serialize};

use super::linalg::Mat;
use crate::error::{Error, Result};

/// Kernel used by the hyperplane classifiers.
///
/// `Gaussian` follows the convention `k(x, y) = exp(−‖x − y‖² / σ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Kernel {
    Linear,
    Gaussian { sigma: f64 },
}

impl Kernel {
    pub fn matrix(&self, x: &Mat, y: &Mat) -> Result<Mat> {
        match *self {
            Kernel::Linear => linear_kernel(x, y),
            Kernel::Gaussian { sigma } => gaussian_kernel(x, y, sigma),
        }
    }
}

fn check_dims(x: &Mat, y: &Mat) -> Result<()> {
    if x.ncols() != y.ncols() {
        return Err(Error::DimensionMismatch {
            expected: x.ncols(),
            got: y.ncols(),
        });
    }
    Ok(())
}

pub fn linear_kernel(x: &Mat, y: &Mat) -> Result<Mat> {
    check_dims(x, y)?;
    Ok(x * y.transpose())
}

/// Pairwise squared Euclidean distances between the rows of `x` and `y`.
pub fn squared_distances(x: &Mat, y: &Mat) -> Result<Mat> {
    check_dims(x, y)?;
    let d = x.ncols();
    Ok(Mat::from_fn(x.nrows(), y.nrows(), |i, j| {
        let mut acc = 0.0;
        for k in 0..d {
            let t = x[(i, k)] - y[(j, k)];
            acc += t * t;
        }
        acc
    }))
}

pub fn gaussian_kernel(x: &Mat, y: &Mat, sigma: f64) -> Result<Mat> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "kernel width must be positive, got {sigma}"
        )));
    }
    let s2 = sigma * sigma;
    Ok(squared_distances(x, y)?.map(|d2| (-d2 / s2).exp()))
}
