//! Dense least-squares kernels: regularized solves and the pseudo-inverse.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;

pub(crate) fn check_finite(m: &Mat, what: &str) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Numerical(format!("{what} contains non-finite values")))
    }
}

/// Solves `G x = rhs` for symmetric positive (semi)definite `G`.
///
/// Cholesky first; LU and finally an SVD least-squares solve if the factorization
/// breaks down numerically.
pub fn spd_solve(g: &Mat, rhs: &Mat) -> Result<Mat> {
    if let Some(chol) = g.clone().cholesky() {
        let x = chol.solve(rhs);
        if x.iter().all(|v| v.is_finite()) {
            return Ok(x);
        }
    }
    general_solve(g, rhs)
}

/// Solves a square system, falling back to a minimum-norm least-squares solution.
pub fn general_solve(g: &Mat, rhs: &Mat) -> Result<Mat> {
    if let Some(x) = g.clone().lu().solve(rhs) {
        if x.iter().all(|v| v.is_finite()) {
            let resid = (g * &x - rhs).norm();
            if resid <= 1e-8 * (1.0 + rhs.norm()) * (1.0 + g.norm()) {
                return Ok(x);
            }
        }
    }
    let p = pinv(g, 1e-13)?;
    let x = p * rhs;
    if x.iter().all(|v| v.is_finite()) {
        Ok(x)
    } else {
        Err(Error::Numerical("singular linear system".into()))
    }
}

/// Regularized least squares `argmin ‖Aβ − B‖² + (1/C)‖β‖²`.
///
/// Uses the primal normal equations `(AᵀA + I/C)β = AᵀB` when `A` has no more
/// columns than rows and the dual form `Aᵀ(AAᵀ + I/C)⁻¹B` otherwise.
pub fn ridge_solve(a: &Mat, b: &Mat, c: f64) -> Result<Mat> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "regularization C must be positive and finite, got {c}"
        )));
    }
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    check_finite(a, "design matrix")?;
    check_finite(b, "target matrix")?;
    let (n, d) = a.shape();
    let ridge = 1.0 / c;
    if d <= n {
        let mut g = a.tr_mul(a);
        for i in 0..d {
            g[(i, i)] += ridge;
        }
        spd_solve(&g, &a.tr_mul(b))
    } else {
        let mut g = a * a.transpose();
        for i in 0..n {
            g[(i, i)] += ridge;
        }
        let z = spd_solve(&g, b)?;
        Ok(a.tr_mul(&z))
    }
}

/// Weighted ridge: `argmin Σ wᵢ‖aᵢβ − bᵢ‖² + (1/C)‖β‖²` with non-negative weights.
pub fn weighted_ridge_solve(a: &Mat, b: &Mat, weights: &[f64], c: f64) -> Result<Mat> {
    if weights.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: weights.len(),
        });
    }
    if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
        return Err(Error::InvalidArgument("sample weights must be finite and >= 0".into()));
    }
    let mut aw = a.clone();
    let mut bw = b.clone();
    for (i, w) in weights.iter().enumerate() {
        let s = w.sqrt();
        aw.row_mut(i).scale_mut(s);
        bw.row_mut(i).scale_mut(s);
    }
    ridge_solve(&aw, &bw, c)
}

/// Penalized least squares `(C·AᵀA + I + P)β = C·AᵀB` for a symmetric PSD penalty `P`.
pub fn penalized_solve(a: &Mat, b: &Mat, c: f64, penalty: &Mat) -> Result<Mat> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "regularization C must be positive and finite, got {c}"
        )));
    }
    let d = a.ncols();
    if penalty.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: penalty.nrows(),
        });
    }
    check_finite(a, "design matrix")?;
    check_finite(penalty, "penalty matrix")?;
    let mut g = a.tr_mul(a) * c + penalty;
    for i in 0..d {
        g[(i, i)] += 1.0;
    }
    // symmetrize away rounding asymmetry before factorizing
    let g = (&g + g.transpose()) * 0.5;
    spd_solve(&g, &(a.tr_mul(b) * c))
}

/// Moore–Penrose pseudo-inverse via SVD; singular values below `tol · σ_max` are dropped.
pub fn pinv(a: &Mat, tol: f64) -> Result<Mat> {
    check_finite(a, "matrix")?;
    let (n, d) = a.shape();
    if n == 0 || d == 0 {
        return Ok(Mat::zeros(d, n));
    }
    let svd = a.clone().svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let cutoff = tol * smax;
    let mut out = Mat::zeros(d, n);
    if smax == 0.0 {
        return Ok(out);
    }
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff && s > 0.0 {
            let v = vt.row(k).transpose();
            let uk = u.column(k);
            out += (v * uk.transpose()) / s;
        }
    }
    Ok(out)
}
