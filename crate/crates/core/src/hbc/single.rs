use super::{solve_dual, Plane, TrainedHbc, HbcFamily, HbcHyper};
use crate::error::{Error, Result};
use crate::numcore::linalg::general_solve;
use crate::numcore::{sgd_momentum, Kernel, LinearEquality, Mat, QpProblem, SgdParams, Vector};

/// Cap on the Linex exponent so a wildly over-confident sample cannot overflow the gradient.
const LINEX_EXP_CAP: f64 = 50.0;

fn gram(x: &Mat, kernel: Option<Kernel>) -> Result<Mat> {
    match kernel {
        Some(k) => k.matrix(x, x),
        None => Ok(x * x.transpose()),
    }
}

fn plane_from_dual(x: &Mat, kernel: Option<Kernel>, k: &Mat, ay: &Vector, bias: f64) -> (Plane, Option<Mat>) {
    match kernel {
        None => {
            let w = x.tr_mul(ay);
            let norm = w.norm();
            (Plane { coef: w, bias, norm }, None)
        }
        Some(_) => {
            let keep: Vec<usize> = (0..ay.len()).filter(|&i| ay[i] != 0.0).collect();
            let coef = Vector::from_iterator(keep.len(), keep.iter().map(|&i| ay[i]));
            let norm = ay.dot(&(k * ay)).max(0.0).sqrt();
            (Plane { coef, bias, norm }, Some(x.select_rows(keep.iter())))
        }
    }
}

/// Hinge (`tau = 0`) or pinball soft-margin SVM from its dual, bounds `[−τC, C]`.
pub(super) fn fit_svm(x: &Mat, y: &[f64], c: f64, tau: f64, kernel: Option<Kernel>) -> Result<TrainedHbc> {
    let n = y.len();
    let k = gram(x, kernel)?;
    let q = Mat::from_fn(n, n, |i, j| y[i] * y[j] * k[(i, j)]);
    let lower = Vector::from_element(n, -tau * c);
    let upper = Vector::from_element(n, c);
    let p = QpProblem::new(
        q,
        Vector::from_element(n, -1.0),
        lower,
        upper,
        Some(LinearEquality {
            coeffs: Vector::from_column_slice(y),
            rhs: 0.0,
        }),
    )?;
    let alpha = solve_dual(&p)?;
    let ay = Vector::from_fn(n, |i, _| alpha[i] * y[i]);
    let f0 = &k * &ay;
    // margin vectors: strictly inside the box
    let slack = 1e-8 * c.max(1.0);
    let interior: Vec<usize> = (0..n)
        .filter(|&i| alpha[i] > -tau * c + slack && alpha[i] < c - slack)
        .collect();
    let bias = if interior.is_empty() {
        let min_pos = (0..n).filter(|&i| y[i] > 0.0).map(|i| f0[i]).fold(f64::INFINITY, f64::min);
        let max_neg = (0..n).filter(|&i| y[i] < 0.0).map(|i| f0[i]).fold(f64::NEG_INFINITY, f64::max);
        -(min_pos + max_neg) / 2.0
    } else {
        interior.iter().map(|&i| y[i] - f0[i]).sum::<f64>() / interior.len() as f64
    };
    let (plane, support) = plane_from_dual(x, kernel, &k, &ay, bias);
    Ok(TrainedHbc {
        family: HbcFamily::Svm,
        n_inputs: x.ncols(),
        kernel,
        support,
        planes: vec![plane],
    })
}

/// Least-squares SVM: the bordered system `[[0, yᵀ], [y, Ω + I/C]]·[b; α] = [0; 1]`.
pub(super) fn fit_lssvm(x: &Mat, y: &[f64], c: f64, kernel: Option<Kernel>) -> Result<TrainedHbc> {
    let n = y.len();
    let k = gram(x, kernel)?;
    let mut jitter = 0.0;
    for _ in 0..3 {
        let m = Mat::from_fn(n + 1, n + 1, |i, j| match (i, j) {
            (0, 0) => 0.0,
            (0, j) => y[j - 1],
            (i, 0) => y[i - 1],
            (i, j) => {
                y[i - 1] * y[j - 1] * k[(i - 1, j - 1)] + if i == j { 1.0 / c + jitter } else { 0.0 }
            }
        });
        let mut rhs = Mat::from_element(n + 1, 1, 1.0);
        rhs[(0, 0)] = 0.0;
        let sol = general_solve(&m, &rhs)?;
        let resid = (&m * &sol - &rhs).norm() / (1.0 + rhs.norm());
        if resid < 1e-8 {
            let bias = sol[(0, 0)];
            let ay = Vector::from_fn(n, |i, _| sol[(i + 1, 0)] * y[i]);
            let (plane, support) = plane_from_dual(x, kernel, &k, &ay, bias);
            return Ok(TrainedHbc {
                family: HbcFamily::Lssvm,
                n_inputs: x.ncols(),
                kernel,
                support,
                planes: vec![plane],
            });
        }
        jitter = if jitter == 0.0 { 1e-10 } else { jitter * 100.0 };
    }
    Err(Error::Numerical("LSSVM system is singular even after jitter".into()))
}

/// `e^{au} − au − 1`.
pub fn linex_loss(u: f64, a: f64) -> f64 {
    (a * u).exp() - a * u - 1.0
}

fn linex_grad(u: f64, a: f64) -> f64 {
    a * ((a * u).min(LINEX_EXP_CAP).exp() - 1.0)
}

/// Primal Linex-SVM objective `½‖w‖² + C Σ linex(1 − yᵢ(wᵀxᵢ + b))`.
pub fn linex_objective(w: &Vector, b: f64, x: &Mat, y: &[f64], c: f64, a: f64) -> f64 {
    let f = x * w;
    0.5 * w.norm_squared()
        + c * (0..y.len()).map(|i| linex_loss(1.0 - y[i] * (f[i] + b), a)).sum::<f64>()
}

/// Linex-SVM by momentum SGD on `θ = [w; b]` (linear) or `θ = [β; b]` with
/// `f(x) = Σ βⱼ k(x, xⱼ) + b` (kernel). The per-batch gradient is an unbiased
/// estimate of the objective divided by n.
pub(super) fn fit_linex(x: &Mat, y: &[f64], h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    let n = y.len();
    let (c, a) = (h.c, h.a);
    let (design, reg): (Mat, Option<Mat>) = match h.kernel {
        None => (x.clone(), None),
        Some(k) => {
            let km = k.matrix(x, x)?;
            (km.clone(), Some(km))
        }
    };
    let p = design.ncols();
    // augmented rows [φ(x), 1]
    let aug = Mat::from_fn(n, p + 1, |i, j| if j < p { design[(i, j)] } else { 1.0 });
    let max_row = aug.row_iter().map(|r| r.norm_squared()).fold(0.0, f64::max);
    let reg_curv = match &reg {
        None => 1.0,
        Some(km) => km.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max),
    };
    let lipschitz = reg_curv / n as f64 + c * a * a * max_row;
    let params = SgdParams {
        learning_rate: 1.0 / lipschitz,
        ..h.sgd
    };
    let init = Vector::from_element(p + 1, h.sgd.initial_value);
    let grad = |theta: &Vector, batch: &[usize]| -> Vector {
        let mut g = Vector::zeros(p + 1);
        let body = theta.rows(0, p);
        match &reg {
            None => g.rows_mut(0, p).copy_from(&(body / n as f64)),
            Some(km) => g.rows_mut(0, p).copy_from(&((km * body) / n as f64)),
        }
        let scale = c / batch.len() as f64;
        for &i in batch {
            let row = aug.row(i);
            let f = (row * theta)[0];
            let u = 1.0 - y[i] * f;
            let coef = -scale * linex_grad(u, a) * y[i];
            g.axpy(coef, &row.transpose(), 1.0);
        }
        g
    };
    let out = sgd_momentum(grad, &init, n, &params, seed)?;
    if out.diverged {
        return Err(Error::Numerical(format!(
            "Linex-SVM SGD diverged after {} updates",
            out.iterations
        )));
    }
    let theta = out.weights;
    let coef = theta.rows(0, p).into_owned();
    let bias = theta[p];
    let (norm, support) = match &reg {
        None => (coef.norm(), None),
        Some(km) => (coef.dot(&(km * &coef)).max(0.0).sqrt(), Some(x.clone())),
    };
    Ok(TrainedHbc {
        family: HbcFamily::LinexSvm,
        n_inputs: x.ncols(),
        kernel: h.kernel,
        support,
        planes: vec![Plane { coef, bias, norm }],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn linex_identities() {
        for a in [-10.0, -3.0, -1.0] {
            assert_eq!(linex_loss(0.0, a), 0.0);
            assert_eq!(linex_grad(0.0, a), 0.0);
            assert!(linex_loss(1.0, a) > 0.0 && linex_loss(-1.0, a) > 0.0);
        }
    }

    #[test]
    fn antipodal_svm_has_unit_weight_and_zero_bias() {
        let x = Mat::from_row_slice(2, 1, &[1.0, -1.0]);
        let m = fit_svm(&x, &[1.0, -1.0], 1e3, 0.0, None).unwrap();
        assert_relative_eq!(m.planes[0].coef[0], 1.0, epsilon = 1e-9);
        assert_relative_eq!(m.planes[0].bias, 0.0, epsilon = 1e-9);
        // margin 2/‖w‖
        assert_relative_eq!(2.0 / m.planes[0].norm, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn lssvm_two_point_closed_form() {
        let x = Mat::from_row_slice(2, 1, &[1.0, -1.0]);
        for c in [0.5, 1.0, 8.0] {
            let m = fit_lssvm(&x, &[1.0, -1.0], c, None).unwrap();
            // α = C/(2C+1) for both points, w = 2α, b = 0
            let alpha = c / (2.0 * c + 1.0);
            assert_relative_eq!(m.planes[0].coef[0], 2.0 * alpha, epsilon = 1e-12);
            assert_relative_eq!(m.planes[0].bias, 0.0, epsilon = 1e-12);
        }
    }
}
