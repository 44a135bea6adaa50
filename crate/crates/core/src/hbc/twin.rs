use super::{solve_dual, HbcFamily, HbcHyper, Plane, TrainedHbc};
use crate::error::{Error, Result};
use crate::numcore::linalg::spd_solve;
use crate::numcore::{Kernel, Mat, QpProblem, Vector};

/// Ridge added to the Gram blocks inverted by the twin families.
pub const TWIN_JITTER: f64 = 1e-7;

/// Augmented class blocks `[φ(A) e]`, `[φ(B) e]` plus the Gram matrix of the
/// support set (kernel form only).
struct Blocks {
    pos: Mat,
    neg: Mat,
    support_gram: Option<Mat>,
}

fn blocks(x: &Mat, y: &[f64], kernel: Option<Kernel>) -> Result<Blocks> {
    let pos_rows: Vec<usize> = (0..y.len()).filter(|&i| y[i] > 0.0).collect();
    let neg_rows: Vec<usize> = (0..y.len()).filter(|&i| y[i] <= 0.0).collect();
    let (phi, support_gram) = match kernel {
        None => (x.clone(), None),
        Some(k) => {
            let g = k.matrix(x, x)?;
            (g.clone(), Some(g))
        }
    };
    let augment = |rows: &[usize]| {
        let p = phi.ncols();
        Mat::from_fn(rows.len(), p + 1, |i, j| if j < p { phi[(rows[i], j)] } else { 1.0 })
    };
    Ok(Blocks {
        pos: augment(&pos_rows),
        neg: augment(&neg_rows),
        support_gram,
    })
}

fn jittered_gram(m: &Mat) -> Mat {
    let mut g = m.tr_mul(m);
    for i in 0..g.nrows() {
        g[(i, i)] += TWIN_JITTER;
    }
    g
}

fn symmetrize(m: Mat) -> Mat {
    (&m + m.transpose()) * 0.5
}

fn make_plane(u: &Vector, support_gram: Option<&Mat>) -> Plane {
    let p = u.len() - 1;
    let coef = u.rows(0, p).into_owned();
    let norm = match support_gram {
        None => coef.norm(),
        Some(k) => coef.dot(&(k * &coef)).max(0.0).sqrt(),
    };
    Plane {
        coef,
        bias: u[p],
        norm,
    }
}

fn assemble(x: &Mat, kernel: Option<Kernel>, b: &Blocks, u1: &Vector, u2: &Vector) -> TrainedHbc {
    let gram = b.support_gram.as_ref();
    TrainedHbc {
        family: HbcFamily::Tsvm,
        n_inputs: x.ncols(),
        kernel,
        support: kernel.map(|_| x.clone()),
        planes: vec![make_plane(u1, gram), make_plane(u2, gram)],
    }
}

/// Twin SVM and its weighted/pinball relatives.
///
/// Plane 1 (near the positives) solves the box QP with `Q = G(HᵀH + εI)⁻¹Gᵀ`
/// over the negatives and sets `u₁ = −(HᵀH + εI)⁻¹Gᵀα`; plane 2 mirrors it.
/// `weights` scales the upper bounds per sample; `taus` opens the lower bounds
/// to `−τC` (pinball).
pub(super) fn fit_tsvm(
    x: &Mat,
    y: &[f64],
    h: &HbcHyper,
    weights: Option<&[f64]>,
    taus: (f64, f64),
) -> Result<TrainedHbc> {
    let b = blocks(x, y, h.kernel)?;
    let (hm, gm) = (&b.pos, &b.neg);
    let pos_rows: Vec<usize> = (0..y.len()).filter(|&i| y[i] > 0.0).collect();
    let neg_rows: Vec<usize> = (0..y.len()).filter(|&i| y[i] <= 0.0).collect();
    let weight = |i: usize| weights.map_or(1.0, |w| w[i]);

    let plane = |own: &Mat, other: &Mat, other_rows: &[usize], c: f64, tau: f64| -> Result<(Vector, Vector)> {
        let inv_ot = spd_solve(&jittered_gram(own), &other.transpose())?;
        let q = symmetrize(other * &inv_ot);
        let m = other.nrows();
        let upper = Vector::from_fn(m, |k, _| c * weight(other_rows[k]));
        let lower = Vector::from_fn(m, |k, _| -tau * upper[k]);
        let p = QpProblem::new(q, Vector::from_element(m, -1.0), lower, upper, None)?;
        let alpha = solve_dual(&p)?;
        Ok((inv_ot * &alpha, alpha))
    };
    let (v1, _) = plane(hm, gm, &neg_rows, h.c1, taus.0)?;
    let (v2, _) = plane(gm, hm, &pos_rows, h.c2, taus.1)?;
    let u1 = -v1;
    Ok(assemble(x, h.kernel, &b, &u1, &v2))
}

/// Least-squares twin SVM: `u₁ = −(FᵀF + EᵀE/C₁)⁻¹Fᵀe`, `u₂ = (EᵀE + FᵀF/C₂)⁻¹Eᵀe`.
pub(super) fn fit_lstsvm(x: &Mat, y: &[f64], h: &HbcHyper) -> Result<TrainedHbc> {
    let b = blocks(x, y, h.kernel)?;
    let (e, f) = (&b.pos, &b.neg);
    let ete = e.tr_mul(e);
    let ftf = f.tr_mul(f);
    let solve = |g: Mat, rhs: Mat| -> Result<Vector> {
        let mut g = symmetrize(g);
        for i in 0..g.nrows() {
            g[(i, i)] += TWIN_JITTER;
        }
        let u = spd_solve(&g, &rhs)?;
        let resid = (&g * &u - &rhs).norm() / (1.0 + rhs.norm());
        if resid >= 1e-8 {
            return Err(Error::Numerical(format!("LSTSVM system residual {resid:.3e}")));
        }
        Ok(u.column(0).into_owned())
    };
    let u1 = -solve(&ftf + &ete / h.c1, f.tr_mul(&Mat::from_element(f.nrows(), 1, 1.0)))?;
    let u2 = solve(&ete + &ftf / h.c2, e.tr_mul(&Mat::from_element(e.nrows(), 1, 1.0)))?;
    Ok(assemble(x, h.kernel, &b, &u1, &u2))
}
