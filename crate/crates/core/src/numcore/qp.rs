//! Convex quadratic programs with box bounds and at most one linear equality:
//!
//! ```text
//! minimize   ½ xᵀQx + qᵀx
//! subject to lower ≤ x ≤ upper,   aᵀx = b (optional)
//! ```
//!
//! Without the equality the solver is a primal active-set method that solves each
//! free face exactly, so badly conditioned duals (twin-SVM Gram blocks) still reach
//! tight KKT gaps. With it, an SMO-style two-variable decomposition with
//! second-order working-set selection, plus a periodic Newton step on the free face.

use super::linalg::{pinv, Mat, Vector};
use crate::error::{Error, Result};

const TAU: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct LinearEquality {
    pub coeffs: Vector,
    pub rhs: f64,
}

#[derive(Debug, Clone)]
pub struct QpProblem {
    pub quad: Mat,
    pub linear: Vector,
    pub lower: Vector,
    pub upper: Vector,
    pub equality: Option<LinearEquality>,
}

#[derive(Debug, Clone)]
pub struct QpSolution {
    pub x: Vector,
    pub objective: f64,
    /// Projected-gradient (box) or maximal-violating-pair (equality) KKT gap.
    pub kkt_residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl QpProblem {
    pub fn new(
        quad: Mat,
        linear: Vector,
        lower: Vector,
        upper: Vector,
        equality: Option<LinearEquality>,
    ) -> Result<Self> {
        let n = linear.len();
        if quad.shape() != (n, n) || lower.len() != n || upper.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: quad.nrows(),
            });
        }
        let scale = quad.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        for i in 0..n {
            for j in 0..i {
                if (quad[(i, j)] - quad[(j, i)]).abs() > 1e-10 * scale {
                    return Err(Error::InvalidArgument("QP matrix is not symmetric".into()));
                }
            }
        }
        let finite = quad.iter().chain(linear.iter()).all(|v| v.is_finite())
            && lower.iter().chain(upper.iter()).all(|v| v.is_finite());
        if !finite {
            return Err(Error::Numerical("QP data must be finite".into()));
        }
        if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
            return Err(Error::InvalidArgument("QP lower bound exceeds upper bound".into()));
        }
        if let Some(eq) = &equality {
            if eq.coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: eq.coeffs.len(),
                });
            }
            if eq.coeffs.iter().any(|a| *a == 0.0 || !a.is_finite()) || !eq.rhs.is_finite() {
                return Err(Error::InvalidArgument(
                    "equality coefficients must be finite and non-zero".into(),
                ));
            }
        }
        Ok(Self {
            quad,
            linear,
            lower,
            upper,
            equality,
        })
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn objective(&self, x: &Vector) -> f64 {
        0.5 * x.dot(&(&self.quad * x)) + self.linear.dot(x)
    }

    pub fn gradient(&self, x: &Vector) -> Vector {
        &self.quad * x + &self.linear
    }

    /// KKT gap of `x`, plus its worst bound/equality violation.
    pub fn kkt_residual(&self, x: &Vector) -> f64 {
        let g = self.gradient(x);
        let mut infeas = 0.0_f64;
        for i in 0..self.dim() {
            infeas = infeas.max(self.lower[i] - x[i]).max(x[i] - self.upper[i]);
        }
        if let Some(eq) = &self.equality {
            infeas = infeas.max((eq.coeffs.dot(x) - eq.rhs).abs());
        }
        let gap = match &self.equality {
            None => box_violation(self, x, &g).0,
            Some(eq) => pair_gap(self, x, &g, &eq.coeffs).0,
        };
        gap.max(infeas)
    }

    fn initial_point(&self) -> Result<Vector> {
        let n = self.dim();
        let mut x = Vector::from_fn(n, |i, _| 0.0_f64.clamp(self.lower[i], self.upper[i]));
        if let Some(eq) = &self.equality {
            let mut r = eq.rhs - eq.coeffs.dot(&x);
            for i in 0..n {
                if r == 0.0 {
                    break;
                }
                let a = eq.coeffs[i];
                let want = r / a;
                let dx = if want > 0.0 {
                    want.min(self.upper[i] - x[i])
                } else {
                    want.max(self.lower[i] - x[i])
                };
                x[i] += dx;
                r -= a * dx;
            }
            let scale = 1.0 + eq.rhs.abs() + eq.coeffs.amax();
            if r.abs() > 1e-12 * scale {
                return Err(Error::InvalidArgument(
                    "QP equality constraint is infeasible within the box".into(),
                ));
            }
        }
        Ok(x)
    }
}

/// Largest projected-gradient magnitude and its coordinate.
fn box_violation(p: &QpProblem, x: &Vector, g: &Vector) -> (f64, Option<usize>) {
    let mut best = 0.0;
    let mut arg = None;
    for i in 0..p.dim() {
        let pg = if p.lower[i] == p.upper[i] {
            0.0
        } else if x[i] <= p.lower[i] {
            g[i].min(0.0)
        } else if x[i] >= p.upper[i] {
            g[i].max(0.0)
        } else {
            g[i]
        };
        if pg.abs() > best {
            best = pg.abs();
            arg = Some(i);
        }
    }
    (best, arg)
}

fn can_raise(p: &QpProblem, x: &Vector, a: &Vector, i: usize) -> bool {
    if a[i] > 0.0 {
        x[i] < p.upper[i]
    } else {
        x[i] > p.lower[i]
    }
}

fn can_lower(p: &QpProblem, x: &Vector, a: &Vector, i: usize) -> bool {
    if a[i] > 0.0 {
        x[i] > p.lower[i]
    } else {
        x[i] < p.upper[i]
    }
}

/// Maximal violating pair gap `max_down gⱼ/aⱼ − min_up gᵢ/aᵢ` with the chosen pair.
fn pair_gap(p: &QpProblem, x: &Vector, g: &Vector, a: &Vector) -> (f64, Option<(usize, usize)>) {
    let n = p.dim();
    let mut up: Option<(usize, f64)> = None;
    let mut down_max = f64::NEG_INFINITY;
    for t in 0..n {
        let s = g[t] / a[t];
        if can_raise(p, x, a, t) && up.is_none_or(|(_, m)| s < m) {
            up = Some((t, s));
        }
        if can_lower(p, x, a, t) {
            down_max = down_max.max(s);
        }
    }
    let Some((i, m)) = up else {
        return (0.0, None);
    };
    if down_max == f64::NEG_INFINITY || down_max <= m {
        return (0.0_f64.max(down_max - m), None);
    }
    // second-order choice of the partner
    let mut best_j = None;
    let mut best_gain = f64::NEG_INFINITY;
    let qii = p.quad[(i, i)] / (a[i] * a[i]);
    for t in 0..n {
        if t == i || !can_lower(p, x, a, t) {
            continue;
        }
        let s = g[t] / a[t];
        let b = s - m;
        if b <= 0.0 {
            continue;
        }
        let mut curv = qii + p.quad[(t, t)] / (a[t] * a[t]) - 2.0 * p.quad[(i, t)] / (a[i] * a[t]);
        if curv <= 0.0 {
            curv = TAU;
        }
        let gain = b * b / curv;
        if gain > best_gain {
            best_gain = gain;
            best_j = Some(t);
        }
    }
    (down_max - m, best_j.map(|j| (i, j)))
}

/// Descent direction on the free face: the Newton step when the face Hessian is
/// positive definite, otherwise the pseudo-inverse step or, if the gradient has a
/// null-space component, the zero-curvature direction along it.
fn face_direction(p: &QpProblem, free: &[usize], g: &Vector) -> Option<(Vec<f64>, bool)> {
    let nf = free.len();
    let qff = Mat::from_fn(nf, nf, |r, c| p.quad[(free[r], free[c])]);
    let gf = Vector::from_fn(nf, |r, _| g[free[r]]);
    if let Some(ch) = qff.clone().cholesky() {
        let d = ch.solve(&(-&gf));
        return Some((d.iter().cloned().collect(), true));
    }
    let inv = pinv(&qff, 1e-12).ok()?;
    let d = &inv * (-&gf);
    let resid = &qff * &d + &gf;
    if resid.amax() <= 1e-9 * (1.0 + gf.amax()) {
        Some((d.iter().cloned().collect(), true))
    } else {
        Some(((-resid).iter().cloned().collect(), false))
    }
}

/// Primal active-set method for the box-only problem. Returns the iterate and the
/// number of face solves plus working-set changes.
fn box_active_set(p: &QpProblem, tol: f64, max_iter: usize) -> Result<(Vector, usize)> {
    let n = p.dim();
    let mut x = p.initial_point()?;
    let mut fixed: Vec<bool> = (0..n).map(|i| x[i] <= p.lower[i] || x[i] >= p.upper[i]).collect();
    let mut iterations = 0;
    let mut refinements = 0;
    while iterations < max_iter {
        let g = p.gradient(&x);
        let free: Vec<usize> = (0..n).filter(|&i| !fixed[i]).collect();
        let free_gap = free.iter().fold(0.0_f64, |m, &i| m.max(g[i].abs()));
        iterations += 1;
        if free_gap > tol && refinements < 3 {
            let Some((d, newton)) = face_direction(p, &free, &g) else {
                refinements = 3;
                continue;
            };
            if d.iter().any(|v| !v.is_finite()) || d.iter().all(|v| *v == 0.0) {
                refinements = 3;
                continue;
            }
            let mut t = if newton { 1.0 } else { f64::INFINITY };
            let mut blocking = None;
            for (k, &i) in free.iter().enumerate() {
                let lim = if d[k] > 0.0 {
                    (p.upper[i] - x[i]) / d[k]
                } else if d[k] < 0.0 {
                    (p.lower[i] - x[i]) / d[k]
                } else {
                    continue;
                };
                if lim < t {
                    t = lim;
                    blocking = Some(k);
                }
            }
            if !t.is_finite() {
                refinements = 3;
                continue;
            }
            for (k, &i) in free.iter().enumerate() {
                x[i] = (x[i] + t * d[k]).clamp(p.lower[i], p.upper[i]);
            }
            match blocking {
                Some(k) => {
                    let i = free[k];
                    x[i] = if d[k] > 0.0 { p.upper[i] } else { p.lower[i] };
                    fixed[i] = true;
                    refinements = 0;
                }
                None => refinements += 1,
            }
            continue;
        }
        // face is settled: release the bound variable with the worst multiplier
        let mut worst = (tol, None);
        for i in (0..n).filter(|&i| fixed[i] && p.lower[i] < p.upper[i]) {
            let v = if x[i] <= p.lower[i] { -g[i] } else { g[i] };
            if v > worst.0 {
                worst = (v, Some(i));
            }
        }
        match worst.1 {
            Some(i) => {
                fixed[i] = false;
                refinements = 0;
            }
            None => break,
        }
    }
    Ok((x, iterations))
}

fn pair_step(p: &QpProblem, x: &mut Vector, g: &mut Vector, a: &Vector, i: usize, j: usize) {
    let (ai, aj) = (a[i], a[j]);
    let b = g[j] / aj - g[i] / ai;
    let mut curv = p.quad[(i, i)] / (ai * ai) + p.quad[(j, j)] / (aj * aj)
        - 2.0 * p.quad[(i, j)] / (ai * aj);
    if curv <= 0.0 {
        curv = TAU;
    }
    let cap_i = if ai > 0.0 {
        (p.upper[i] - x[i]) * ai
    } else {
        (p.lower[i] - x[i]) * ai
    };
    let cap_j = if aj > 0.0 {
        (x[j] - p.lower[j]) * aj
    } else {
        (x[j] - p.upper[j]) * aj
    };
    let mut delta = b / curv;
    let mut hit_i = false;
    let mut hit_j = false;
    if delta >= cap_i {
        delta = cap_i;
        hit_i = true;
    }
    if delta >= cap_j {
        delta = cap_j;
        hit_j = true;
        hit_i = cap_i == cap_j;
    }
    if delta <= 0.0 {
        return;
    }
    let old_i = x[i];
    let old_j = x[j];
    x[i] = if hit_i {
        if ai > 0.0 {
            p.upper[i]
        } else {
            p.lower[i]
        }
    } else {
        (old_i + delta / ai).clamp(p.lower[i], p.upper[i])
    };
    x[j] = if hit_j {
        if aj > 0.0 {
            p.lower[j]
        } else {
            p.upper[j]
        }
    } else {
        (old_j - delta / aj).clamp(p.lower[j], p.upper[j])
    };
    g.axpy(x[i] - old_i, &p.quad.column(i), 1.0);
    g.axpy(x[j] - old_j, &p.quad.column(j), 1.0);
}

/// Newton step restricted to the free variables (keeping `aᵀx` fixed).
/// Returns `true` when the point moved.
fn face_newton_step(p: &QpProblem, x: &mut Vector, g: &mut Vector) -> bool {
    let free: Vec<usize> = (0..p.dim())
        .filter(|&i| x[i] > p.lower[i] && x[i] < p.upper[i])
        .collect();
    if free.is_empty() {
        return false;
    }
    let nf = free.len();
    let eq = p.equality.as_ref();
    let size = nf + usize::from(eq.is_some());
    let mut kkt = Mat::zeros(size, size);
    let mut rhs = Vector::zeros(size);
    for (r, &i) in free.iter().enumerate() {
        for (c, &j) in free.iter().enumerate() {
            kkt[(r, c)] = p.quad[(i, j)];
        }
        rhs[r] = -g[i];
        if let Some(eq) = eq {
            kkt[(r, nf)] = eq.coeffs[i];
            kkt[(nf, r)] = eq.coeffs[i];
        }
    }
    let Ok(inv) = pinv(&kkt, 1e-12) else {
        return false;
    };
    let sol = inv * rhs;
    let d: Vec<f64> = sol.iter().take(nf).cloned().collect();
    let slope: f64 = free.iter().zip(&d).map(|(&i, di)| g[i] * di).sum();
    if !(slope < 0.0) || d.iter().any(|v| !v.is_finite()) {
        return false;
    }
    let mut t = 1.0_f64;
    let mut blocking = None;
    for (k, &i) in free.iter().enumerate() {
        let di = d[k];
        let lim = if di > 0.0 {
            (p.upper[i] - x[i]) / di
        } else if di < 0.0 {
            (p.lower[i] - x[i]) / di
        } else {
            f64::INFINITY
        };
        if lim < t {
            t = lim;
            blocking = Some(k);
        }
    }
    if t <= 0.0 {
        return false;
    }
    let mut curv = 0.0;
    for (r, &i) in free.iter().enumerate() {
        for (c, &j) in free.iter().enumerate() {
            curv += d[r] * p.quad[(i, j)] * d[c];
        }
    }
    if t * slope + 0.5 * t * t * curv >= 0.0 {
        return false;
    }
    for (k, &i) in free.iter().enumerate() {
        x[i] = (x[i] + t * d[k]).clamp(p.lower[i], p.upper[i]);
    }
    if let Some(k) = blocking {
        let i = free[k];
        x[i] = if d[k] > 0.0 { p.upper[i] } else { p.lower[i] };
    }
    *g = p.gradient(x);
    true
}

/// Solves `p` to a KKT gap of `tol` or until `max_iter` single/pair updates.
///
/// Hitting the cap is not an error: the best iterate comes back with `converged = false`.
pub fn box_qp_solve(p: &QpProblem, tol: f64, max_iter: usize) -> Result<QpSolution> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("QP tolerance must be positive".into()));
    }
    let n = p.dim();
    let mut x = p.initial_point()?;
    let mut g = p.gradient(&x);
    if n == 0 {
        return Ok(QpSolution {
            objective: 0.0,
            x,
            kkt_residual: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    let Some(eq) = &p.equality else {
        let (x, iterations) = box_active_set(p, tol, max_iter)?;
        let kkt_residual = p.kkt_residual(&x);
        return Ok(QpSolution {
            objective: p.objective(&x),
            x,
            kkt_residual,
            iterations,
            converged: kkt_residual <= tol,
        });
    };
    let newton_every = (5 * n).max(50);
    let refresh_every = (50 * n).max(1000);
    let mut iterations = 0;
    let mut since_newton = 0;
    let mut converged = false;
    loop {
        let (resid, step) = pair_gap(p, &x, &g, &eq.coeffs);
        if resid <= tol {
            // confirm against a freshly computed gradient
            let fresh = p.gradient(&x);
            if (&fresh - &g).amax() <= 0.1 * tol {
                converged = true;
                break;
            }
            g = fresh;
            continue;
        }
        if iterations >= max_iter {
            break;
        }
        if since_newton >= newton_every {
            since_newton = 0;
            if face_newton_step(p, &mut x, &mut g) {
                continue;
            }
        }
        match step {
            Some((i, j)) => pair_step(p, &mut x, &mut g, &eq.coeffs, i, j),
            None => {
                // violation without an admissible partner: only a Newton step can help
                if !face_newton_step(p, &mut x, &mut g) {
                    break;
                }
            }
        }
        iterations += 1;
        since_newton += 1;
        if iterations % refresh_every == 0 {
            g = p.gradient(&x);
        }
    }
    let kkt_residual = p.kkt_residual(&x);
    Ok(QpSolution {
        objective: p.objective(&x),
        x,
        kkt_residual,
        iterations,
        converged: converged || kkt_residual <= tol,
    })
}
