use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numcore::kernel::squared_distances;
use crate::numcore::{Activation, Mat, Vector};
use crate::rng::{self, Rng};

/// One random, frozen hidden layer `act(XW + b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HiddenLayer {
    pub weights: Mat,
    pub bias: Vector,
    pub act: Activation,
}

impl HiddenLayer {
    /// W (`d_in × width`) is drawn before b, both Uniform(−1, 1).
    pub fn random(d_in: usize, width: usize, act: Activation, r: &mut Rng) -> Self {
        let weights = Mat::from_fn(d_in, width, |_, _| r.random_range(-1.0..1.0));
        let bias = Vector::from_fn(width, |_, _| r.random_range(-1.0..1.0));
        Self { weights, bias, act }
    }

    pub fn width(&self) -> usize {
        self.bias.len()
    }

    pub fn forward(&self, x: &Mat) -> Mat {
        let mut z = x * &self.weights;
        for mut row in z.row_iter_mut() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.act.apply(*v + self.bias[j]);
            }
        }
        z
    }
}

pub fn hstack(blocks: &[&Mat]) -> Mat {
    let n = blocks.first().map_or(0, |b| b.nrows());
    let d: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Mat::zeros(n, d);
    let mut off = 0;
    for b in blocks {
        out.view_mut((0, off), (n, b.ncols())).copy_from(*b);
        off += b.ncols();
    }
    out
}

const KMEANS_ITERS: usize = 100;
const KMEANS_ATTEMPTS: u64 = 5;

/// Lloyd's k-means from `k` distinct random rows. An empty cluster restarts with a
/// fresh stream, at most five times.
pub fn kmeans(x: &Mat, k: usize, seed: u64) -> Result<Mat> {
    let n = x.nrows();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k-means needs 1 <= k <= {n}, got {k}"
        )));
    }
    'attempt: for attempt in 0..KMEANS_ATTEMPTS {
        let mut r = rng::stream(seed, 0xC0 + attempt);
        let picks = rand::seq::index::sample(&mut r, n, k);
        let mut centers = x.select_rows(picks.iter().collect::<Vec<_>>().iter());
        let mut assign = vec![usize::MAX; n];
        for _ in 0..KMEANS_ITERS {
            let d2 = squared_distances(x, &centers)?;
            let mut changed = false;
            for i in 0..n {
                let row = d2.row(i);
                let best = (0..k)
                    .min_by(|&a, &b| row[a].total_cmp(&row[b]))
                    .expect("k >= 1");
                if assign[i] != best {
                    assign[i] = best;
                    changed = true;
                }
            }
            let mut sums = Mat::zeros(k, x.ncols());
            let mut counts = vec![0usize; k];
            for i in 0..n {
                counts[assign[i]] += 1;
                let mut s = sums.row_mut(assign[i]);
                s += x.row(i);
            }
            if counts.contains(&0) {
                log::debug!("k-means attempt {attempt}: empty cluster, reseeding");
                continue 'attempt;
            }
            for c in 0..k {
                let mean = sums.row(c) / counts[c] as f64;
                centers.row_mut(c).copy_from(&mean);
            }
            if !changed {
                break;
            }
        }
        return Ok(centers);
    }
    Err(Error::NotConverged(format!(
        "k-means left a cluster empty after {KMEANS_ATTEMPTS} attempts"
    )))
}

/// First-order Takagi–Sugeno subsystem: Gaussian rules with unit width, normalized
/// firing strengths, linear consequents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyGroup {
    /// One rule center per row.
    pub centers: Mat,
    /// Row r holds the consequent coefficients of rule r, the last entry being the intercept.
    pub consequents: Mat,
}

impl FuzzyGroup {
    pub fn fit(x: &Mat, rules: usize, seed: u64, r: &mut Rng) -> Result<Self> {
        let centers = kmeans(x, rules, seed)?;
        let consequents = Mat::from_fn(rules, x.ncols() + 1, |_, _| r.random_range(-1.0..1.0));
        Ok(Self {
            centers,
            consequents,
        })
    }

    /// Normalized firing strengths, one row per sample.
    pub fn firing(&self, x: &Mat) -> Result<Mat> {
        let mut d2 = squared_distances(x, &self.centers)?;
        for mut row in d2.row_iter_mut() {
            let m = row.iter().cloned().fold(f64::INFINITY, f64::min);
            let mut total = 0.0;
            for v in row.iter_mut() {
                *v = (-(*v - m)).exp();
                total += *v;
            }
            row /= total;
        }
        Ok(d2)
    }

    /// Rule outputs `ω_r(x)·z_r(x)`, `n × rules`.
    pub fn forward(&self, x: &Mat) -> Result<Mat> {
        let w = self.firing(x)?;
        let d = x.ncols();
        let mut out = w;
        for i in 0..x.nrows() {
            for r in 0..self.centers.nrows() {
                let coef = self.consequents.row(r);
                let mut z = coef[d];
                for j in 0..d {
                    z += coef[j] * x[(i, j)];
                }
                out[(i, r)] *= z;
            }
        }
        Ok(out)
    }
}
