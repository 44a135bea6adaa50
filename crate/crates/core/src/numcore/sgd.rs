//! Mini-batch stochastic gradient descent with classical momentum.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::linalg::Vector;
use crate::error::{Error, Result};
use crate::rng;

/// Optimizer constants. Defaults are the fixed values of the Linex-SVM grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SgdParams {
    /// Value every weight starts from.
    pub initial_value: f64,
    /// Per-epoch decay: step = learning_rate / (1 + decay · epoch).
    pub decay: f64,
    /// Stop once a single update moves the parameters by less than this.
    pub epsilon: f64,
    pub momentum: f64,
    /// Cap on mini-batch updates.
    pub max_it: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
}

impl Default for SgdParams {
    fn default() -> Self {
        Self {
            initial_value: 0.0,
            decay: 0.1,
            epsilon: 1e-8,
            momentum: 0.6,
            max_it: 5000,
            batch_size: 100,
            learning_rate: 0.1,
        }
    }
}

impl SgdParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.batch_size >= 1
            && self.max_it >= 1
            && self.epsilon > 0.0
            && (0.0..1.0).contains(&self.momentum)
            && self.decay >= 0.0
            && self.learning_rate > 0.0
            && self.initial_value.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid SGD parameters: {self:?}")))
        }
    }
}

#[derive(Debug, Clone)]
pub struct SgdOutcome {
    pub weights: Vector,
    pub iterations: usize,
    pub converged: bool,
    pub diverged: bool,
}

const DIVERGENCE_NORM: f64 = 1e12;
const SHUFFLE_STREAM: u64 = 0x5D;

/// Runs momentum SGD. `grad_fn(w, batch)` returns the gradient estimate for the
/// sample indices in `batch`; batches are reshuffled every epoch from `seed`.
pub fn sgd_momentum<F>(
    mut grad_fn: F,
    init: &Vector,
    n_samples: usize,
    params: &SgdParams,
    seed: u64,
) -> Result<SgdOutcome>
where
    F: FnMut(&Vector, &[usize]) -> Vector,
{
    params.validate()?;
    let mut rng = rng::stream(seed, SHUFFLE_STREAM);
    let mut order: Vec<usize> = (0..n_samples.max(1)).collect();
    let mut w = init.clone();
    let mut velocity = Vector::zeros(w.len());
    let mut iterations = 0;
    let mut epoch = 0usize;
    loop {
        order.shuffle(&mut rng);
        let step = params.learning_rate / (1.0 + params.decay * epoch as f64);
        for batch in order.chunks(params.batch_size) {
            let g = grad_fn(&w, batch);
            if g.len() != w.len() {
                return Err(Error::DimensionMismatch {
                    expected: w.len(),
                    got: g.len(),
                });
            }
            velocity = &velocity * params.momentum - g * step;
            w += &velocity;
            iterations += 1;
            let norm = w.norm();
            if !norm.is_finite() || norm > DIVERGENCE_NORM {
                return Ok(SgdOutcome {
                    weights: w,
                    iterations,
                    converged: false,
                    diverged: true,
                });
            }
            if velocity.norm() < params.epsilon {
                return Ok(SgdOutcome {
                    weights: w,
                    iterations,
                    converged: true,
                    diverged: false,
                });
            }
            if iterations >= params.max_it {
                return Ok(SgdOutcome {
                    weights: w,
                    iterations,
                    converged: false,
                    diverged: false,
                });
            }
        }
        epoch += 1;
    }
}
