//! Hyperplane classifiers in linear (primal) and kernel form.

mod single;
mod twin;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataio::Dataset;
use crate::error::{Error, Result};
use crate::numcore::{Kernel, Mat, SgdParams, Vector};
use crate::rnn::sign_label;

pub use single::{linex_loss, linex_objective};
pub use twin::TWIN_JITTER;

/// Gap above which a dual solution is rejected.
pub const KKT_TOLERANCE: f64 = 1e-6;
const QP_TOL: f64 = 1e-9;
const QP_MAX_ITER: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HbcFamily {
    Svm,
    Tsvm,
    IfTsvm,
    Lssvm,
    Lstsvm,
    LinexSvm,
    PinSvm,
    PinGtsvm,
}

impl HbcFamily {
    pub const ALL: [HbcFamily; 8] = [
        HbcFamily::Svm,
        HbcFamily::Tsvm,
        HbcFamily::IfTsvm,
        HbcFamily::Lssvm,
        HbcFamily::Lstsvm,
        HbcFamily::LinexSvm,
        HbcFamily::PinSvm,
        HbcFamily::PinGtsvm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HbcFamily::Svm => "SVM",
            HbcFamily::Tsvm => "TSVM",
            HbcFamily::IfTsvm => "IFTSVM",
            HbcFamily::Lssvm => "LSSVM",
            HbcFamily::Lstsvm => "LSTSVM",
            HbcFamily::LinexSvm => "Linex-SVM",
            HbcFamily::PinSvm => "Pin-SVM",
            HbcFamily::PinGtsvm => "Pin-GTSVM",
        }
    }

    pub fn is_twin(self) -> bool {
        matches!(
            self,
            HbcFamily::Tsvm | HbcFamily::IfTsvm | HbcFamily::Lstsvm | HbcFamily::PinGtsvm
        )
    }
}

impl fmt::Display for HbcFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hyper-parameters of the hyperplane classifiers. Each family reads only its own fields.
///
/// `kernel: None` selects the primal linear form (the `-L` models); `Some(kernel)`
/// selects the kernel form (`-K` with a Gaussian kernel; an explicit linear
/// kernel runs the kernel code path on inner products).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HbcHyper {
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub tau: f64,
    pub tau1: f64,
    pub tau2: f64,
    /// Linex asymmetry, negative.
    pub a: f64,
    /// Kernel width of the intuitionistic fuzzy scores.
    pub mu: f64,
    pub sgd: SgdParams,
    pub kernel: Option<Kernel>,
}

impl Default for HbcHyper {
    fn default() -> Self {
        Self {
            c: 1.0,
            c1: 1.0,
            c2: 1.0,
            tau: 0.0,
            tau1: 0.0,
            tau2: 0.0,
            a: -1.0,
            mu: 1.0,
            sgd: SgdParams::default(),
            kernel: None,
        }
    }
}

impl HbcHyper {
    pub fn validate(&self, family: HbcFamily) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
            }
        };
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must lie in [0, 1], got {v}")))
            }
        };
        match family {
            HbcFamily::Svm | HbcFamily::Lssvm => positive("C", self.c)?,
            HbcFamily::PinSvm => {
                positive("C", self.c)?;
                unit("tau", self.tau)?;
            }
            HbcFamily::LinexSvm => {
                positive("C", self.c)?;
                if !(self.a < 0.0) || !self.a.is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "Linex parameter a must be negative, got {}",
                        self.a
                    )));
                }
                self.sgd.validate()?;
            }
            HbcFamily::Tsvm | HbcFamily::Lstsvm => {
                positive("C1", self.c1)?;
                positive("C2", self.c2)?;
            }
            HbcFamily::IfTsvm => {
                positive("C1", self.c1)?;
                positive("C2", self.c2)?;
                positive("mu", self.mu)?;
            }
            HbcFamily::PinGtsvm => {
                positive("C1", self.c1)?;
                positive("C2", self.c2)?;
                unit("tau1", self.tau1)?;
                unit("tau2", self.tau2)?;
            }
        }
        if let Some(Kernel::Gaussian { sigma }) = self.kernel {
            positive("sigma", sigma)?;
        }
        Ok(())
    }
}

/// `f(x) = φ(x)·coef + bias`, with `φ(x) = x` (linear form) or the kernel row
/// against the retained support data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub coef: Vector,
    pub bias: f64,
    /// ‖w‖, or the RKHS norm `sqrt(coefᵀ K coef)` in kernel form.
    pub norm: f64,
}

/// A fitted hyperplane classifier: one plane, or two for the twin families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedHbc {
    pub family: HbcFamily,
    pub n_inputs: usize,
    pub kernel: Option<Kernel>,
    /// Retained training rows for kernel evaluation.
    pub support: Option<Mat>,
    pub planes: Vec<Plane>,
}

impl TrainedHbc {
    fn features(&self, x: &Mat) -> Result<Mat> {
        if x.ncols() != self.n_inputs {
            return Err(Error::DimensionMismatch {
                expected: self.n_inputs,
                got: x.ncols(),
            });
        }
        match (&self.kernel, &self.support) {
            (Some(k), Some(s)) => k.matrix(x, s),
            _ => Ok(x.clone()),
        }
    }

    /// Raw plane values `f_k(x)`, `n × planes`.
    pub fn plane_values(&self, x: &Mat) -> Result<Mat> {
        let phi = self.features(x)?;
        let mut out = Mat::zeros(x.nrows(), self.planes.len());
        for (k, p) in self.planes.iter().enumerate() {
            let mut col = &phi * &p.coef;
            col.add_scalar_mut(p.bias);
            out.set_column(k, &col);
        }
        Ok(out)
    }

    /// Labels (±1) and decision values. Twin families score `d₋ − d₊`, the
    /// difference of normalized distances to the two planes.
    pub fn predict(&self, x: &Mat) -> Result<(Vec<f64>, Vec<f64>)> {
        let f = self.plane_values(x)?;
        let scores: Vec<f64> = if self.planes.len() == 2 {
            let n_pos = self.planes[0].norm.max(1e-12);
            let n_neg = self.planes[1].norm.max(1e-12);
            f.row_iter()
                .map(|r| r[1].abs() / n_neg - r[0].abs() / n_pos)
                .collect()
        } else {
            f.column(0).iter().cloned().collect()
        };
        let labels = scores.iter().map(|s| sign_label(*s)).collect();
        Ok((labels, scores))
    }
}

/// Trains `family` on a raw matrix with ±1 labels.
pub fn fit(family: HbcFamily, x: &Mat, labels: &[f64], h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    h.validate(family)?;
    crate::rnn::check_training_input(x, labels, true)?;
    match family {
        HbcFamily::Svm => single::fit_svm(x, labels, h.c, 0.0, h.kernel),
        HbcFamily::PinSvm => single::fit_svm(x, labels, h.c, h.tau, h.kernel),
        HbcFamily::Lssvm => single::fit_lssvm(x, labels, h.c, h.kernel),
        HbcFamily::LinexSvm => single::fit_linex(x, labels, h, seed),
        HbcFamily::Tsvm => twin::fit_tsvm(x, labels, h, None, (0.0, 0.0)),
        HbcFamily::PinGtsvm => twin::fit_tsvm(x, labels, h, None, (h.tau1, h.tau2)),
        HbcFamily::IfTsvm => {
            let scores: Vec<f64> = crate::numcore::if_score(x, labels, h.mu)?
                .iter()
                .map(|s| s.score)
                .collect();
            twin::fit_tsvm(x, labels, h, Some(&scores), (0.0, 0.0))
        }
        HbcFamily::Lstsvm => twin::fit_lstsvm(x, labels, h),
    }
    .map(|mut m| {
        m.family = family;
        m
    })
}

/// IFTSVM with caller-supplied sample scores, used to check the reduction to TSVM.
pub fn fit_iftsvm_with_scores(x: &Mat, labels: &[f64], h: &HbcHyper, scores: &[f64]) -> Result<TrainedHbc> {
    h.validate(HbcFamily::Tsvm)?;
    crate::rnn::check_training_input(x, labels, true)?;
    if scores.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: scores.len(),
        });
    }
    let mut m = twin::fit_tsvm(x, labels, h, Some(scores), (0.0, 0.0))?;
    m.family = HbcFamily::IfTsvm;
    Ok(m)
}

pub fn train_svm(train: &Dataset, h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    fit(HbcFamily::Svm, &train.features, &train.labels, h, seed)
}

pub fn train_tsvm(train: &Dataset, h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    fit(HbcFamily::Tsvm, &train.features, &train.labels, h, seed)
}

pub fn train_lssvm(train: &Dataset, h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    fit(HbcFamily::Lssvm, &train.features, &train.labels, h, seed)
}

pub fn train_lstsvm(train: &Dataset, h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    fit(HbcFamily::Lstsvm, &train.features, &train.labels, h, seed)
}

pub fn train_iftsvm(train: &Dataset, h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    fit(HbcFamily::IfTsvm, &train.features, &train.labels, h, seed)
}

pub fn train_linex_svm(train: &Dataset, h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    fit(HbcFamily::LinexSvm, &train.features, &train.labels, h, seed)
}

pub fn train_pin_svm(train: &Dataset, h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    fit(HbcFamily::PinSvm, &train.features, &train.labels, h, seed)
}

pub fn train_pin_gtsvm(train: &Dataset, h: &HbcHyper, seed: u64) -> Result<TrainedHbc> {
    fit(HbcFamily::PinGtsvm, &train.features, &train.labels, h, seed)
}

pub fn predict_hbc(model: &TrainedHbc, x: &Mat) -> Result<(Vec<f64>, Vec<f64>)> {
    model.predict(x)
}

pub(crate) fn solve_dual(p: &crate::numcore::QpProblem) -> Result<Vector> {
    let s = crate::numcore::box_qp_solve(p, QP_TOL, QP_MAX_ITER)?;
    if s.kkt_residual >= KKT_TOLERANCE {
        return Err(Error::NotConverged(format!(
            "dual QP stopped with KKT residual {:.3e} after {} iterations",
            s.kkt_residual, s.iterations
        )));
    }
    Ok(s.x)
}
