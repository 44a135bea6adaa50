//! Confusion matrices and the five reported metrics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counts with +1 (SMC) as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }

    pub fn positives(&self) -> usize {
        self.tp + self.fn_
    }

    pub fn negatives(&self) -> usize {
        self.tn + self.fp
    }
}

pub fn confusion(y_true: &[f64], y_pred: &[f64]) -> Result<ConfusionMatrix> {
    if y_true.len() != y_pred.len() {
        return Err(Error::DimensionMismatch {
            expected: y_true.len(),
            got: y_pred.len(),
        });
    }
    let mut cm = ConfusionMatrix::default();
    for (&t, &p) in y_true.iter().zip(y_pred) {
        if (t != 1.0 && t != -1.0) || (p != 1.0 && p != -1.0) {
            return Err(Error::InvalidArgument(format!(
                "labels must be +1/-1, got true={t} pred={p}"
            )));
        }
        match (t > 0.0, p > 0.0) {
            (true, true) => cm.tp += 1,
            (false, false) => cm.tn += 1,
            (false, true) => cm.fp += 1,
            (true, false) => cm.fn_ += 1,
        }
    }
    Ok(cm)
}

/// Metrics as fractions in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub acc: f64,
    pub sens: f64,
    pub spec: f64,
    pub prec: f64,
    pub fmeasure: f64,
    pub cm: ConfusionMatrix,
    /// Set when some ratio had a zero denominator and was reported as 0.
    pub undefined: bool,
}

fn ratio(num: usize, den: usize, undefined: &mut bool) -> f64 {
    if den == 0 {
        *undefined = true;
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and sensitivity; 0 when both are 0.
pub fn f_measure(prec: f64, sens: f64) -> f64 {
    if prec + sens == 0.0 {
        0.0
    } else {
        2.0 * prec * sens / (prec + sens)
    }
}

pub fn metrics(cm: &ConfusionMatrix) -> Result<MetricReport> {
    if cm.total() == 0 {
        return Err(Error::InvalidArgument("empty confusion matrix".into()));
    }
    let mut undefined = false;
    let acc = (cm.tp + cm.tn) as f64 / cm.total() as f64;
    let sens = ratio(cm.tp, cm.tp + cm.fn_, &mut undefined);
    let spec = ratio(cm.tn, cm.tn + cm.fp, &mut undefined);
    let prec = ratio(cm.tp, cm.tp + cm.fp, &mut undefined);
    if prec + sens == 0.0 {
        undefined = true;
    }
    Ok(MetricReport {
        acc,
        sens,
        spec,
        prec,
        fmeasure: f_measure(prec, sens),
        cm: *cm,
        undefined,
    })
}

pub fn evaluate(y_true: &[f64], y_pred: &[f64]) -> Result<MetricReport> {
    metrics(&confusion(y_true, y_pred)?)
}

/// Half-up rounding to `decimals` places, applied to the decimal rendering so
/// that `62.295` becomes `62.30`.
pub fn round_half_up(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let shifted = x * scale;
    // nudge values that sit a hair below .5 because of binary representation
    let r = (shifted + shifted.signum() * 1e-9).abs();
    (r + 0.5).floor().copysign(x) / scale
}
