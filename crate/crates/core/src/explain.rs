//! Shapley feature attribution against a single background point.
//!
//! A coalition's value is the model's raw score at the point whose in-coalition
//! features come from the explained instance and the rest from the background
//! mean.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numcore::Mat;
use crate::rng;

/// Largest dimension accepted by [`shapley_exact`].
pub const EXACT_MAX_FEATURES: usize = 12;

const PERM_STREAM: u64 = 0x5A_0000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapleyReport {
    /// `attributions[(i, j)]`: feature j on explained instance i.
    pub attributions: Mat,
    /// Standard error of each entry of `attributions` over permutations.
    pub std_errors: Mat,
    /// Model score at the background point.
    pub base_value: f64,
    /// Model score on each explained instance.
    pub instance_scores: Vec<f64>,
    pub n_permutations: usize,
    pub seed: u64,
    pub feature_names: Vec<String>,
}

impl ShapleyReport {
    pub fn n_features(&self) -> usize {
        self.attributions.ncols()
    }

    /// Mean attribution per feature over the explained set.
    pub fn mean_attribution(&self) -> Vec<f64> {
        let n = self.attributions.nrows() as f64;
        self.attributions.column_iter().map(|c| c.sum() / n).collect()
    }

    /// Mean absolute attribution per feature over the explained set.
    pub fn importance(&self) -> Vec<f64> {
        let n = self.attributions.nrows() as f64;
        self.attributions
            .column_iter()
            .map(|c| c.iter().map(|v| v.abs()).sum::<f64>() / n)
            .collect()
    }
}

/// Column means of `background`.
pub fn background_mean(background: &Mat) -> Result<Vec<f64>> {
    if background.nrows() == 0 {
        return Err(Error::InvalidArgument("background set is empty".into()));
    }
    let n = background.nrows() as f64;
    Ok(background.column_iter().map(|c| c.sum() / n).collect())
}

fn checked_scores<F>(f: &F, x: &Mat) -> Result<Vec<f64>>
where
    F: Fn(&Mat) -> Result<Vec<f64>>,
{
    let s = f(x)?;
    if s.len() != x.nrows() {
        return Err(Error::DimensionMismatch {
            expected: x.nrows(),
            got: s.len(),
        });
    }
    if let Some(i) = s.iter().position(|v| !v.is_finite()) {
        return Err(Error::Numerical(format!("model score is not finite on synthetic point {i}")));
    }
    Ok(s)
}

/// Permutation-sampling Shapley values for every row of `explain_set`.
///
/// For each sampled feature order the features are switched one at a time from
/// the background mean to the instance and the score change is credited to the
/// switched feature. Instance `i` draws its orders from its own stream, so the
/// result does not depend on thread scheduling.
pub fn shapley_sample<F>(
    score: &F,
    background: &[f64],
    explain_set: &Mat,
    n_perms: usize,
    seed: u64,
    feature_names: &[String],
) -> Result<ShapleyReport>
where
    F: Fn(&Mat) -> Result<Vec<f64>> + Sync,
{
    let d = background.len();
    if n_perms == 0 {
        return Err(Error::InvalidArgument("n_perms must be at least 1".into()));
    }
    if explain_set.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: explain_set.ncols(),
        });
    }
    if feature_names.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: feature_names.len(),
        });
    }
    if explain_set.nrows() == 0 {
        return Err(Error::InvalidArgument("explained set is empty".into()));
    }
    let base_point = Mat::from_row_slice(1, d, background);
    let base_value = checked_scores(score, &base_point)?[0];

    let per_instance: Vec<(Vec<f64>, Vec<f64>, f64)> = (0..explain_set.nrows())
        .into_par_iter()
        .map(|i| -> Result<(Vec<f64>, Vec<f64>, f64)> {
            let x = explain_set.row(i);
            let mut r = rng::stream(seed, PERM_STREAM + i as u64);
            let mut order: Vec<usize> = (0..d).collect();
            let mut sum = vec![0.0; d];
            let mut sum_sq = vec![0.0; d];
            let mut instance_score = f64::NAN;
            for _ in 0..n_perms {
                order.shuffle(&mut r);
                // row k has the first k features of `order` switched to the instance
                let mut path = Mat::zeros(d + 1, d);
                let mut z = background.to_vec();
                path.row_mut(0).copy_from_slice(&z);
                for (k, &j) in order.iter().enumerate() {
                    z[j] = x[j];
                    path.row_mut(k + 1).copy_from_slice(&z);
                }
                let s = checked_scores(score, &path)?;
                instance_score = s[d];
                for (k, &j) in order.iter().enumerate() {
                    let delta = s[k + 1] - s[k];
                    sum[j] += delta;
                    sum_sq[j] += delta * delta;
                }
            }
            let m = n_perms as f64;
            let mean: Vec<f64> = sum.iter().map(|s| s / m).collect();
            let se: Vec<f64> = if n_perms > 1 {
                (0..d)
                    .map(|j| {
                        let var = (sum_sq[j] - m * mean[j] * mean[j]).max(0.0) / (m - 1.0);
                        (var / m).sqrt()
                    })
                    .collect()
            } else {
                vec![f64::NAN; d]
            };
            Ok((mean, se, instance_score))
        })
        .collect::<Result<_>>()?;

    let n = explain_set.nrows();
    let attributions = Mat::from_fn(n, d, |i, j| per_instance[i].0[j]);
    let std_errors = Mat::from_fn(n, d, |i, j| per_instance[i].1[j]);
    Ok(ShapleyReport {
        attributions,
        std_errors,
        base_value,
        instance_scores: per_instance.iter().map(|p| p.2).collect(),
        n_permutations: n_perms,
        seed,
        feature_names: feature_names.to_vec(),
    })
}

/// Exact Shapley values of one instance by enumerating all `2^d` coalitions.
pub fn shapley_exact<F>(score: &F, background: &[f64], instance: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(&Mat) -> Result<Vec<f64>>,
{
    let d = background.len();
    if instance.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: instance.len(),
        });
    }
    if d > EXACT_MAX_FEATURES {
        return Err(Error::InvalidArgument(format!(
            "exact enumeration supports at most {EXACT_MAX_FEATURES} features, got {d}"
        )));
    }
    let n_sets = 1usize << d;
    let points = Mat::from_fn(n_sets, d, |s, j| if s >> j & 1 == 1 { instance[j] } else { background[j] });
    let v = checked_scores(score, &points)?;
    // weight(|S|) = |S|! (d − |S| − 1)! / d!
    let fact = |k: usize| (1..=k).map(|v| v as f64).product::<f64>();
    let weights: Vec<f64> = (0..d).map(|s| fact(s) * fact(d - s - 1) / fact(d)).collect();
    let mut phi = vec![0.0; d];
    for s in 0..n_sets {
        let size = s.count_ones() as usize;
        for (j, p) in phi.iter_mut().enumerate() {
            if s >> j & 1 == 0 {
                *p += weights[size] * (v[s | 1 << j] - v[s]);
            }
        }
    }
    Ok(phi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopFeatures {
    /// (feature name, mean |attribution|), most important first.
    pub features: Vec<(String, f64)>,
}

/// The `k` features with the largest mean absolute attribution; ties keep the
/// lower feature index first. `k` larger than the dimension returns every feature.
pub fn top_k_features(report: &ShapleyReport, k: usize) -> Result<TopFeatures> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let imp = report.importance();
    let mut order: Vec<usize> = (0..imp.len()).collect();
    order.sort_by(|&a, &b| imp[b].total_cmp(&imp[a]).then(a.cmp(&b)));
    Ok(TopFeatures {
        features: order
            .into_iter()
            .take(k)
            .map(|j| (report.feature_names[j].clone(), imp[j]))
            .collect(),
    })
}

/// Rows of the test set that are SMC (+1) and predicted as such.
pub fn correct_positive_rows(labels: &[f64], predicted: &[f64]) -> Vec<usize> {
    (0..labels.len())
        .filter(|&i| labels[i] > 0.0 && predicted[i] > 0.0)
        .collect()
}

/// `rank,feature,importance`.
pub fn top_features_csv(top: &TopFeatures) -> String {
    let mut s = String::from("rank,feature,importance\n");
    for (r, (name, v)) in top.features.iter().enumerate() {
        writeln!(s, "{},{},{}", r + 1, name, v).unwrap();
    }
    s
}

/// `feature,mean_attribution,mean_abs_attribution`, one row per feature.
pub fn attribution_long_csv(report: &ShapleyReport) -> String {
    let mut s = String::from("feature,mean_attribution,mean_abs_attribution\n");
    for ((name, m), a) in report
        .feature_names
        .iter()
        .zip(report.mean_attribution())
        .zip(report.importance())
    {
        writeln!(s, "{name},{m},{a}").unwrap();
    }
    s
}
