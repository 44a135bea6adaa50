use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};
use crate::numcore::Mat;
use crate::rng;

/// Floor applied to a column's standard deviation before dividing.
pub const STD_FLOOR: f64 = 1e-12;

const SPLIT_STREAM: u64 = 0x5B1;
const FOLD_STREAM: u64 = 0xF01D;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: 0.7,
            seed: 1,
            stratified: true,
        }
    }
}

fn test_count(n: usize, train_fraction: f64) -> usize {
    ((1.0 - train_fraction) * n as f64 + 1e-9).floor() as usize
}

fn class_indices(labels: &[f64]) -> [Vec<usize>; 2] {
    let pos = (0..labels.len()).filter(|&i| labels[i] > 0.0).collect();
    let neg = (0..labels.len()).filter(|&i| labels[i] <= 0.0).collect();
    [pos, neg]
}

/// Seeded train/test partition. Per class, `floor((1 − f)·n_c)` samples go to test.
///
/// Both halves keep the original row order.
pub fn split_train_test(ds: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset)> {
    let f = spec.train_fraction;
    if !(f > 0.0 && f < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "train fraction must lie in (0, 1), got {f}"
        )));
    }
    let mut r = rng::stream(spec.seed, SPLIT_STREAM);
    let groups: Vec<Vec<usize>> = if spec.stratified {
        class_indices(&ds.labels).into_iter().collect()
    } else {
        vec![(0..ds.n_samples()).collect()]
    };
    let mut train = Vec::new();
    let mut test = Vec::new();
    for mut g in groups {
        g.shuffle(&mut r);
        let nt = test_count(g.len(), f);
        test.extend_from_slice(&g[..nt]);
        train.extend_from_slice(&g[nt..]);
    }
    if train.is_empty() || test.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "split of {} samples at fraction {f} leaves an empty side",
            ds.n_samples()
        )));
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((ds.select_rows(&train), ds.select_rows(&test)))
}

/// Per-column z-scoring parameters fitted on training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalerParams {
    pub mean: Vec<f64>,
    /// Population standard deviation, floored at [`STD_FLOOR`].
    pub std: Vec<f64>,
    /// Columns whose raw standard deviation fell below the floor.
    pub constant_columns: Vec<usize>,
}

impl ScalerParams {
    pub fn fit(x: &Mat) -> Result<Self> {
        let n = x.nrows();
        if n == 0 {
            return Err(Error::Data("cannot standardize an empty matrix".into()));
        }
        let mut mean = Vec::with_capacity(x.ncols());
        let mut std = Vec::with_capacity(x.ncols());
        let mut constant_columns = Vec::new();
        for (j, col) in x.column_iter().enumerate() {
            let m = col.sum() / n as f64;
            let var = col.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / n as f64;
            let s = var.sqrt();
            if s < STD_FLOOR {
                constant_columns.push(j);
            }
            mean.push(m);
            std.push(s.max(STD_FLOOR));
        }
        Ok(Self {
            mean,
            std,
            constant_columns,
        })
    }

    pub fn transform(&self, x: &Mat) -> Result<Mat> {
        if x.ncols() != self.mean.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.len(),
                got: x.ncols(),
            });
        }
        Ok(Mat::from_fn(x.nrows(), x.ncols(), |i, j| {
            (x[(i, j)] - self.mean[j]) / self.std[j]
        }))
    }

    pub fn inverse_transform(&self, z: &Mat) -> Result<Mat> {
        if z.ncols() != self.mean.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.len(),
                got: z.ncols(),
            });
        }
        Ok(Mat::from_fn(z.nrows(), z.ncols(), |i, j| {
            z[(i, j)] * self.std[j] + self.mean[j]
        }))
    }

    /// One line per constant column, for the run log.
    pub fn report(&self, feature_names: &[String]) -> Vec<String> {
        self.constant_columns
            .iter()
            .map(|&j| {
                let name = feature_names.get(j).map(String::as_str).unwrap_or("?");
                format!("constant column {j} ({name}): std floored to {STD_FLOOR:e}")
            })
            .collect()
    }
}

/// Fits the scaler on `train` and applies it to both sets.
pub fn standardize(train: &Dataset, test: &Dataset) -> Result<(Dataset, Dataset, ScalerParams)> {
    if train.feature_names != test.feature_names {
        return Err(Error::Data("train and test feature columns differ".into()));
    }
    let params = ScalerParams::fit(&train.features)?;
    for line in params.report(&train.feature_names) {
        log::info!("{line}");
    }
    let tr = train.with_features(params.transform(&train.features)?)?;
    let te = test.with_features(params.transform(&test.features)?)?;
    Ok((tr, te, params))
}

/// Fold membership for k-fold cross-validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    pub k: usize,
    pub fold_of: Vec<usize>,
}

impl FoldAssignment {
    /// (training rows, validation rows) of fold `f`, both ascending.
    pub fn fold(&self, f: usize) -> (Vec<usize>, Vec<usize>) {
        let mut train = Vec::new();
        let mut val = Vec::new();
        for (i, &g) in self.fold_of.iter().enumerate() {
            if g == f {
                val.push(i)
            } else {
                train.push(i)
            }
        }
        (train, val)
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.k];
        for &g in &self.fold_of {
            s[g] += 1;
        }
        s
    }
}

/// Stratified k-fold: each class is shuffled and dealt round-robin, the dealing
/// position carrying over from one class to the next. Fold sizes differ by at most one.
pub fn kfold_indices(labels: &[f64], k: usize, seed: u64) -> Result<FoldAssignment> {
    let n = labels.len();
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k must lie in [2, {n}] for {n} samples, got {k}"
        )));
    }
    let mut r = rng::stream(seed, FOLD_STREAM);
    let mut fold_of = vec![0; n];
    let mut pos = 0;
    for mut g in class_indices(labels) {
        g.shuffle(&mut r);
        for i in g {
            fold_of[i] = pos % k;
            pos += 1;
        }
    }
    Ok(FoldAssignment { k, fold_of })
}
