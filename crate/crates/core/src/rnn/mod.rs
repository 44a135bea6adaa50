//! Randomized-network classifiers: frozen random feature maps plus a closed-form
//! output-weight solve.

pub mod layers;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataio::Dataset;
use crate::error::{Error, Result};
use crate::numcore::kernel::squared_distances;
use crate::numcore::{
    if_score, penalized_solve, ridge_solve, weighted_ridge_solve, Activation, Mat,
};
use crate::rng;
use layers::{hstack, FuzzyGroup, HiddenLayer};

/// Neighbour rank used for the local scaling of the LFDA affinities.
pub const LFDA_NEIGHBORS: usize = 7;

const ENHANCEMENT_STREAM: u64 = 0xE0_0000;
const CONSEQUENT_STREAM: u64 = 0xF0_0000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RnnVariant {
    Rvfl,
    Elm,
    Mcvelm,
    Mvelm,
    IfRvfl,
    TotalVarRvfl,
    ClassVarRvfl,
    GeelmLda,
    GeelmLfda,
    Drvfl,
    Edrvfl,
    Bls,
    NfBls,
}

impl RnnVariant {
    pub const ALL: [RnnVariant; 13] = [
        RnnVariant::Rvfl,
        RnnVariant::Elm,
        RnnVariant::Mcvelm,
        RnnVariant::Mvelm,
        RnnVariant::IfRvfl,
        RnnVariant::ClassVarRvfl,
        RnnVariant::TotalVarRvfl,
        RnnVariant::GeelmLda,
        RnnVariant::GeelmLfda,
        RnnVariant::Drvfl,
        RnnVariant::Edrvfl,
        RnnVariant::Bls,
        RnnVariant::NfBls,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RnnVariant::Rvfl => "RVFL",
            RnnVariant::Elm => "ELM",
            RnnVariant::Mcvelm => "MCVELM",
            RnnVariant::Mvelm => "MVELM",
            RnnVariant::IfRvfl => "IFRVFL",
            RnnVariant::TotalVarRvfl => "Total-Var-RVFL",
            RnnVariant::ClassVarRvfl => "Class-Var-RVFL",
            RnnVariant::GeelmLda => "GEELM-LDA",
            RnnVariant::GeelmLfda => "GEELM-LFDA",
            RnnVariant::Drvfl => "dRVFL",
            RnnVariant::Edrvfl => "edRVFL",
            RnnVariant::Bls => "BLS",
            RnnVariant::NfBls => "NF-BLS",
        }
    }
}

impl fmt::Display for RnnVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scatter {
    Intraclass,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Graph {
    Lda,
    Lfda,
}

/// Hyper-parameters shared by the randomized networks. Each variant reads only
/// the fields it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RnnHyper {
    pub c: f64,
    pub n_hidden: usize,
    /// Activation grid index, 1..=9.
    pub act: usize,
    pub lambda: f64,
    pub mu: f64,
    pub layers: usize,
    pub n_feat_groups: usize,
    pub n_feat_nodes: usize,
    pub n_enh_groups: usize,
    pub n_enh_nodes: usize,
}

impl Default for RnnHyper {
    fn default() -> Self {
        Self {
            c: 1.0,
            n_hidden: 20,
            act: 3,
            lambda: 0.0,
            mu: 1.0,
            layers: 1,
            n_feat_groups: 5,
            n_feat_nodes: 5,
            n_enh_groups: 5,
            n_enh_nodes: 1,
        }
    }
}

impl RnnHyper {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(Error::InvalidArgument(format!("C must be positive, got {}", self.c)));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "lambda must be non-negative, got {}",
                self.lambda
            )));
        }
        let counts = [
            ("N", self.n_hidden),
            ("L", self.layers),
            ("feature groups", self.n_feat_groups),
            ("feature nodes", self.n_feat_nodes),
            ("enhancement groups", self.n_enh_groups),
            ("enhancement nodes", self.n_enh_nodes),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
        }
        Activation::from_index(self.act)?;
        Ok(())
    }

    fn activation(&self) -> Activation {
        Activation::from_index(self.act).expect("validated")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum Architecture {
    /// Single hidden layer; `direct` adds the input columns to the design matrix.
    Single { hidden: HiddenLayer, direct: bool },
    /// Stacked layers, one solve on `[X | H1 | … | HL]`.
    Deep { layers: Vec<HiddenLayer> },
    /// Stacked layers fed `[X | H(l−1)]`, one solve per layer on `[X | Hl]`.
    Ensemble { layers: Vec<HiddenLayer> },
    Broad {
        groups: Vec<HiddenLayer>,
        enhancement: HiddenLayer,
    },
    NeuroFuzzy {
        groups: Vec<FuzzyGroup>,
        enhancement: HiddenLayer,
    },
}

/// A fitted randomized network. Immutable; prediction is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedRnn {
    pub variant: RnnVariant,
    pub seed: u64,
    pub n_inputs: usize,
    arch: Architecture,
    /// Output weights, one block per design matrix (several only for edRVFL).
    pub beta: Vec<Mat>,
}

pub(crate) fn target_column(labels: &[f64]) -> Mat {
    Mat::from_column_slice(labels.len(), 1, labels)
}

/// Sign with the tie rule `0 → +1`.
#[inline]
pub fn sign_label(score: f64) -> f64 {
    if score >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn check_training_input(x: &Mat, labels: &[f64], need_both: bool) -> Result<()> {
    if x.nrows() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: x.nrows(),
            got: labels.len(),
        });
    }
    if x.nrows() == 0 {
        return Err(Error::Data("empty training set".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("training features contain NaN or Inf".into()));
    }
    if labels.iter().any(|l| *l != 1.0 && *l != -1.0) {
        return Err(Error::Data("labels must be +1/-1".into()));
    }
    if need_both {
        let pos = labels.iter().filter(|l| **l > 0.0).count();
        if pos == 0 || pos == labels.len() {
            return Err(Error::Data("both classes must be present in the training set".into()));
        }
    }
    Ok(())
}

/// Within-class (or total) scatter of the rows of `d`, normalized by the sample count.
pub fn scatter_matrix(d: &Mat, labels: &[f64], kind: Scatter) -> Mat {
    let n = d.nrows();
    let groups: Vec<Vec<usize>> = match kind {
        Scatter::Total => vec![(0..n).collect()],
        Scatter::Intraclass => vec![
            (0..n).filter(|&i| labels[i] > 0.0).collect(),
            (0..n).filter(|&i| labels[i] <= 0.0).collect(),
        ],
    };
    let mut s = Mat::zeros(d.ncols(), d.ncols());
    for g in groups.iter().filter(|g| !g.is_empty()) {
        let block = d.select_rows(g.iter());
        let mean = block.row_sum() / g.len() as f64;
        let mut centred = block;
        for mut row in centred.row_iter_mut() {
            row -= &mean;
        }
        s += centred.tr_mul(&centred);
    }
    s / n as f64
}

/// Laplacian `D − W` of the within-class graph with `W_ij = 1/n_c` for same-class pairs.
pub fn lda_laplacian(labels: &[f64]) -> Mat {
    let n = labels.len();
    let n_pos = labels.iter().filter(|l| **l > 0.0).count() as f64;
    let n_neg = n as f64 - n_pos;
    let w = Mat::from_fn(n, n, |i, j| {
        if (labels[i] > 0.0) == (labels[j] > 0.0) {
            if labels[i] > 0.0 {
                1.0 / n_pos
            } else {
                1.0 / n_neg
            }
        } else {
            0.0
        }
    });
    laplacian(&w)
}

/// Laplacian of the locality-weighted within-class graph: heat-kernel affinities
/// with local scaling by the distance to the `k`-th neighbour, divided by the class size.
pub fn lfda_laplacian(h: &Mat, labels: &[f64], k: usize) -> Result<Mat> {
    let n = h.nrows();
    let d2 = squared_distances(h, h)?;
    let kk = k.min(n.saturating_sub(1)).max(1);
    let scale: Vec<f64> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = d2.row(i).iter().cloned().collect();
            row.sort_by(f64::total_cmp);
            // row[0] is the point itself
            row.get(kk).copied().unwrap_or(0.0).sqrt().max(1e-12)
        })
        .collect();
    let n_pos = labels.iter().filter(|l| **l > 0.0).count() as f64;
    let n_neg = n as f64 - n_pos;
    let w = Mat::from_fn(n, n, |i, j| {
        if (labels[i] > 0.0) != (labels[j] > 0.0) {
            return 0.0;
        }
        let nc = if labels[i] > 0.0 { n_pos } else { n_neg };
        (-d2[(i, j)] / (scale[i] * scale[j])).exp() / nc
    });
    Ok(laplacian(&w))
}

fn laplacian(w: &Mat) -> Mat {
    let mut l = -w.clone();
    for i in 0..w.nrows() {
        l[(i, i)] += w.row(i).sum();
    }
    l
}

fn single_layer(x: &Mat, h: &RnnHyper, seed: u64) -> HiddenLayer {
    let mut r = rng::stream(seed, 0);
    HiddenLayer::random(x.ncols(), h.n_hidden, h.activation(), &mut r)
}

/// Trains any variant on a raw matrix; `labels` are ±1.
pub fn fit(variant: RnnVariant, x: &Mat, labels: &[f64], h: &RnnHyper, seed: u64) -> Result<TrainedRnn> {
    h.validate()?;
    let needs_both = !matches!(
        variant,
        RnnVariant::Rvfl | RnnVariant::Elm | RnnVariant::Drvfl | RnnVariant::Edrvfl | RnnVariant::Bls
    );
    check_training_input(x, labels, needs_both)?;
    let y = target_column(labels);
    let direct = !matches!(
        variant,
        RnnVariant::Elm | RnnVariant::Mcvelm | RnnVariant::Mvelm | RnnVariant::GeelmLda | RnnVariant::GeelmLfda
    );
    let (arch, beta) = match variant {
        RnnVariant::Rvfl
        | RnnVariant::Elm
        | RnnVariant::Mcvelm
        | RnnVariant::Mvelm
        | RnnVariant::TotalVarRvfl
        | RnnVariant::ClassVarRvfl
        | RnnVariant::IfRvfl
        | RnnVariant::GeelmLda
        | RnnVariant::GeelmLfda => {
            let hidden = single_layer(x, h, seed);
            let hx = hidden.forward(x);
            let d = if direct { hstack(&[x, &hx]) } else { hx.clone() };
            let beta = match variant {
                RnnVariant::Rvfl | RnnVariant::Elm => ridge_solve(&d, &y, h.c)?,
                RnnVariant::Mcvelm | RnnVariant::ClassVarRvfl => {
                    let s = scatter_matrix(&d, labels, Scatter::Intraclass) * h.lambda;
                    penalized_solve(&d, &y, h.c, &s)?
                }
                RnnVariant::Mvelm | RnnVariant::TotalVarRvfl => {
                    let s = scatter_matrix(&d, labels, Scatter::Total) * h.lambda;
                    penalized_solve(&d, &y, h.c, &s)?
                }
                RnnVariant::IfRvfl => {
                    let scores: Vec<f64> = if_score(x, labels, h.mu)?.iter().map(|s| s.score).collect();
                    if scores.iter().all(|s| *s == 0.0) {
                        return Err(Error::Numerical(
                            "every intuitionistic fuzzy score is zero".into(),
                        ));
                    }
                    weighted_ridge_solve(&d, &y, &scores, h.c)?
                }
                RnnVariant::GeelmLda | RnnVariant::GeelmLfda => {
                    let pos = labels.iter().filter(|l| **l > 0.0).count();
                    if pos < 2 || labels.len() - pos < 2 {
                        return Err(Error::Data("graph embedding needs at least two samples per class".into()));
                    }
                    let l = if variant == RnnVariant::GeelmLda {
                        lda_laplacian(labels)
                    } else {
                        lfda_laplacian(&hx, labels, LFDA_NEIGHBORS)?
                    };
                    let p = hx.tr_mul(&(l * &hx)) * h.lambda;
                    penalized_solve(&d, &y, h.c, &p)?
                }
                _ => unreachable!(),
            };
            (Architecture::Single { hidden, direct }, vec![beta])
        }
        RnnVariant::Drvfl => {
            let mut layers = Vec::with_capacity(h.layers);
            let mut blocks = vec![x.clone()];
            let mut input = x.clone();
            for l in 0..h.layers {
                let mut r = rng::stream(seed, l as u64);
                let layer = HiddenLayer::random(input.ncols(), h.n_hidden, h.activation(), &mut r);
                input = layer.forward(&input);
                blocks.push(input.clone());
                layers.push(layer);
            }
            let refs: Vec<&Mat> = blocks.iter().collect();
            let beta = ridge_solve(&hstack(&refs), &y, h.c)?;
            (Architecture::Deep { layers }, vec![beta])
        }
        RnnVariant::Edrvfl => {
            let mut layers = Vec::with_capacity(h.layers);
            let mut betas = Vec::with_capacity(h.layers);
            let mut prev: Option<Mat> = None;
            for l in 0..h.layers {
                let input = match &prev {
                    None => x.clone(),
                    Some(hp) => hstack(&[x, hp]),
                };
                let mut r = rng::stream(seed, l as u64);
                let layer = HiddenLayer::random(input.ncols(), h.n_hidden, h.activation(), &mut r);
                let hl = layer.forward(&input);
                betas.push(ridge_solve(&hstack(&[x, &hl]), &y, h.c)?);
                prev = Some(hl);
                layers.push(layer);
            }
            (Architecture::Ensemble { layers }, betas)
        }
        RnnVariant::Bls => {
            let groups: Vec<HiddenLayer> = (0..h.n_feat_groups)
                .map(|g| {
                    let mut r = rng::stream(seed, g as u64);
                    HiddenLayer::random(x.ncols(), h.n_feat_nodes, h.activation(), &mut r)
                })
                .collect();
            let z_blocks: Vec<Mat> = groups.iter().map(|g| g.forward(x)).collect();
            let z = hstack(&z_blocks.iter().collect::<Vec<_>>());
            let mut r = rng::stream(seed, ENHANCEMENT_STREAM);
            let enhancement =
                HiddenLayer::random(z.ncols(), h.n_enh_groups * h.n_enh_nodes, h.activation(), &mut r);
            let e = enhancement.forward(&z);
            let beta = ridge_solve(&hstack(&[&z, &e]), &y, h.c)?;
            (Architecture::Broad { groups, enhancement }, vec![beta])
        }
        RnnVariant::NfBls => {
            let groups = (0..h.n_feat_groups)
                .map(|g| {
                    let mut r = rng::stream(seed, CONSEQUENT_STREAM + g as u64);
                    FuzzyGroup::fit(x, h.n_feat_nodes, rng::mix(&[seed, g as u64]), &mut r)
                })
                .collect::<Result<Vec<_>>>()?;
            let z_blocks = groups.iter().map(|g| g.forward(x)).collect::<Result<Vec<_>>>()?;
            let z = hstack(&z_blocks.iter().collect::<Vec<_>>());
            let mut r = rng::stream(seed, ENHANCEMENT_STREAM);
            let enhancement =
                HiddenLayer::random(z.ncols(), h.n_enh_groups * h.n_enh_nodes, h.activation(), &mut r);
            let e = enhancement.forward(&z);
            let beta = ridge_solve(&hstack(&[&z, &e]), &y, h.c)?;
            (Architecture::NeuroFuzzy { groups, enhancement }, vec![beta])
        }
    };
    Ok(TrainedRnn {
        variant,
        seed,
        n_inputs: x.ncols(),
        arch,
        beta,
    })
}

impl TrainedRnn {
    /// Design matrices for `x`, one per output-weight block.
    pub fn design(&self, x: &Mat) -> Result<Vec<Mat>> {
        if x.ncols() != self.n_inputs {
            return Err(Error::DimensionMismatch {
                expected: self.n_inputs,
                got: x.ncols(),
            });
        }
        Ok(match &self.arch {
            Architecture::Single { hidden, direct } => {
                let hx = hidden.forward(x);
                vec![if *direct { hstack(&[x, &hx]) } else { hx }]
            }
            Architecture::Deep { layers } => {
                let mut blocks = vec![x.clone()];
                let mut input = x.clone();
                for l in layers {
                    input = l.forward(&input);
                    blocks.push(input.clone());
                }
                vec![hstack(&blocks.iter().collect::<Vec<_>>())]
            }
            Architecture::Ensemble { layers } => {
                let mut out = Vec::with_capacity(layers.len());
                let mut prev: Option<Mat> = None;
                for l in layers {
                    let input = match &prev {
                        None => x.clone(),
                        Some(hp) => hstack(&[x, hp]),
                    };
                    let hl = l.forward(&input);
                    out.push(hstack(&[x, &hl]));
                    prev = Some(hl);
                }
                out
            }
            Architecture::Broad { groups, enhancement } => {
                let z_blocks: Vec<Mat> = groups.iter().map(|g| g.forward(x)).collect();
                let z = hstack(&z_blocks.iter().collect::<Vec<_>>());
                let e = enhancement.forward(&z);
                vec![hstack(&[&z, &e])]
            }
            Architecture::NeuroFuzzy { groups, enhancement } => {
                let z_blocks = groups.iter().map(|g| g.forward(x)).collect::<Result<Vec<_>>>()?;
                let z = hstack(&z_blocks.iter().collect::<Vec<_>>());
                let e = enhancement.forward(&z);
                vec![hstack(&[&z, &e])]
            }
        })
    }

    /// Per-block decision values, `n × blocks`.
    pub fn layer_scores(&self, x: &Mat) -> Result<Mat> {
        let designs = self.design(x)?;
        let mut out = Mat::zeros(x.nrows(), designs.len());
        for (k, (d, b)) in designs.iter().zip(&self.beta).enumerate() {
            out.set_column(k, &(d * b).column(0));
        }
        Ok(out)
    }

    /// Labels (±1) and scores. For ensembles the label is the majority vote of
    /// the members (ties → +1) and the score is the mean member score.
    pub fn predict(&self, x: &Mat) -> Result<(Vec<f64>, Vec<f64>)> {
        let per_layer = self.layer_scores(x)?;
        let k = per_layer.ncols() as f64;
        let mut labels = Vec::with_capacity(x.nrows());
        let mut scores = Vec::with_capacity(x.nrows());
        for row in per_layer.row_iter() {
            let votes: f64 = row.iter().map(|s| sign_label(*s)).sum();
            scores.push(row.sum() / k);
            labels.push(sign_label(votes));
        }
        Ok((labels, scores))
    }

    pub fn n_blocks(&self) -> usize {
        self.beta.len()
    }
}

pub fn train_rvfl(train: &Dataset, h: &RnnHyper, seed: u64) -> Result<TrainedRnn> {
    fit(RnnVariant::Rvfl, &train.features, &train.labels, h, seed)
}

pub fn train_elm(train: &Dataset, h: &RnnHyper, seed: u64) -> Result<TrainedRnn> {
    fit(RnnVariant::Elm, &train.features, &train.labels, h, seed)
}

pub fn train_variance_elm(train: &Dataset, h: &RnnHyper, seed: u64, scatter: Scatter) -> Result<TrainedRnn> {
    let v = match scatter {
        Scatter::Intraclass => RnnVariant::Mcvelm,
        Scatter::Total => RnnVariant::Mvelm,
    };
    fit(v, &train.features, &train.labels, h, seed)
}

pub fn train_variance_rvfl(train: &Dataset, h: &RnnHyper, seed: u64, scatter: Scatter) -> Result<TrainedRnn> {
    let v = match scatter {
        Scatter::Intraclass => RnnVariant::ClassVarRvfl,
        Scatter::Total => RnnVariant::TotalVarRvfl,
    };
    fit(v, &train.features, &train.labels, h, seed)
}

pub fn train_ifrvfl(train: &Dataset, h: &RnnHyper, seed: u64) -> Result<TrainedRnn> {
    fit(RnnVariant::IfRvfl, &train.features, &train.labels, h, seed)
}

pub fn train_geelm(train: &Dataset, h: &RnnHyper, seed: u64, graph: Graph) -> Result<TrainedRnn> {
    let v = match graph {
        Graph::Lda => RnnVariant::GeelmLda,
        Graph::Lfda => RnnVariant::GeelmLfda,
    };
    fit(v, &train.features, &train.labels, h, seed)
}

pub fn train_drvfl(train: &Dataset, h: &RnnHyper, seed: u64) -> Result<TrainedRnn> {
    fit(RnnVariant::Drvfl, &train.features, &train.labels, h, seed)
}

pub fn train_edrvfl(train: &Dataset, h: &RnnHyper, seed: u64) -> Result<TrainedRnn> {
    fit(RnnVariant::Edrvfl, &train.features, &train.labels, h, seed)
}

pub fn train_bls(train: &Dataset, h: &RnnHyper, seed: u64) -> Result<TrainedRnn> {
    fit(RnnVariant::Bls, &train.features, &train.labels, h, seed)
}

pub fn train_nfbls(train: &Dataset, h: &RnnHyper, seed: u64) -> Result<TrainedRnn> {
    fit(RnnVariant::NfBls, &train.features, &train.labels, h, seed)
}

pub fn predict(model: &TrainedRnn, x: &Mat) -> Result<(Vec<f64>, Vec<f64>)> {
    model.predict(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs(n: usize, d: usize, gap: f64, seed: u64) -> (Mat, Vec<f64>) {
        use rand::Rng as _;
        let mut r = rng::stream(seed, 99);
        let labels: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let x = Mat::from_fn(n, d, |i, _| labels[i] * gap + r.random_range(-1.0..1.0));
        (x, labels)
    }

    #[test]
    fn shapes_of_output_weights() {
        let (x, y) = blobs(40, 3, 2.0, 1);
        let h = RnnHyper { n_hidden: 7, ..Default::default() };
        let rvfl = fit(RnnVariant::Rvfl, &x, &y, &h, 1).unwrap();
        let elm = fit(RnnVariant::Elm, &x, &y, &h, 1).unwrap();
        assert_eq!(rvfl.beta[0].shape(), (10, 1));
        assert_eq!(elm.beta[0].shape(), (7, 1));
        let bls = fit(
            RnnVariant::Bls,
            &x,
            &y,
            &RnnHyper { n_feat_groups: 2, n_feat_nodes: 3, n_enh_groups: 4, ..h },
            1,
        )
        .unwrap();
        assert_eq!(bls.beta[0].shape(), (2 * 3 + 4, 1));
    }

    #[test]
    fn lda_laplacian_two_nodes() {
        let l = lda_laplacian(&[1.0, 1.0]);
        assert_eq!(l, Mat::from_row_slice(2, 2, &[0.5, -0.5, -0.5, 0.5]));
    }

    #[test]
    fn lfda_laplacian_is_symmetric_psd() {
        let (x, y) = blobs(30, 4, 1.0, 2);
        let l = lfda_laplacian(&x, &y, LFDA_NEIGHBORS).unwrap();
        assert!((&l - l.transpose()).amax() < 1e-14);
        let eig = l.symmetric_eigenvalues();
        assert!(eig.iter().all(|e| *e > -1e-10), "{eig}");
    }

    #[test]
    fn intraclass_scatter_vanishes_on_class_constant_rows() {
        let d = Mat::from_row_slice(4, 2, &[1.0, 2.0, 1.0, 2.0, 3.0, 0.0, 3.0, 0.0]);
        let y = [1.0, 1.0, -1.0, -1.0];
        assert_eq!(scatter_matrix(&d, &y, Scatter::Intraclass).amax(), 0.0);
        assert!(scatter_matrix(&d, &y, Scatter::Total).amax() > 0.0);
    }

    #[test]
    fn edrvfl_majority_vote_ties_to_positive() {
        let (x, y) = blobs(30, 2, 2.0, 3);
        let h = RnnHyper { layers: 2, n_hidden: 5, c: 1e-6, ..Default::default() };
        let m = fit(RnnVariant::Edrvfl, &x, &y, &h, 4).unwrap();
        let per = m.layer_scores(&x).unwrap();
        let (labels, scores) = m.predict(&x).unwrap();
        for (i, l) in labels.iter().enumerate() {
            let votes = sign_label(per[(i, 0)]) + sign_label(per[(i, 1)]);
            assert_eq!(*l, sign_label(votes));
            assert!((scores[i] - 0.5 * (per[(i, 0)] + per[(i, 1)])).abs() < 1e-15);
        }
    }

    #[test]
    fn invalid_hyper_rejected() {
        let (x, y) = blobs(10, 2, 1.0, 0);
        for bad in [
            RnnHyper { c: 0.0, ..Default::default() },
            RnnHyper { n_hidden: 0, ..Default::default() },
            RnnHyper { act: 10, ..Default::default() },
            RnnHyper { lambda: -1.0, ..Default::default() },
        ] {
            assert!(fit(RnnVariant::Rvfl, &x, &y, &bad, 0).is_err());
        }
    }

    #[test]
    fn single_class_rejected_where_needed() {
        let x = Mat::from_fn(6, 2, |i, j| (i + j) as f64);
        let y = vec![1.0; 6];
        assert!(fit(RnnVariant::Mcvelm, &x, &y, &RnnHyper::default(), 0).is_err());
        assert!(fit(RnnVariant::GeelmLda, &x, &y, &RnnHyper::default(), 0).is_err());
    }

    #[test]
    fn dimension_mismatch_on_predict() {
        let (x, y) = blobs(10, 2, 1.0, 0);
        let m = fit(RnnVariant::Rvfl, &x, &y, &RnnHyper::default(), 0).unwrap();
        assert!(m.predict(&Mat::zeros(3, 5)).is_err());
        let (l, s) = m.predict(&Mat::zeros(0, 2)).unwrap();
        assert!(l.is_empty() && s.is_empty());
    }
}
