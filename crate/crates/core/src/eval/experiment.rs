//! The repeated split / tune / test protocol.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cv::{grid_search_cv, CvOutcome};
use super::grid::{GridPreset, GridSpec};
use super::metrics::{evaluate, MetricReport};
use crate::dataio::{split_train_test, standardize, Dataset, Modality, ScalerParams, SplitSpec};
use crate::error::{Error, Result};
use crate::model::{self, Hyper, ModelTag, TrainedModel};
use crate::numcore::Mat;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Protocol {
    pub train_fraction: f64,
    pub stratified: bool,
    pub k: usize,
    /// One repetition per seed; the seed drives the split, the folds and the model.
    pub seeds: Vec<u64>,
    pub standardize: bool,
    pub preset: GridPreset,
    /// Per-tag axis overrides: tag name → axis name → values.
    pub overrides: BTreeMap<String, BTreeMap<String, Vec<f64>>>,
}

impl Default for Protocol {
    fn default() -> Self {
        Self {
            train_fraction: 0.7,
            stratified: true,
            k: 5,
            seeds: (1..=20).collect(),
            standardize: true,
            preset: GridPreset::Smoke,
            overrides: BTreeMap::new(),
        }
    }
}

impl Protocol {
    pub fn grid(&self, tag: ModelTag) -> Result<GridSpec> {
        let mut g = GridSpec::preset(tag, self.preset);
        if let Some(axes) = self.overrides.get(&tag.name()) {
            for (name, values) in axes {
                g.override_axis(name, values.clone())?;
            }
        }
        Ok(g)
    }

    pub fn split_spec(&self, seed: u64) -> SplitSpec {
        SplitSpec {
            train_fraction: self.train_fraction,
            seed,
            stratified: self.stratified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Repetition {
    pub seed: u64,
    pub hyper: Hyper,
    pub cv_accuracy: f64,
    pub test: MetricReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub tag: ModelTag,
    pub modality: Modality,
    pub repetitions: Vec<Repetition>,
    /// Index of the repetition with the best validation accuracy.
    pub selected: usize,
    pub mean_acc: f64,
    pub std_acc: f64,
}

impl ExperimentResult {
    pub fn selected_report(&self) -> &MetricReport {
        &self.repetitions[self.selected].test
    }

    pub fn best_hyper(&self) -> &Hyper {
        &self.repetitions[self.selected].hyper
    }
}

/// Everything needed to explain the selected model without the raw data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArtifact {
    pub model: TrainedModel,
    pub modality: Modality,
    pub feature_names: Vec<String>,
    pub scaler: Option<ScalerParams>,
    /// Training-set feature means in model input space.
    pub background: Vec<f64>,
    /// Held-out rows in model input space.
    pub test_features: Mat,
    pub test_labels: Vec<f64>,
    pub test_ids: Vec<String>,
}

impl ModelArtifact {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let a: ModelArtifact = serde_json::from_str(s)?;
        // re-check the embedded model's version
        TrainedModel::from_json(&a.model.to_json()?)?;
        Ok(a)
    }
}

/// One repetition, kept in full so the selected one can be persisted.
pub struct RepetitionRun {
    pub repetition: Repetition,
    pub cv: CvOutcome,
    pub artifact: ModelArtifact,
}

/// Seed of the final model trained on the whole training split.
pub fn final_seed(seed: u64) -> u64 {
    rng::mix(&[seed, 0xF1])
}

pub fn run_repetition(tag: ModelTag, ds: &Dataset, protocol: &Protocol, seed: u64) -> Result<RepetitionRun> {
    let (train, test) = split_train_test(ds, &protocol.split_spec(seed))?;
    let (train, test, scaler) = if protocol.standardize {
        let (a, b, s) = standardize(&train, &test)?;
        (a, b, Some(s))
    } else {
        (train, test, None)
    };
    let grid = protocol.grid(tag)?;
    let cv = grid_search_cv(&grid, &train, protocol.k, seed)?;
    let m = model::fit(tag, &train.features, &train.labels, &cv.best, final_seed(seed))?;
    let (pred, _) = m.predict(&test.features)?;
    let report = evaluate(&test.labels, &pred)?;
    let n = train.n_samples() as f64;
    let background = train.features.row_iter().fold(vec![0.0; train.n_features()], |mut acc, r| {
        for (a, v) in acc.iter_mut().zip(r.iter()) {
            *a += v / n;
        }
        acc
    });
    Ok(RepetitionRun {
        repetition: Repetition {
            seed,
            hyper: cv.best,
            cv_accuracy: cv.best_score,
            test: report,
        },
        cv,
        artifact: ModelArtifact {
            model: m,
            modality: ds.modality,
            feature_names: ds.feature_names.clone(),
            scaler,
            background,
            test_features: test.features.clone(),
            test_labels: test.labels.clone(),
            test_ids: test.subject_ids.clone(),
        },
    })
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs every repetition of one (model, modality) cell. Returns the result and
/// the artifact of the selected repetition.
pub fn run_cell(tag: ModelTag, ds: &Dataset, protocol: &Protocol) -> Result<(ExperimentResult, ModelArtifact)> {
    if protocol.seeds.is_empty() {
        return Err(Error::InvalidArgument("at least one repetition seed is required".into()));
    }
    let mut runs = Vec::with_capacity(protocol.seeds.len());
    for &seed in &protocol.seeds {
        runs.push(run_repetition(tag, ds, protocol, seed)?);
    }
    let mut selected = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.repetition.cv_accuracy > runs[selected].repetition.cv_accuracy {
            selected = i;
        }
    }
    let accs: Vec<f64> = runs.iter().map(|r| r.repetition.test.acc).collect();
    let (mean_acc, std_acc) = mean_std(&accs);
    let artifact = runs[selected].artifact.clone();
    Ok((
        ExperimentResult {
            tag,
            modality: ds.modality,
            repetitions: runs.into_iter().map(|r| r.repetition).collect(),
            selected,
            mean_acc,
            std_acc,
        },
        artifact,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CellOutcome {
    Done(ExperimentResult),
    Failed { tag: ModelTag, modality: Modality, error: String },
}

impl CellOutcome {
    pub fn tag(&self) -> ModelTag {
        match self {
            CellOutcome::Done(r) => r.tag,
            CellOutcome::Failed { tag, .. } => *tag,
        }
    }

    pub fn modality(&self) -> Modality {
        match self {
            CellOutcome::Done(r) => r.modality,
            CellOutcome::Failed { modality, .. } => *modality,
        }
    }

    pub fn result(&self) -> Option<&ExperimentResult> {
        match self {
            CellOutcome::Done(r) => Some(r),
            CellOutcome::Failed { .. } => None,
        }
    }
}

/// Every (model, modality) cell, in model-major order. A failing cell is
/// recorded as failed without stopping the others.
pub fn run_experiment(
    models: &[ModelTag],
    datasets: &[Dataset],
    protocol: &Protocol,
) -> Vec<(CellOutcome, Option<ModelArtifact>)> {
    let cells: Vec<(ModelTag, &Dataset)> = models
        .iter()
        .flat_map(|t| datasets.iter().map(move |d| (*t, d)))
        .collect();
    cells
        .par_iter()
        .map(|(tag, ds)| match run_cell(*tag, ds, protocol) {
            Ok((r, a)) => {
                log::info!(
                    "{tag} / {}: selected acc {:.2}%, mean {:.2}%",
                    ds.modality,
                    100.0 * r.selected_report().acc,
                    100.0 * r.mean_acc
                );
                (CellOutcome::Done(r), Some(a))
            }
            Err(e) => {
                log::error!("{tag} / {} failed: {e}", ds.modality);
                (
                    CellOutcome::Failed {
                        tag: *tag,
                        modality: ds.modality,
                        error: e.to_string(),
                    },
                    None,
                )
            }
        })
        .collect()
}
