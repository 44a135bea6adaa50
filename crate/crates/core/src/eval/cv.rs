//! k-fold grid search.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use crate::dataio::{kfold_indices, Dataset};
use crate::error::{Error, Result};
use crate::model::{self, Hyper, ModelTag};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvRow {
    /// 1 for the main grid, 2 for the deep networks' refinement grid.
    pub stage: u8,
    pub index: usize,
    pub hyper: Hyper,
    pub fold_acc: Vec<f64>,
    /// `None` when some fold failed to train.
    pub mean_acc: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvOutcome {
    pub best: Hyper,
    pub best_score: f64,
    pub table: Vec<CvRow>,
    /// Subject ids read while tuning.
    pub touched_ids: BTreeSet<String>,
}

/// Seed of the model trained on fold `fold`; shared by all configurations so
/// they are compared on the same random hidden weights.
pub fn fold_seed(seed: u64, fold: usize) -> u64 {
    rng::mix(&[seed, 0xC5, fold as u64])
}

fn evaluate_config(
    tag: ModelTag,
    hyper: &Hyper,
    train: &Dataset,
    folds: &[(Vec<usize>, Vec<usize>)],
    seed: u64,
) -> std::result::Result<Vec<f64>, String> {
    let mut accs = Vec::with_capacity(folds.len());
    for (f, (tr, va)) in folds.iter().enumerate() {
        let a = train.select_rows(tr);
        let b = train.select_rows(va);
        let m = model::fit(tag, &a.features, &a.labels, hyper, fold_seed(seed, f)).map_err(|e| e.to_string())?;
        let (pred, _) = m.predict(&b.features).map_err(|e| e.to_string())?;
        let hits = pred.iter().zip(&b.labels).filter(|(p, t)| p == t).count();
        accs.push(hits as f64 / b.labels.len() as f64);
    }
    Ok(accs)
}

fn run_stage(
    stage: u8,
    grid: &GridSpec,
    train: &Dataset,
    folds: &[(Vec<usize>, Vec<usize>)],
    seed: u64,
) -> Result<Vec<CvRow>> {
    let configs = grid.configs()?;
    let rows: Vec<CvRow> = configs
        .par_iter()
        .enumerate()
        .map(|(index, hyper)| match evaluate_config(grid.tag, hyper, train, folds, seed) {
            Ok(fold_acc) => {
                let mean = fold_acc.iter().sum::<f64>() / fold_acc.len() as f64;
                CvRow {
                    stage,
                    index,
                    hyper: *hyper,
                    fold_acc,
                    mean_acc: Some(mean),
                    error: None,
                }
            }
            Err(e) => CvRow {
                stage,
                index,
                hyper: *hyper,
                fold_acc: Vec::new(),
                mean_acc: None,
                error: Some(e),
            },
        })
        .collect();
    for r in rows.iter().filter(|r| r.error.is_some()) {
        log::warn!(
            "{} config {} ({}) excluded: {}",
            grid.tag,
            r.index,
            r.hyper.describe(grid.tag),
            r.error.as_deref().unwrap_or_default()
        );
    }
    Ok(rows)
}

/// First row with the highest mean accuracy.
fn argmax(rows: &[CvRow]) -> Option<&CvRow> {
    let mut best: Option<&CvRow> = None;
    for r in rows {
        if let Some(m) = r.mean_acc {
            if best.is_none_or(|b| m > b.mean_acc.unwrap()) {
                best = Some(r);
            }
        }
    }
    best
}

/// Mean k-fold validation accuracy for every configuration of `grid`; the best
/// configuration wins, ties going to the first in grid order. Configurations
/// that fail to train on any fold are excluded. dRVFL/edRVFL then repeat the
/// search on the refinement grid around the winner.
pub fn grid_search_cv(grid: &GridSpec, train: &Dataset, k: usize, seed: u64) -> Result<CvOutcome> {
    grid.validate()?;
    let assignment = kfold_indices(&train.labels, k, seed)?;
    let folds: Vec<(Vec<usize>, Vec<usize>)> = (0..assignment.k).map(|f| assignment.fold(f)).collect();
    let mut touched = BTreeSet::new();
    for (tr, va) in &folds {
        for &i in tr.iter().chain(va) {
            touched.insert(train.subject_ids[i].clone());
        }
    }

    let mut table = run_stage(1, grid, train, &folds, seed)?;
    let first = argmax(&table).cloned().ok_or_else(|| {
        Error::Numerical(format!("every {} configuration failed during cross-validation", grid.tag))
    })?;
    let mut best = first;
    if let Some(refined) = grid.refine(&best.hyper)? {
        let rows = run_stage(2, &refined, train, &folds, seed)?;
        if let Some(b2) = argmax(&rows) {
            if b2.mean_acc.unwrap() > best.mean_acc.unwrap() {
                best = b2.clone();
            }
        }
        table.extend(rows);
    }
    Ok(CvOutcome {
        best: best.hyper,
        best_score: best.mean_acc.unwrap(),
        table,
        touched_ids: touched,
    })
}
