//! Metrics, grid search and the repeated-split experiment protocol.

pub mod cv;
pub mod experiment;
pub mod grid;
pub mod metrics;
pub mod report;

pub use cv::{grid_search_cv, CvOutcome, CvRow};
pub use experiment::{
    run_cell, run_experiment, run_repetition, CellOutcome, ExperimentResult, ModelArtifact, Protocol, Repetition,
};
pub use grid::{hyper_from, Axis, GridPreset, GridSpec, SecondStage};
pub use metrics::{confusion, evaluate, f_measure, metrics, round_half_up, ConfusionMatrix, MetricReport};
pub use report::{write_results, AccuracyMatrix, MISSING};
