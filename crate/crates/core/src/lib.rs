//! Classifier zoo and benchmarking protocol for binary tabular classification.
//!
//! Thirteen randomized-network classifiers (RVFL family, ELM family, deep and
//! broad variants) and sixteen hyperplane classifiers (SVM, twin SVM, least
//! squares, Linex and pinball variants in linear and Gaussian-kernel form) share
//! a single fit/predict surface. Around them sit the evaluation protocol
//! (stratified splits, k-fold grid search, repeated experiments), the rank-based
//! significance battery and Shapley feature attribution.

pub mod dataio;
pub mod error;
pub mod eval;
pub mod explain;
pub mod hbc;
pub mod model;
pub mod numcore;
pub mod rng;
pub mod rnn;
pub mod stats;

pub use error::{Error, Result};
