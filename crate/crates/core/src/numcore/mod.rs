//! Shared numerical kernels.

pub mod activation;
pub mod fuzzy;
pub mod kernel;
pub mod linalg;
pub mod qp;
pub mod sgd;

pub use activation::{activation, Activation};
pub use fuzzy::{if_score, IfScore};
pub use kernel::{gaussian_kernel, linear_kernel, Kernel};
pub use linalg::{penalized_solve, pinv, ridge_solve, weighted_ridge_solve, Mat, Vector};
pub use qp::{box_qp_solve, LinearEquality, QpProblem, QpSolution};
pub use sgd::{sgd_momentum, SgdOutcome, SgdParams};
