//! The nine hidden-layer activation functions, addressed by their grid index 1..=9.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SELU_ALPHA: f64 = 1.673_263_242_354_377_3;
const SELU_LAMBDA: f64 = 1.050_700_987_355_480_5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Activation {
    Selu,
    Relu,
    Sigmoid,
    Sine,
    Hardlim,
    Tribas,
    Radbas,
    Sign,
    Tansig,
}

impl Activation {
    pub const ALL: [Activation; 9] = [
        Activation::Selu,
        Activation::Relu,
        Activation::Sigmoid,
        Activation::Sine,
        Activation::Hardlim,
        Activation::Tribas,
        Activation::Radbas,
        Activation::Sign,
        Activation::Tansig,
    ];

    pub fn from_index(index: usize) -> Result<Self> {
        if (1..=9).contains(&index) {
            Ok(Self::ALL[index - 1])
        } else {
            Err(Error::InvalidArgument(format!(
                "activation index must be in 1..=9, got {index}"
            )))
        }
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|a| *a == self).unwrap() + 1
    }

    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Selu => {
                if x > 0.0 {
                    SELU_LAMBDA * x
                } else {
                    SELU_LAMBDA * SELU_ALPHA * (x.exp() - 1.0)
                }
            }
            Activation::Relu => x.max(0.0),
            Activation::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            Activation::Sine => x.sin(),
            Activation::Hardlim => {
                if x >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Tribas => (1.0 - x.abs()).max(0.0),
            Activation::Radbas => (-x * x).exp(),
            Activation::Sign => {
                if x >= 0.0 {
                    1.0
                } else {
                    -1.0
                }
            }
            Activation::Tansig => x.tanh(),
        }
    }
}

/// Index-addressed evaluation; errors on an index outside 1..=9.
pub fn activation(index: usize, x: f64) -> Result<f64> {
    Ok(Activation::from_index(index)?.apply(x))
}
