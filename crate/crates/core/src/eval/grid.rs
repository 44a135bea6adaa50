//! Hyper-parameter grids, listed axis by axis in table order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hbc::{HbcFamily, HbcHyper};
use crate::model::{Hyper, ModelTag};
use crate::numcore::Kernel;
use crate::rnn::{RnnHyper, RnnVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridPreset {
    /// Reduced grids for quick runs.
    Smoke,
    /// The complete published ranges.
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    fn new(name: &str, values: Vec<f64>) -> Self {
        Self {
            name: name.to_string(),
            values,
        }
    }
}

/// Second-stage refinement for the deep networks: C and N scaled around the
/// first-stage winner, jointly with the layer count and activation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondStage {
    pub multipliers: Vec<f64>,
    pub layers: Vec<usize>,
    pub acts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub tag: ModelTag,
    /// First axis is the outermost loop.
    pub axes: Vec<Axis>,
    pub second_stage: Option<SecondStage>,
}

fn pow_range(base: f64, from: i32, to: i32, step: i32) -> Vec<f64> {
    (from..=to).step_by(step as usize).map(|e| base.powi(e)).collect()
}

fn int_range(from: usize, to: usize, step: usize) -> Vec<f64> {
    (from..=to).step_by(step).map(|v| v as f64).collect()
}

fn unit_steps() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

const DEEP_MULTIPLIERS: [f64; 9] = [0.9, 0.925, 0.95, 0.975, 1.0, 1.025, 1.05, 1.075, 1.1];

impl GridSpec {
    pub fn preset(tag: ModelTag, preset: GridPreset) -> GridSpec {
        match preset {
            GridPreset::Full => full(tag),
            GridPreset::Smoke => smoke(tag),
        }
    }

    pub fn axis(&self, name: &str) -> Option<&Axis> {
        self.axes.iter().find(|a| a.name == name)
    }

    /// Replaces the values of one axis.
    pub fn override_axis(&mut self, name: &str, values: Vec<f64>) -> Result<()> {
        if values.is_empty() {
            return Err(Error::InvalidArgument(format!("axis {name} needs at least one value")));
        }
        let valid: Vec<String> = self.axes.iter().map(|a| a.name.clone()).collect();
        match self.axes.iter_mut().find(|a| a.name == name) {
            Some(a) => {
                a.values = values;
                Ok(())
            }
            None => Err(Error::InvalidArgument(format!(
                "{} has no axis '{name}' (axes: {})",
                self.tag,
                valid.join(", ")
            ))),
        }
    }

    pub fn n_configs(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.iter().any(|a| a.values.is_empty()) {
            return Err(Error::InvalidArgument(format!("grid for {} has an empty axis", self.tag)));
        }
        let deep = matches!(self.tag, ModelTag::Rnn(RnnVariant::Drvfl | RnnVariant::Edrvfl));
        if self.second_stage.is_some() && !deep {
            return Err(Error::InvalidArgument(format!(
                "second-stage tuning only applies to dRVFL/edRVFL, not {}",
                self.tag
            )));
        }
        Ok(())
    }

    /// Every configuration in odometer order, last axis fastest.
    pub fn configs(&self) -> Result<Vec<Hyper>> {
        self.validate()?;
        let n = self.n_configs();
        let mut out = Vec::with_capacity(n);
        for mut idx in 0..n {
            let mut point = vec![0.0; self.axes.len()];
            for (k, a) in self.axes.iter().enumerate().rev() {
                point[k] = a.values[idx % a.values.len()];
                idx /= a.values.len();
            }
            let named: Vec<(&str, f64)> = self.axes.iter().map(|a| a.name.as_str()).zip(point).collect();
            out.push(hyper_from(self.tag, &named)?);
        }
        Ok(out)
    }

    /// The second-stage grid around a first-stage winner.
    pub fn refine(&self, best: &Hyper) -> Result<Option<GridSpec>> {
        let (Some(stage), Hyper::Rnn(h)) = (&self.second_stage, best) else {
            return Ok(None);
        };
        let c: Vec<f64> = stage.multipliers.iter().map(|m| h.c * m).collect();
        let n: Vec<f64> = stage
            .multipliers
            .iter()
            .map(|m| (h.n_hidden as f64 * m).round().max(1.0))
            .collect();
        Ok(Some(GridSpec {
            tag: self.tag,
            axes: vec![
                Axis::new("C", c),
                Axis::new("N", n),
                Axis::new("L", stage.layers.iter().map(|v| *v as f64).collect()),
                Axis::new("Act", stage.acts.iter().map(|v| *v as f64).collect()),
            ],
            second_stage: None,
        }))
    }
}

fn count(name: &str, v: f64) -> Result<usize> {
    if v >= 1.0 && v.fract() == 0.0 && v.is_finite() {
        Ok(v as usize)
    } else {
        Err(Error::InvalidArgument(format!("{name} must be a positive integer, got {v}")))
    }
}

/// Builds hyper-parameters for `tag` from named axis values; unnamed fields keep
/// their defaults.
pub fn hyper_from(tag: ModelTag, named: &[(&str, f64)]) -> Result<Hyper> {
    match tag {
        ModelTag::Rnn(v) => {
            let mut h = RnnHyper::default();
            if matches!(v, RnnVariant::Drvfl | RnnVariant::Edrvfl) {
                h.layers = 2;
                h.act = 7;
            }
            for &(name, val) in named {
                match name {
                    "C" => h.c = val,
                    "N" => h.n_hidden = count(name, val)?,
                    "Act" => h.act = count(name, val)?,
                    "lambda" => h.lambda = val,
                    "mu" => h.mu = val,
                    "L" => h.layers = count(name, val)?,
                    "N_Feat-G" => h.n_feat_groups = count(name, val)?,
                    "N_Feat-N" => h.n_feat_nodes = count(name, val)?,
                    "N_E-G" => h.n_enh_groups = count(name, val)?,
                    "N_E-N" => h.n_enh_nodes = count(name, val)?,
                    other => {
                        return Err(Error::InvalidArgument(format!("{tag} has no parameter '{other}'")))
                    }
                }
            }
            Ok(Hyper::Rnn(h))
        }
        ModelTag::Hbc { kernel, .. } => {
            let mut h = HbcHyper {
                kernel: kernel.then_some(Kernel::Gaussian { sigma: 1.0 }),
                ..HbcHyper::default()
            };
            for &(name, val) in named {
                match name {
                    "C" => h.c = val,
                    "C1" => h.c1 = val,
                    "C2" => h.c2 = val,
                    "tau" => h.tau = val,
                    "tau1" => h.tau1 = val,
                    "tau2" => h.tau2 = val,
                    "a" => h.a = val,
                    "mu" => h.mu = val,
                    "sigma" if kernel => h.kernel = Some(Kernel::Gaussian { sigma: val }),
                    other => {
                        return Err(Error::InvalidArgument(format!("{tag} has no parameter '{other}'")))
                    }
                }
            }
            Ok(Hyper::Hbc(h))
        }
    }
}

/// Value lists for the full grids.
struct Ranges {
    rnn_c: Vec<f64>,
    n: Vec<f64>,
    act: Vec<f64>,
    var_lambda: Vec<f64>,
    graph_lambda: Vec<f64>,
    if_mu: Vec<f64>,
    deep_n: Vec<f64>,
    feat_groups: Vec<f64>,
    feat_nodes: Vec<f64>,
    enh_groups: Vec<f64>,
    enh_nodes: Vec<f64>,
    hbc_c: Vec<f64>,
    sigma: Vec<f64>,
    hbc_mu: Vec<f64>,
    tau: Vec<f64>,
    linex_a: Vec<f64>,
    deep_layers: Vec<usize>,
    deep_acts: Vec<usize>,
    multipliers: Vec<f64>,
}

fn full_ranges() -> Ranges {
    Ranges {
        rnn_c: pow_range(10.0, -8, 8, 2),
        n: int_range(3, 503, 20),
        act: int_range(1, 9, 1),
        var_lambda: pow_range(10.0, -8, 8, 2),
        graph_lambda: pow_range(10.0, -6, 6, 2),
        if_mu: pow_range(10.0, -5, 5, 1),
        deep_n: vec![256.0, 512.0, 1024.0],
        feat_groups: int_range(5, 50, 5),
        feat_nodes: int_range(1, 21, 2),
        enh_groups: int_range(5, 105, 10),
        enh_nodes: vec![1.0],
        hbc_c: pow_range(2.0, -5, 5, 2),
        sigma: pow_range(2.0, -10, 10, 1),
        hbc_mu: pow_range(2.0, -10, 10, 1),
        tau: unit_steps(),
        linex_a: int_range(1, 10, 1).into_iter().rev().map(|v| -v).collect(),
        deep_layers: (1..=10).collect(),
        deep_acts: (1..=9).collect(),
        multipliers: DEEP_MULTIPLIERS.to_vec(),
    }
}

fn smoke_ranges() -> Ranges {
    Ranges {
        rnn_c: vec![1e-2, 1.0, 1e2],
        n: vec![43.0, 203.0],
        act: vec![2.0, 3.0],
        var_lambda: vec![1e-2, 1.0],
        graph_lambda: vec![1e-2, 1.0],
        if_mu: vec![1e-1, 1.0],
        deep_n: vec![256.0],
        feat_groups: vec![5.0, 10.0],
        feat_nodes: vec![5.0],
        enh_groups: vec![15.0],
        enh_nodes: vec![1.0],
        hbc_c: vec![0.5, 8.0],
        sigma: vec![16.0, 64.0],
        hbc_mu: vec![16.0],
        tau: vec![0.0, 0.5],
        linex_a: vec![-1.0, -5.0],
        deep_layers: vec![1, 2, 3],
        deep_acts: vec![3, 7],
        multipliers: vec![0.95, 1.0, 1.05],
    }
}

fn build(tag: ModelTag, r: Ranges) -> GridSpec {
    let ax = Axis::new;
    let mut second_stage = None;
    let axes = match tag {
        ModelTag::Rnn(v) => {
            use RnnVariant::*;
            match v {
                Rvfl | Elm => vec![ax("C", r.rnn_c), ax("N", r.n), ax("Act", r.act)],
                Mcvelm | Mvelm | TotalVarRvfl | ClassVarRvfl => vec![
                    ax("C", r.rnn_c),
                    ax("lambda", r.var_lambda),
                    ax("N", r.n),
                    ax("Act", r.act),
                ],
                GeelmLda | GeelmLfda => vec![
                    ax("C", r.rnn_c),
                    ax("lambda", r.graph_lambda),
                    ax("N", r.n),
                    ax("Act", r.act),
                ],
                IfRvfl => vec![ax("C", r.rnn_c), ax("mu", r.if_mu), ax("N", r.n), ax("Act", r.act)],
                Drvfl | Edrvfl => {
                    second_stage = Some(SecondStage {
                        multipliers: r.multipliers,
                        layers: r.deep_layers,
                        acts: r.deep_acts,
                    });
                    vec![
                        ax("C", r.rnn_c),
                        ax("N", r.deep_n),
                        ax("L", vec![2.0]),
                        ax("Act", vec![7.0]),
                    ]
                }
                Bls | NfBls => vec![
                    ax("C", r.rnn_c),
                    ax("N_Feat-G", r.feat_groups),
                    ax("N_Feat-N", r.feat_nodes),
                    ax("N_E-G", r.enh_groups),
                    ax("N_E-N", r.enh_nodes),
                    ax("Act", r.act),
                ],
            }
        }
        ModelTag::Hbc { family, kernel } => {
            use HbcFamily::*;
            let sigma = || kernel.then(|| ax("sigma", r.sigma.clone()));
            let c = || ax("C", r.hbc_c.clone());
            let c12 = || vec![ax("C1", r.hbc_c.clone()), ax("C2", r.hbc_c.clone())];
            let mut axes: Vec<Axis> = match family {
                Svm | Lssvm => vec![c()],
                Tsvm | Lstsvm | IfTsvm | PinGtsvm => c12(),
                PinSvm => vec![c()],
                LinexSvm => vec![c(), ax("a", r.linex_a.clone())],
            };
            axes.extend(sigma());
            match family {
                IfTsvm => axes.push(ax("mu", r.hbc_mu.clone())),
                PinSvm => axes.push(ax("tau", r.tau.clone())),
                PinGtsvm => {
                    axes.push(ax("tau1", r.tau.clone()));
                    axes.push(ax("tau2", r.tau.clone()));
                }
                _ => {}
            }
            axes
        }
    };
    GridSpec {
        tag,
        axes,
        second_stage,
    }
}

fn full(tag: ModelTag) -> GridSpec {
    build(tag, full_ranges())
}

fn smoke(tag: ModelTag) -> GridSpec {
    build(tag, smoke_ranges())
}
