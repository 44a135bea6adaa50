//! The 29 benchmarked models behind one tag, one hyper-parameter type and one
//! fit/predict surface.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hbc::{self, HbcFamily, HbcHyper, TrainedHbc};
use crate::numcore::{Kernel, Mat};
use crate::rnn::{self, RnnHyper, RnnVariant, TrainedRnn};

/// Format version of serialized [`TrainedModel`] dumps.
pub const MODEL_DUMP_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelTag {
    Rnn(RnnVariant),
    /// `kernel = false` is the linear `-L` form, `true` the Gaussian `-K` form.
    Hbc { family: HbcFamily, kernel: bool },
}

impl ModelTag {
    /// Every tag, randomized networks first, then hyperplane classifiers with
    /// `-L` before `-K` for each family.
    pub fn all() -> Vec<ModelTag> {
        let mut out: Vec<ModelTag> = RnnVariant::ALL.iter().map(|v| ModelTag::Rnn(*v)).collect();
        for family in HbcFamily::ALL {
            out.push(ModelTag::Hbc { family, kernel: false });
            out.push(ModelTag::Hbc { family, kernel: true });
        }
        out
    }

    pub fn rnn_tags() -> Vec<ModelTag> {
        Self::all().into_iter().filter(|t| t.is_rnn()).collect()
    }

    pub fn hbc_tags() -> Vec<ModelTag> {
        Self::all().into_iter().filter(|t| !t.is_rnn()).collect()
    }

    pub fn is_rnn(&self) -> bool {
        matches!(self, ModelTag::Rnn(_))
    }

    pub fn name(&self) -> String {
        match self {
            ModelTag::Rnn(v) => v.name().to_string(),
            ModelTag::Hbc { family, kernel } => {
                format!("{}-{}", family.name(), if *kernel { "K" } else { "L" })
            }
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ModelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let want = s.trim();
        ModelTag::all()
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(want))
            .ok_or_else(|| {
                let valid: Vec<String> = ModelTag::all().iter().map(|t| t.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown model tag '{want}'; valid tags: {}",
                    valid.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Hyper {
    Rnn(RnnHyper),
    Hbc(HbcHyper),
}

impl Hyper {
    /// Compact `name=value` rendering used in result tables.
    pub fn describe(&self, tag: ModelTag) -> String {
        match (self, tag) {
            (Hyper::Rnn(h), ModelTag::Rnn(v)) => {
                use RnnVariant::*;
                match v {
                    Rvfl | Elm => format!("C={:e};N={};Act={}", h.c, h.n_hidden, h.act),
                    Mcvelm | Mvelm | TotalVarRvfl | ClassVarRvfl | GeelmLda | GeelmLfda => format!(
                        "C={:e};lambda={:e};N={};Act={}",
                        h.c, h.lambda, h.n_hidden, h.act
                    ),
                    IfRvfl => format!("C={:e};mu={:e};N={};Act={}", h.c, h.mu, h.n_hidden, h.act),
                    Drvfl | Edrvfl => {
                        format!("C={:e};N={};L={};Act={}", h.c, h.n_hidden, h.layers, h.act)
                    }
                    Bls | NfBls => format!(
                        "C={:e};NFeatG={};NFeatN={};NEG={};NEN={};Act={}",
                        h.c, h.n_feat_groups, h.n_feat_nodes, h.n_enh_groups, h.n_enh_nodes, h.act
                    ),
                }
            }
            (Hyper::Hbc(h), ModelTag::Hbc { family, .. }) => {
                use HbcFamily::*;
                let mut parts = match family {
                    Svm | Lssvm => vec![format!("C={:e}", h.c)],
                    PinSvm => vec![format!("C={:e}", h.c), format!("tau={}", h.tau)],
                    LinexSvm => vec![format!("C={:e}", h.c), format!("a={}", h.a)],
                    Tsvm | Lstsvm => vec![format!("C1={:e}", h.c1), format!("C2={:e}", h.c2)],
                    IfTsvm => vec![
                        format!("C1={:e}", h.c1),
                        format!("C2={:e}", h.c2),
                        format!("mu={:e}", h.mu),
                    ],
                    PinGtsvm => vec![
                        format!("C1={:e}", h.c1),
                        format!("C2={:e}", h.c2),
                        format!("tau1={}", h.tau1),
                        format!("tau2={}", h.tau2),
                    ],
                };
                if let Some(Kernel::Gaussian { sigma }) = h.kernel {
                    parts.push(format!("sigma={sigma:e}"));
                }
                parts.join(";")
            }
            _ => "mismatched".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fitted {
    Rnn(TrainedRnn),
    Hbc(TrainedHbc),
}

/// A fitted model of any family, serializable as a versioned JSON dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub version: u32,
    pub tag: ModelTag,
    pub hyper: Hyper,
    pub seed: u64,
    pub fitted: Fitted,
}

impl TrainedModel {
    pub fn n_inputs(&self) -> usize {
        match &self.fitted {
            Fitted::Rnn(m) => m.n_inputs,
            Fitted::Hbc(m) => m.n_inputs,
        }
    }

    /// Labels (±1) and raw decision scores.
    pub fn predict(&self, x: &Mat) -> Result<(Vec<f64>, Vec<f64>)> {
        match &self.fitted {
            Fitted::Rnn(m) => m.predict(x),
            Fitted::Hbc(m) => m.predict(x),
        }
    }

    pub fn scores(&self, x: &Mat) -> Result<Vec<f64>> {
        Ok(self.predict(x)?.1)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: TrainedModel = serde_json::from_str(s)?;
        if m.version != MODEL_DUMP_VERSION {
            return Err(Error::Data(format!(
                "model dump version {} is not supported (expected {MODEL_DUMP_VERSION})",
                m.version
            )));
        }
        Ok(m)
    }
}

/// Trains the model named by `tag`.
pub fn fit(tag: ModelTag, x: &Mat, labels: &[f64], hyper: &Hyper, seed: u64) -> Result<TrainedModel> {
    let fitted = match (tag, hyper) {
        (ModelTag::Rnn(v), Hyper::Rnn(h)) => Fitted::Rnn(rnn::fit(v, x, labels, h, seed)?),
        (ModelTag::Hbc { family, kernel }, Hyper::Hbc(h)) => {
            let gaussian = matches!(h.kernel, Some(Kernel::Gaussian { .. }));
            if kernel != gaussian {
                return Err(Error::InvalidArgument(format!(
                    "{tag} expects {} hyper-parameters",
                    if kernel { "Gaussian-kernel" } else { "linear" }
                )));
            }
            Fitted::Hbc(hbc::fit(family, x, labels, h, seed)?)
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "hyper-parameters do not belong to {tag}"
            )))
        }
    };
    Ok(TrainedModel {
        version: MODEL_DUMP_VERSION,
        tag,
        hyper: *hyper,
        seed,
        fitted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_nine_unique_tags_round_trip() {
        let all = ModelTag::all();
        assert_eq!(all.len(), 29);
        let mut names: Vec<String> = all.iter().map(|t| t.name()).collect();
        for (t, n) in all.iter().zip(&names) {
            assert_eq!(n.parse::<ModelTag>().unwrap(), *t);
        }
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 29);
        assert_eq!(all[13].name(), "SVM-L");
        assert_eq!(all[28].name(), "Pin-GTSVM-K");
    }

    #[test]
    fn unknown_tag_lists_valid_ones() {
        let err = "SVM-X".parse::<ModelTag>().unwrap_err().to_string();
        assert!(err.contains("SVM-L") && err.contains("NF-BLS"));
    }

    #[test]
    fn kernel_form_must_match_tag() {
        let x = Mat::from_row_slice(4, 1, &[1.0, 2.0, -1.0, -2.0]);
        let y = [1.0, 1.0, -1.0, -1.0];
        let tag = ModelTag::Hbc { family: HbcFamily::Svm, kernel: true };
        assert!(fit(tag, &x, &y, &Hyper::Hbc(HbcHyper::default()), 1).is_err());
        assert!(fit(tag, &x, &y, &Hyper::Rnn(RnnHyper::default()), 1).is_err());
    }

    #[test]
    fn dump_round_trips_and_checks_version() {
        let x = Mat::from_row_slice(4, 1, &[1.0, 2.0, -1.0, -2.0]);
        let y = [1.0, 1.0, -1.0, -1.0];
        let m = fit(ModelTag::Rnn(RnnVariant::Rvfl), &x, &y, &Hyper::Rnn(RnnHyper::default()), 3).unwrap();
        let back = TrainedModel::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back, m);
        let mut old = m.clone();
        old.version = 0;
        assert!(TrainedModel::from_json(&old.to_json().unwrap()).is_err());
    }
}
