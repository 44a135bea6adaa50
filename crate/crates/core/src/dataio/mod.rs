//! Feature-table ingestion and dataset plumbing.
//!
//! A modality table is comma-delimited with a header row. One column is named
//! `subject_id`, one `label` (`SMC`/`HC`, mapped to +1/−1), every other column is a
//! numeric feature. Age and sex ride along as ordinary feature columns.

mod demographics;
mod split;

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numcore::Mat;

pub use demographics::{demographics_from_dataset, demographics_tests, DemographicTests};
pub use split::{kfold_indices, split_train_test, standardize, FoldAssignment, ScalerParams, SplitSpec};

/// Columns treated as demographics; kept once when modalities are fused.
pub const DEMOGRAPHIC_COLUMNS: [&str; 2] = ["age", "sex"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Modality {
    CT,
    GM,
    JD,
    WM,
    ALL,
}

impl Modality {
    pub const ALL_MODALITIES: [Modality; 5] =
        [Modality::CT, Modality::GM, Modality::JD, Modality::WM, Modality::ALL];
    pub const SINGLE: [Modality; 4] = [Modality::CT, Modality::GM, Modality::JD, Modality::WM];

    pub fn as_str(self) -> &'static str {
        match self {
            Modality::CT => "CT",
            Modality::GM => "GM",
            Modality::JD => "JD",
            Modality::WM => "WM",
            Modality::ALL => "ALL",
        }
    }

    /// Conventional file name, e.g. `gm.csv`.
    pub fn file_name(self) -> String {
        format!("{}.csv", self.as_str().to_ascii_lowercase())
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Modality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "CT" => Ok(Modality::CT),
            "GM" => Ok(Modality::GM),
            "JD" => Ok(Modality::JD),
            "WM" => Ok(Modality::WM),
            "ALL" | "ALL FEATURES" | "ALL_FEATURES" => Ok(Modality::ALL),
            other => Err(Error::InvalidArgument(format!(
                "unknown modality '{other}' (expected CT, GM, JD, WM or ALL)"
            ))),
        }
    }
}

/// Labeled feature matrix for one modality. Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub modality: Modality,
    pub features: Mat,
    pub feature_names: Vec<String>,
    /// +1 = SMC, −1 = HC.
    pub labels: Vec<f64>,
    pub subject_ids: Vec<String>,
}

impl Dataset {
    pub fn new(
        modality: Modality,
        features: Mat,
        feature_names: Vec<String>,
        labels: Vec<f64>,
        subject_ids: Vec<String>,
    ) -> Result<Self> {
        let n = features.nrows();
        if labels.len() != n || subject_ids.len() != n {
            return Err(Error::Data(format!(
                "{} feature rows, {} labels, {} subject ids",
                n,
                labels.len(),
                subject_ids.len()
            )));
        }
        if feature_names.len() != features.ncols() {
            return Err(Error::Data(format!(
                "{} feature names for {} columns",
                feature_names.len(),
                features.ncols()
            )));
        }
        if let Some(bad) = labels.iter().find(|l| **l != 1.0 && **l != -1.0) {
            return Err(Error::Data(format!("label {bad} is not +1/-1")));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = feature_names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::Data(format!("duplicate feature name '{dup}'")));
        }
        if features.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data("feature matrix contains NaN or Inf".into()));
        }
        Ok(Self {
            modality,
            features,
            feature_names,
            labels,
            subject_ids,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.features.nrows()
    }

    pub fn n_features(&self) -> usize {
        self.features.ncols()
    }

    /// (positives, negatives)
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|l| **l > 0.0).count();
        (pos, self.labels.len() - pos)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.feature_names
            .iter()
            .position(|n| n.eq_ignore_ascii_case(name))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Dataset {
        let features = self.features.select_rows(rows.iter());
        Dataset {
            modality: self.modality,
            features,
            feature_names: self.feature_names.clone(),
            labels: rows.iter().map(|&r| self.labels[r]).collect(),
            subject_ids: rows.iter().map(|&r| self.subject_ids[r].clone()).collect(),
        }
    }

    pub fn with_features(&self, features: Mat) -> Result<Dataset> {
        Dataset::new(
            self.modality,
            features,
            self.feature_names.clone(),
            self.labels.clone(),
            self.subject_ids.clone(),
        )
    }
}

fn parse_label(raw: &str) -> Option<f64> {
    match raw.trim().to_ascii_uppercase().as_str() {
        "SMC" | "SCD" | "1" | "+1" | "1.0" => Some(1.0),
        "HC" | "CN" | "-1" | "-1.0" => Some(-1.0),
        _ => None,
    }
}

fn is_demographic(name: &str) -> bool {
    DEMOGRAPHIC_COLUMNS.iter().any(|d| name.eq_ignore_ascii_case(d))
}

/// Reads one modality table.
///
/// `expected_dim` is advisory: a mismatch with the number of feature columns is
/// logged, not rejected.
pub fn load_modality(path: &Path, modality: Modality, expected_dim: Option<usize>) -> Result<Dataset> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_modality(&bytes, modality, expected_dim)
        .map_err(|e| match e {
            Error::Data(msg) => Error::Data(format!("{}: {msg}", path.display())),
            other => other,
        })
}

/// Parses modality-table bytes; see [`load_modality`].
pub fn parse_modality(bytes: &[u8], modality: Modality, expected_dim: Option<usize>) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = match reader.headers() {
        Ok(h) if !h.is_empty() && !(h.len() == 1 && h[0].is_empty()) => h.clone(),
        _ => return Err(Error::Data("no rows".into())),
    };
    let find = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let id_col = find("subject_id").ok_or_else(|| Error::Data("missing subject_id column".into()))?;
    let label_col = find("label").ok_or_else(|| Error::Data("missing label column".into()))?;
    let feature_cols: Vec<usize> = (0..headers.len())
        .filter(|&c| c != id_col && c != label_col)
        .collect();
    let feature_names: Vec<String> = feature_cols.iter().map(|&c| headers[c].to_string()).collect();

    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut ids = Vec::new();
    let mut seen = HashSet::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let line = row + 2;
        let id = record.get(id_col).unwrap_or("").to_string();
        if !seen.insert(id.clone()) {
            return Err(Error::Data(format!("duplicate subject id '{id}' on line {line}")));
        }
        let raw_label = record.get(label_col).unwrap_or("");
        let label = parse_label(raw_label)
            .ok_or_else(|| Error::Data(format!("unrecognised label '{raw_label}' on line {line}")))?;
        for &c in &feature_cols {
            let cell = record.get(c).unwrap_or("");
            let v: f64 = cell.parse().map_err(|_| {
                Error::Data(format!(
                    "non-numeric value '{cell}' in column '{}' on line {line}",
                    &headers[c]
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::Data(format!(
                    "non-finite value in column '{}' on line {line}",
                    &headers[c]
                )));
            }
            values.push(v);
        }
        labels.push(label);
        ids.push(id);
    }
    if ids.is_empty() {
        return Err(Error::Data("no rows".into()));
    }
    if let Some(expected) = expected_dim {
        if expected != feature_names.len() {
            log::warn!(
                "{modality}: {} feature columns, expected {expected}",
                feature_names.len()
            );
        }
    }
    let features = Mat::from_row_slice(ids.len(), feature_names.len(), &values);
    Dataset::new(modality, features, feature_names, labels, ids)
}

/// Concatenates modality tables column-wise into the fused `ALL` set.
///
/// Feature names gain a `MOD:` prefix; age and sex are kept once, at the end.
/// Parts that are themselves fused keep their (already prefixed) names.
pub fn fuse_all(parts: &[Dataset]) -> Result<Dataset> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("fuse_all needs at least one part".into()))?;
    if parts.len() == 1 {
        let mut out = first.clone();
        out.modality = Modality::ALL;
        return Ok(out);
    }
    let mut seen_modalities = HashSet::new();
    for p in parts {
        if p.modality != Modality::ALL && !seen_modalities.insert(p.modality) {
            return Err(Error::InvalidArgument(format!(
                "modality {} appears more than once",
                p.modality
            )));
        }
        if p.subject_ids != first.subject_ids {
            return Err(Error::Data(format!(
                "subject ids of {} do not match {} (same subjects in the same order required)",
                p.modality, first.modality
            )));
        }
        if p.labels != first.labels {
            return Err(Error::Data(format!(
                "labels of {} disagree with {}",
                p.modality, first.modality
            )));
        }
    }
    let n = first.n_samples();
    let mut names = Vec::new();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut demo: Vec<(String, Vec<f64>)> = Vec::new();
    for p in parts {
        for (c, name) in p.feature_names.iter().enumerate() {
            let col: Vec<f64> = p.features.column(c).iter().cloned().collect();
            if is_demographic(name) {
                if !demo.iter().any(|(d, _)| d.eq_ignore_ascii_case(name)) {
                    demo.push((name.clone(), col));
                }
                continue;
            }
            let full = if p.modality == Modality::ALL {
                name.clone()
            } else {
                format!("{}:{}", p.modality, name)
            };
            names.push(full);
            columns.push(col);
        }
    }
    for (name, col) in demo {
        names.push(name);
        columns.push(col);
    }
    let features = Mat::from_fn(n, columns.len(), |i, j| columns[j][i]);
    Dataset::new(
        Modality::ALL,
        features,
        names,
        first.labels.clone(),
        first.subject_ids.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(modality: &str, n_regional: usize, rows: usize) -> String {
        let mut s = String::from("subject_id,label");
        for r in 0..n_regional {
            s.push_str(&format!(",{modality}_r{r}"));
        }
        s.push_str(",age,sex\n");
        for i in 0..rows {
            let label = if i % 2 == 0 { "SMC" } else { "HC" };
            s.push_str(&format!("S{i:03},{label}"));
            for r in 0..n_regional {
                s.push_str(&format!(",{}", (i * 31 + r * 7) % 13));
            }
            s.push_str(&format!(",{},{}\n", 70 + i % 9, i % 2));
        }
        s
    }

    fn load(modality: Modality, regional: usize) -> Dataset {
        let t = table(modality.as_str(), regional, 222);
        parse_modality(t.as_bytes(), modality, None).unwrap()
    }

    #[test]
    fn loads_balanced_gm_table() {
        let ds = load(Modality::GM, 273);
        assert_eq!(ds.n_samples(), 222);
        assert_eq!(ds.n_features(), 275);
        assert_eq!(ds.class_counts(), (111, 111));
    }

    #[test]
    fn ct_has_regional_plus_demographics() {
        let ds = load(Modality::CT, 68);
        assert_eq!(ds.n_features(), 70);
        assert!(ds.column_index("age").is_some());
    }

    #[test]
    fn empty_input_is_no_rows() {
        let err = parse_modality(b"", Modality::CT, None).unwrap_err();
        assert!(err.to_string().contains("no rows"));
        let err = parse_modality(b"subject_id,label,a\n", Modality::CT, None).unwrap_err();
        assert!(err.to_string().contains("no rows"));
    }

    #[test]
    fn ingestion_errors() {
        let missing_label = "subject_id,a\nS1,1\n";
        assert!(parse_modality(missing_label.as_bytes(), Modality::CT, None)
            .unwrap_err()
            .to_string()
            .contains("label"));
        let bad_cell = "subject_id,label,a\nS1,SMC,abc\n";
        assert!(parse_modality(bad_cell.as_bytes(), Modality::CT, None).is_err());
        let nan = "subject_id,label,a\nS1,SMC,NaN\n";
        assert!(parse_modality(nan.as_bytes(), Modality::CT, None).is_err());
        let dup = "subject_id,label,a\nS1,SMC,1\nS1,HC,2\n";
        assert!(parse_modality(dup.as_bytes(), Modality::CT, None)
            .unwrap_err()
            .to_string()
            .contains("duplicate"));
    }

    #[test]
    fn expected_dim_is_advisory() {
        let t = table("CT", 3, 4);
        assert!(parse_modality(t.as_bytes(), Modality::CT, Some(68)).is_ok());
    }

    #[test]
    fn ingestion_is_pure() {
        let t = table("WM", 5, 10);
        let a = parse_modality(t.as_bytes(), Modality::WM, None).unwrap();
        let b = parse_modality(t.as_bytes(), Modality::WM, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fused_feature_count() {
        let parts = [
            load(Modality::CT, 68),
            load(Modality::GM, 273),
            load(Modality::JD, 273),
            load(Modality::WM, 273),
        ];
        let all = fuse_all(&parts).unwrap();
        assert_eq!(all.n_features(), 68 + 273 * 3 + 2);
        assert_eq!(all.modality, Modality::ALL);
        assert!(all.feature_names.iter().any(|n| n == "GM:GM_r0"));
        assert_eq!(all.feature_names.last().unwrap(), "sex");
    }

    #[test]
    fn single_part_is_relabelled() {
        let ct = load(Modality::CT, 4);
        let all = fuse_all(std::slice::from_ref(&ct)).unwrap();
        assert_eq!(all.features, ct.features);
        assert_eq!(all.modality, Modality::ALL);
    }

    #[test]
    fn shuffled_subjects_rejected() {
        let ct = load(Modality::CT, 4);
        let gm = load(Modality::GM, 4);
        let mut order: Vec<usize> = (0..gm.n_samples()).collect();
        order.swap(0, 1);
        let shuffled = gm.select_rows(&order);
        assert!(fuse_all(&[ct, shuffled]).is_err());
    }

    #[test]
    fn repeated_modality_rejected() {
        let ct = load(Modality::CT, 4);
        assert!(fuse_all(&[ct.clone(), ct]).is_err());
    }

    #[test]
    fn fusion_is_associative_in_columns() {
        let ct = load(Modality::CT, 3);
        let gm = load(Modality::GM, 4);
        let jd = load(Modality::JD, 5);
        let left = fuse_all(&[fuse_all(&[ct.clone(), gm.clone()]).unwrap(), jd.clone()]).unwrap();
        let right = fuse_all(&[ct.clone(), fuse_all(&[gm.clone(), jd.clone()]).unwrap()]).unwrap();
        let flat = fuse_all(&[ct, gm, jd]).unwrap();
        let set = |d: &Dataset| d.feature_names.iter().cloned().collect::<HashSet<_>>();
        assert_eq!(set(&left), set(&flat));
        assert_eq!(set(&right), set(&flat));
    }

    #[test]
    fn modality_parsing() {
        assert_eq!("gm".parse::<Modality>().unwrap(), Modality::GM);
        assert_eq!("All".parse::<Modality>().unwrap(), Modality::ALL);
        assert!("XX".parse::<Modality>().is_err());
        assert_eq!(Modality::JD.file_name(), "jd.csv");
    }
}
