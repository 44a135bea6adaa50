//! Result files: per-repetition CSVs, the accuracy matrix and a Markdown summary.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::experiment::CellOutcome;
use super::metrics::round_half_up;
use crate::dataio::Modality;
use crate::error::{Error, Result};

/// Marker written for a failed or missing cell.
pub const MISSING: &str = "NA";

/// Model × dataset accuracy table in percent.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyMatrix {
    pub models: Vec<String>,
    pub datasets: Vec<String>,
    /// `values[model][dataset]`; `None` marks a missing cell.
    pub values: Vec<Vec<Option<f64>>>,
}

impl AccuracyMatrix {
    /// Selected-repetition test accuracies, full precision.
    pub fn from_outcomes(outcomes: &[CellOutcome]) -> Self {
        Self::build(outcomes, |r| 100.0 * r.selected_report().acc)
    }

    /// Mean test accuracy over repetitions.
    pub fn means_from_outcomes(outcomes: &[CellOutcome]) -> Self {
        Self::build(outcomes, |r| 100.0 * r.mean_acc)
    }

    fn build(outcomes: &[CellOutcome], value: impl Fn(&super::ExperimentResult) -> f64) -> Self {
        let mut models: Vec<String> = Vec::new();
        for o in outcomes {
            let name = o.tag().name();
            if !models.contains(&name) {
                models.push(name);
            }
        }
        let mods: Vec<Modality> = Modality::ALL_MODALITIES
            .iter()
            .copied()
            .filter(|m| outcomes.iter().any(|o| o.modality() == *m))
            .collect();
        let mut values = vec![vec![None; mods.len()]; models.len()];
        for o in outcomes {
            let i = models.iter().position(|m| *m == o.tag().name()).unwrap();
            let j = mods.iter().position(|m| *m == o.modality()).unwrap();
            values[i][j] = o.result().map(&value);
        }
        Self {
            models,
            datasets: mods.iter().map(|m| m.as_str().to_string()).collect(),
            values,
        }
    }

    pub fn has_missing(&self) -> bool {
        self.values.iter().flatten().any(|v| v.is_none())
    }

    /// Dataset-major view (rows = datasets, columns = models) with no missing cells.
    pub fn by_dataset(&self) -> Result<Vec<Vec<f64>>> {
        let mut out = vec![vec![0.0; self.models.len()]; self.datasets.len()];
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[j][i] = v.ok_or_else(|| {
                    Error::Data(format!("missing accuracy for {} on {}", self.models[i], self.datasets[j]))
                })?;
            }
        }
        Ok(out)
    }

    /// CSV with values rounded half-up to two decimals.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("model");
        for d in &self.datasets {
            s.push(',');
            s.push_str(d);
        }
        s.push('\n');
        for (m, row) in self.models.iter().zip(&self.values) {
            s.push_str(m);
            for v in row {
                s.push(',');
                match v {
                    Some(v) => write!(s, "{:.2}", round_half_up(*v, 2)).unwrap(),
                    None => s.push_str(MISSING),
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let headers = rdr.headers()?.clone();
        if headers.len() < 2 {
            return Err(Error::Data("accuracy matrix needs a model column and at least one dataset".into()));
        }
        let datasets: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut models = Vec::new();
        let mut values = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            if rec.len() != headers.len() {
                return Err(Error::Data(format!(
                    "row {} has {} fields, expected {}",
                    line + 2,
                    rec.len(),
                    headers.len()
                )));
            }
            models.push(rec[0].to_string());
            let row = rec
                .iter()
                .skip(1)
                .map(|f| {
                    if f.eq_ignore_ascii_case(MISSING) || f.is_empty() {
                        Ok(None)
                    } else {
                        f.parse::<f64>()
                            .map(Some)
                            .map_err(|_| Error::Data(format!("bad accuracy '{f}' in row {}", line + 2)))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            values.push(row);
        }
        if models.is_empty() {
            return Err(Error::Data("accuracy matrix has no model rows".into()));
        }
        Ok(Self {
            models,
            datasets,
            values,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_csv(&text)
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Per-repetition metrics of one cell.
pub fn repetitions_csv(outcome: &CellOutcome) -> String {
    let mut s = String::from("seed,cv_acc,acc,sens,spec,prec,fmeasure,tp,tn,fp,fn,undefined,selected,hyper\n");
    if let Some(r) = outcome.result() {
        for (i, rep) in r.repetitions.iter().enumerate() {
            let t = &rep.test;
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},\"{}\"",
                rep.seed,
                rep.cv_accuracy,
                t.acc,
                t.sens,
                t.spec,
                t.prec,
                t.fmeasure,
                t.cm.tp,
                t.cm.tn,
                t.cm.fp,
                t.cm.fn_,
                t.undefined,
                i == r.selected,
                rep.hyper.describe(r.tag)
            )
            .unwrap();
        }
    }
    s
}

fn pct(v: f64) -> String {
    format!("{}", round_half_up(100.0 * v, 2))
}

/// Markdown table with `[Acc, Sens, Spec, Prec, F]` per cell, one row per model.
pub fn markdown_summary(outcomes: &[CellOutcome]) -> String {
    let m = AccuracyMatrix::from_outcomes(outcomes);
    let mut s = String::new();
    s.push_str("| Model |");
    for d in &m.datasets {
        write!(s, " {d} |").unwrap();
    }
    s.push('\n');
    s.push_str("|---|");
    for _ in &m.datasets {
        s.push_str("---|");
    }
    s.push('\n');
    for model in &m.models {
        write!(s, "| {model} |").unwrap();
        for d in &m.datasets {
            let cell = outcomes
                .iter()
                .find(|o| o.tag().name() == *model && o.modality().as_str() == d);
            match cell.and_then(|o| o.result()) {
                Some(r) => {
                    let t = r.selected_report();
                    write!(
                        s,
                        " [{}, {}, {}, {}, {}] ({} ± {}) |",
                        pct(t.acc),
                        pct(t.sens),
                        pct(t.spec),
                        pct(t.prec),
                        pct(t.fmeasure),
                        pct(r.mean_acc),
                        pct(r.std_acc)
                    )
                    .unwrap();
                }
                None => write!(s, " {MISSING} |").unwrap(),
            }
        }
        s.push('\n');
    }
    s.push_str("\nCells: [Acc, Sens, Spec, Prec, F-measure] of the selected repetition, then mean ± std accuracy over repetitions.\n");
    s
}

/// Writes `results/<modality>/<model>.csv`, `results/accuracy_matrix.csv`,
/// `results/accuracy_matrix_mean.csv` and `results/summary.md` under `out`.
pub fn write_results(out: &Path, outcomes: &[CellOutcome]) -> Result<()> {
    let results = out.join("results");
    for o in outcomes {
        let path = results.join(o.modality().as_str()).join(format!("{}.csv", o.tag().name()));
        write(&path, &repetitions_csv(o))?;
    }
    write(&results.join("accuracy_matrix.csv"), &AccuracyMatrix::from_outcomes(outcomes).to_csv())?;
    write(
        &results.join("accuracy_matrix_mean.csv"),
        &AccuracyMatrix::means_from_outcomes(outcomes).to_csv(),
    )?;
    let failed: Vec<String> = outcomes
        .iter()
        .filter_map(|o| match o {
            CellOutcome::Failed { tag, modality, error } => Some(format!("{tag},{modality},\"{error}\"")),
            _ => None,
        })
        .collect();
    if !failed.is_empty() {
        write(&results.join("failed_cells.csv"), &format!("model,modality,error\n{}\n", failed.join("\n")))?;
    }
    write(&results.join("summary.md"), &markdown_summary(outcomes))
}
