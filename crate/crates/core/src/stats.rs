//! Rank-based comparison of several models over several datasets: tie-averaged
//! ranks, the Friedman test with its F refinement, and the pairwise
//! win-tie-loss sign test.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, FisherSnedecor};

use crate::error::{Error, Result};
use crate::eval::round_half_up;

/// How two accuracies are judged equal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TieMode {
    /// Full precision.
    Exact,
    /// Equal after half-up rounding to this many decimals.
    Decimals(u32),
    /// Equal when they correspond to the same number of correct predictions
    /// out of `n` test samples, i.e. `round(acc/100 · n)` agrees.
    CountGrid(usize),
}

impl TieMode {
    fn key(self, acc: f64) -> f64 {
        match self {
            TieMode::Exact => acc,
            TieMode::Decimals(d) => round_half_up(acc, d),
            TieMode::CountGrid(n) => (acc / 100.0 * n as f64).round(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankMatrix {
    /// `ranks[dataset][model]`, 1 = best.
    pub ranks: Vec<Vec<f64>>,
    pub avg_ranks: Vec<f64>,
    pub n_models: usize,
    pub n_datasets: usize,
}

fn check_matrix(acc: &[Vec<f64>]) -> Result<(usize, usize)> {
    let p = acc.len();
    if p == 0 {
        return Err(Error::InvalidArgument("need at least one dataset".into()));
    }
    let n = acc[0].len();
    for (i, row) in acc.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("missing accuracy at dataset {i}, model {j}")));
        }
    }
    Ok((p, n))
}

/// Ranks the models on every dataset (rows of `acc`, columns = models); the
/// highest accuracy gets rank 1 and tied models share the mean of their positions.
pub fn rank_models(acc: &[Vec<f64>], ties: TieMode) -> Result<RankMatrix> {
    let (p, n) = check_matrix(acc)?;
    let mut ranks = vec![vec![0.0; n]; p];
    for (row, out) in acc.iter().zip(ranks.iter_mut()) {
        let keys: Vec<f64> = row.iter().map(|v| ties.key(*v)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]));
        let mut i = 0;
        while i < n {
            let mut j = i;
            while j + 1 < n && keys[order[j + 1]] == keys[order[i]] {
                j += 1;
            }
            // positions i..=j (0-based) share rank mean(i+1..=j+1)
            let r = (i + j) as f64 / 2.0 + 1.0;
            for &m in &order[i..=j] {
                out[m] = r;
            }
            i = j + 1;
        }
    }
    let avg_ranks = (0..n).map(|m| ranks.iter().map(|r| r[m]).sum::<f64>() / p as f64).collect();
    Ok(RankMatrix {
        ranks,
        avg_ranks,
        n_models: n,
        n_datasets: p,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub chi2: f64,
    /// `None` at the pole `P(N−1) = χ²`.
    pub ff: Option<f64>,
    pub dof1: usize,
    pub dof2: usize,
    pub critical_value: f64,
    pub reject: bool,
}

/// Upper 5% point of F(dof1, dof2).
pub fn f_critical(dof1: usize, dof2: usize, alpha: f64) -> Result<f64> {
    let d = FisherSnedecor::new(dof1 as f64, dof2 as f64)
        .map_err(|e| Error::InvalidArgument(format!("F({dof1}, {dof2}): {e}")))?;
    Ok(d.inverse_cdf(1.0 - alpha))
}

/// Friedman statistics from the average ranks of `n_models` over `n_datasets`.
pub fn friedman_from_avg_ranks(avg_ranks: &[f64], n_datasets: usize, critical_value: Option<f64>) -> Result<FriedmanResult> {
    let n = avg_ranks.len();
    let p = n_datasets;
    if n < 2 {
        return Err(Error::InvalidArgument("need ≥2 models".into()));
    }
    if p < 2 {
        return Err(Error::InvalidArgument("need ≥2 datasets".into()));
    }
    let (nf, pf) = (n as f64, p as f64);
    let sum_sq: f64 = avg_ranks.iter().map(|r| r * r).sum();
    let chi2 = 12.0 * pf / (nf * (nf + 1.0)) * (sum_sq - nf * (nf + 1.0).powi(2) / 4.0);
    let den = pf * (nf - 1.0) - chi2;
    let ff = if den.abs() < 1e-12 {
        log::warn!("Friedman F statistic is undefined: P(N-1) equals chi2");
        None
    } else {
        Some((pf - 1.0) * chi2 / den)
    };
    let dof1 = n - 1;
    let dof2 = (n - 1) * (p - 1);
    let critical_value = match critical_value {
        Some(c) => c,
        None => f_critical(dof1, dof2, 0.05)?,
    };
    Ok(FriedmanResult {
        chi2,
        ff,
        dof1,
        dof2,
        critical_value,
        reject: ff.is_some_and(|f| f > critical_value),
    })
}

/// Friedman test on a rank matrix. `critical_value: None` uses the 5% point of
/// F(N−1, (N−1)(P−1)).
pub fn friedman(rm: &RankMatrix, critical_value: Option<f64>) -> Result<FriedmanResult> {
    friedman_from_avg_ranks(&rm.avg_ranks, rm.n_datasets, critical_value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WtlTable {
    /// `wtl[i][j]` = (wins, ties, losses) of model i against model j.
    pub wtl: Vec<Vec<[usize; 3]>>,
    pub threshold: f64,
    /// (i, j) pairs where model i is significantly better than model j.
    pub significant_pairs: Vec<(usize, usize)>,
}

/// `P/2 + 1.96·√P/2`.
pub fn wtl_threshold(n_datasets: usize) -> f64 {
    let p = n_datasets as f64;
    p / 2.0 + 1.96 * p.sqrt() / 2.0
}

/// Significance of a (wins, ties) record: ties are split evenly between the two
/// models, one being dropped when their number is odd.
pub fn wtl_significant(wins: usize, ties: usize, threshold: f64) -> bool {
    (wins + ties / 2) as f64 >= threshold
}

pub fn win_tie_loss(acc: &[Vec<f64>], ties: TieMode) -> Result<WtlTable> {
    let (p, n) = check_matrix(acc)?;
    let threshold = wtl_threshold(p);
    let mut wtl = vec![vec![[0usize; 3]; n]; n];
    for row in acc {
        let keys: Vec<f64> = row.iter().map(|v| ties.key(*v)).collect();
        for i in 0..n {
            for j in 0..n {
                let slot = match keys[i].total_cmp(&keys[j]) {
                    std::cmp::Ordering::Greater => 0,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Less => 2,
                };
                wtl[i][j][slot] += 1;
            }
        }
    }
    let mut significant_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && wtl_significant(wtl[i][j][0], wtl[i][j][1], threshold) {
                significant_pairs.push((i, j));
            }
        }
    }
    Ok(WtlTable {
        wtl,
        threshold,
        significant_pairs,
    })
}

fn fmt_num(v: f64) -> String {
    format!("{}", round_half_up(v, 2))
}

/// `ranks.csv`: one row per dataset plus an `Average` row.
pub fn ranks_csv(rm: &RankMatrix, models: &[String], datasets: &[String]) -> String {
    let mut s = format!("dataset,{}\n", models.join(","));
    for (d, row) in datasets.iter().zip(&rm.ranks) {
        let cells: Vec<String> = row.iter().map(|v| fmt_num(*v)).collect();
        writeln!(s, "{d},{}", cells.join(",")).unwrap();
    }
    let avg: Vec<String> = rm.avg_ranks.iter().map(|v| fmt_num(*v)).collect();
    writeln!(s, "Average,{}", avg.join(",")).unwrap();
    s
}

/// `wtl.csv`: cell (i, j) is `[w, t, l]` of row model i against column model j.
pub fn wtl_csv(t: &WtlTable, models: &[String]) -> String {
    let mut s = format!("model,{}\n", models.join(","));
    for (i, m) in models.iter().enumerate() {
        let cells: Vec<String> = t.wtl[i]
            .iter()
            .map(|c| format!("\"[{}, {}, {}]\"", c[0], c[1], c[2]))
            .collect();
        writeln!(s, "{m},{}", cells.join(",")).unwrap();
    }
    s
}

pub fn verdict(f: &FriedmanResult) -> &'static str {
    if f.reject {
        "reject"
    } else {
        "fail to reject"
    }
}

/// `friedman.txt`.
pub fn friedman_text(f: &FriedmanResult, n_models: usize, n_datasets: usize, wtl: &WtlTable, models: &[String]) -> String {
    let mut s = String::new();
    writeln!(s, "models (N): {n_models}").unwrap();
    writeln!(s, "datasets (P): {n_datasets}").unwrap();
    writeln!(s, "chi2_F: {:.4}", f.chi2).unwrap();
    match f.ff {
        Some(ff) => writeln!(s, "F_F: {ff:.4}").unwrap(),
        None => writeln!(s, "F_F: undefined (P(N-1) = chi2_F)").unwrap(),
    }
    writeln!(s, "F critical ({}, {}) at 5%: {:.4}", f.dof1, f.dof2, f.critical_value).unwrap();
    writeln!(s, "verdict: {}", verdict(f)).unwrap();
    writeln!(s, "win-tie-loss threshold: {:.4}", wtl.threshold).unwrap();
    for &(i, j) in &wtl.significant_pairs {
        let c = wtl.wtl[i][j];
        writeln!(s, "significant: {} over {} [{}, {}, {}]", models[i], models[j], c[0], c[1], c[2]).unwrap();
    }
    s
}
