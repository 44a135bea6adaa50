use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};

use super::Dataset;
use crate::error::{Error, Result};

/// Group comparison of age (Welch t-test) and sex (Pearson χ², 1 dof, no continuity correction).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DemographicTests {
    pub t_statistic: f64,
    pub p_ttest: f64,
    pub chi2_statistic: f64,
    pub p_chi2: f64,
}

fn mean_var(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0);
    (m, v)
}

fn welch(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Data("t-test needs at least two samples per group".into()));
    }
    let (ma, va) = mean_var(a);
    let (mb, vb) = mean_var(b);
    let sa = va / a.len() as f64;
    let sb = vb / b.len() as f64;
    let se2 = sa + sb;
    if !(se2 > 0.0) {
        return Err(Error::Data("t-test undefined: both groups have zero variance".into()));
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2
        / (sa * sa / (a.len() as f64 - 1.0) + sb * sb / (b.len() as f64 - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::Numerical(e.to_string()))?;
    let p = 2.0 * dist.cdf(-t.abs());
    Ok((t, p.min(1.0)))
}

fn chi2_2x2(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    let mut levels: Vec<f64> = a.iter().chain(b.iter()).cloned().collect();
    levels.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    levels.dedup();
    if levels.len() > 2 {
        return Err(Error::Data(format!(
            "sex must be binary, found {} distinct values",
            levels.len()
        )));
    }
    if levels.len() < 2 {
        // one category only: no association is measurable
        return Ok((0.0, 1.0));
    }
    let count = |g: &[f64], lv: f64| g.iter().filter(|v| **v == lv).count() as f64;
    let obs = [
        [count(a, levels[0]), count(a, levels[1])],
        [count(b, levels[0]), count(b, levels[1])],
    ];
    let total: f64 = obs.iter().flatten().sum();
    let rows = [obs[0][0] + obs[0][1], obs[1][0] + obs[1][1]];
    let cols = [obs[0][0] + obs[1][0], obs[0][1] + obs[1][1]];
    let mut chi2 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let e = rows[i] * cols[j] / total;
            chi2 += (obs[i][j] - e).powi(2) / e;
        }
    }
    let dist = ChiSquared::new(1.0).map_err(|e| Error::Numerical(e.to_string()))?;
    Ok((chi2, dist.sf(chi2)))
}

pub fn demographics_tests(
    age_a: &[f64],
    age_b: &[f64],
    sex_a: &[f64],
    sex_b: &[f64],
) -> Result<DemographicTests> {
    let (t_statistic, p_ttest) = welch(age_a, age_b)?;
    if sex_a.is_empty() || sex_b.is_empty() {
        return Err(Error::Data("chi-square test needs both groups".into()));
    }
    let (chi2_statistic, p_chi2) = chi2_2x2(sex_a, sex_b)?;
    Ok(DemographicTests {
        t_statistic,
        p_ttest,
        chi2_statistic,
        p_chi2,
    })
}

/// Runs [`demographics_tests`] on the `age` and `sex` columns, SMC versus HC.
pub fn demographics_from_dataset(ds: &Dataset) -> Result<DemographicTests> {
    let age = ds
        .column_index("age")
        .ok_or_else(|| Error::Data("no age column".into()))?;
    let sex = ds
        .column_index("sex")
        .ok_or_else(|| Error::Data("no sex column".into()))?;
    let pick = |col: usize, positive: bool| -> Vec<f64> {
        (0..ds.n_samples())
            .filter(|&i| (ds.labels[i] > 0.0) == positive)
            .map(|i| ds.features[(i, col)])
            .collect()
    };
    demographics_tests(&pick(age, true), &pick(age, false), &pick(sex, true), &pick(sex, false))
}
