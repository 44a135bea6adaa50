use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use smcbench_core::eval::AccuracyMatrix;
use smcbench_core::stats::{self, TieMode};

pub struct StatsArgs {
    pub matrix: PathBuf,
    pub out_dir: PathBuf,
    pub ties: TieMode,
    pub critical: Option<f64>,
}

/// Models with any missing cell are dropped with a warning.
fn complete_rows(m: AccuracyMatrix) -> AccuracyMatrix {
    let keep: Vec<usize> = (0..m.models.len()).filter(|&i| m.values[i].iter().all(Option::is_some)).collect();
    for i in (0..m.models.len()).filter(|i| !keep.contains(i)) {
        log::warn!("dropping {}: missing accuracy cells", m.models[i]);
    }
    AccuracyMatrix {
        models: keep.iter().map(|&i| m.models[i].clone()).collect(),
        datasets: m.datasets,
        values: keep.iter().map(|&i| m.values[i].clone()).collect(),
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn cmd_stats(args: &StatsArgs) -> Result<()> {
    let m = AccuracyMatrix::load(&args.matrix)?;
    let m = complete_rows(m);
    if m.models.len() < 2 {
        bail!("need ≥2 models with complete rows, found {}", m.models.len());
    }
    let acc = m.by_dataset()?;
    let rm = stats::rank_models(&acc, args.ties)?;
    let fr = stats::friedman(&rm, args.critical)?;
    let wtl = stats::win_tie_loss(&acc, args.ties)?;

    fs::create_dir_all(&args.out_dir).with_context(|| format!("creating {}", args.out_dir.display()))?;
    write(&args.out_dir.join("ranks.csv"), &stats::ranks_csv(&rm, &m.models, &m.datasets))?;
    write(&args.out_dir.join("wtl.csv"), &stats::wtl_csv(&wtl, &m.models))?;
    write(
        &args.out_dir.join("friedman.txt"),
        &stats::friedman_text(&fr, m.models.len(), m.datasets.len(), &wtl, &m.models),
    )?;

    match fr.ff {
        Some(ff) => println!(
            "Friedman: chi2_F = {:.2}, F_F = {:.2}, critical F({}, {}) = {:.2}: {}",
            fr.chi2,
            ff,
            fr.dof1,
            fr.dof2,
            fr.critical_value,
            stats::verdict(&fr)
        ),
        None => println!("Friedman: chi2_F = {:.2}, F_F undefined: {}", fr.chi2, stats::verdict(&fr)),
    }
    println!(
        "win-tie-loss threshold {:.2}; {} significant pairs",
        wtl.threshold,
        wtl.significant_pairs.len()
    );
    Ok(())
}
