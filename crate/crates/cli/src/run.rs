use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use smcbench_core::dataio::{self, Dataset, Modality};
use smcbench_core::eval::{self, CellOutcome};
use smcbench_core::model::MODEL_DUMP_VERSION;

use crate::config::RunConfig;

/// Advisory column counts (regional features plus age and sex).
fn expected_dim(m: Modality) -> Option<usize> {
    match m {
        Modality::CT => Some(70),
        Modality::GM | Modality::JD | Modality::WM => Some(275),
        Modality::ALL => None,
    }
}

pub fn load_datasets(cfg: &RunConfig) -> Result<Vec<Dataset>> {
    let mut singles: BTreeMap<Modality, Dataset> = BTreeMap::new();
    for (name, path) in &cfg.inputs {
        let m: Modality = name.parse()?;
        let ds = dataio::load_modality(path, m, expected_dim(m))?;
        log::info!("{m}: {} subjects, {} features from {}", ds.n_samples(), ds.n_features(), path.display());
        singles.insert(m, ds);
    }
    let mut out = Vec::new();
    for m in &cfg.modalities {
        if *m == Modality::ALL {
            let parts: Vec<Dataset> = Modality::SINGLE.iter().map(|s| singles[s].clone()).collect();
            out.push(dataio::fuse_all(&parts)?);
        } else {
            out.push(singles[m].clone());
        }
    }
    Ok(out)
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    model_dump_version: u32,
    config_sha256: String,
    config: &'a RunConfig,
    input_sha256: BTreeMap<String, String>,
    seeds: &'a [u64],
    cells: usize,
    failed_cells: Vec<String>,
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Returns the number of failed cells.
pub fn cmd_run(cfg: &RunConfig) -> Result<usize> {
    let datasets = load_datasets(cfg)?;
    let tags = cfg.tags();
    log::info!(
        "{} models x {} modalities, {} seeds, {:?} grids",
        tags.len(),
        datasets.len(),
        cfg.protocol.seeds.len(),
        cfg.protocol.preset
    );
    let cells = eval::run_experiment(&tags, &datasets, &cfg.protocol);
    let outcomes: Vec<CellOutcome> = cells.iter().map(|(o, _)| o.clone()).collect();

    eval::write_results(&cfg.out, &outcomes)?;
    write(&cfg.out.join("results").join("outcomes.json"), &serde_json::to_string_pretty(&outcomes)?)?;
    for (o, artifact) in &cells {
        if let Some(a) = artifact {
            let path = cfg.out.join("models").join(o.modality().as_str()).join(format!("{}.json", o.tag().name()));
            write(&path, &a.to_json()?)?;
        }
    }

    let config_json = serde_json::to_string(cfg)?;
    let mut input_sha256 = BTreeMap::new();
    for (name, path) in &cfg.inputs {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        input_sha256.insert(name.clone(), sha256_hex(&bytes));
    }
    let failed_cells: Vec<String> = outcomes
        .iter()
        .filter(|o| o.result().is_none())
        .map(|o| format!("{}/{}", o.tag(), o.modality()))
        .collect();
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        model_dump_version: MODEL_DUMP_VERSION,
        config_sha256: sha256_hex(config_json.as_bytes()),
        config: cfg,
        input_sha256,
        seeds: &cfg.protocol.seeds,
        cells: outcomes.len(),
        failed_cells,
    };
    write(&cfg.out.join("manifest.json"), &serde_json::to_string_pretty(&manifest)?)?;
    let failed = manifest.failed_cells.len();
    println!(
        "{} cells, {} failed; results in {}",
        outcomes.len(),
        failed,
        cfg.out.join("results").display()
    );
    Ok(failed)
}
