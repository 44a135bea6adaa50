//! Run configuration: a flat TOML file merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use smcbench_core::dataio::Modality;
use smcbench_core::eval::{GridPreset, Protocol};
use smcbench_core::model::ModelTag;

/// Keys accepted in the config file. Every key is optional.
///
/// ```toml
/// data_dir = "data"            # holds ct.csv, gm.csv, jd.csv, wm.csv
/// gm = "elsewhere/gm.csv"      # per-modality override
/// modalities = ["GM", "ALL"]
/// models = ["dRVFL", "SVM-K"]  # or "all", "rnn", "hbc"
/// seeds = [1, 2, 3]            # or repetitions = 20 for seeds 1..=20
/// folds = 5
/// train_fraction = 0.7
/// stratified = true
/// standardize = true
/// full_grid = false
/// out = "out"
/// jobs = 8
///
/// [grid."SVM-K"]
/// C = [0.5, 8.0]
/// ```
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub data_dir: Option<PathBuf>,
    pub ct: Option<PathBuf>,
    pub gm: Option<PathBuf>,
    pub jd: Option<PathBuf>,
    pub wm: Option<PathBuf>,
    pub modalities: Option<Vec<String>>,
    pub models: Option<Vec<String>>,
    pub seeds: Option<Vec<u64>>,
    pub repetitions: Option<u64>,
    pub folds: Option<usize>,
    pub train_fraction: Option<f64>,
    pub stratified: Option<bool>,
    pub standardize: Option<bool>,
    pub full_grid: Option<bool>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    #[serde(default)]
    pub grid: BTreeMap<String, BTreeMap<String, Vec<f64>>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Fully resolved settings of one run; serialized into the manifest.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub inputs: BTreeMap<String, PathBuf>,
    pub modalities: Vec<Modality>,
    pub models: Vec<String>,
    pub protocol: Protocol,
    pub out: PathBuf,
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn tags(&self) -> Vec<ModelTag> {
        self.models.iter().map(|m| m.parse().expect("validated")).collect()
    }
}

/// Expands `all`, `rnn` and `hbc`; other entries must be model tags.
pub fn parse_models(items: &[String]) -> Result<Vec<ModelTag>> {
    let mut out: Vec<ModelTag> = Vec::new();
    for item in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let group = match item.to_ascii_lowercase().as_str() {
            "all" => ModelTag::all(),
            "rnn" => ModelTag::rnn_tags(),
            "hbc" => ModelTag::hbc_tags(),
            _ => vec![item.parse::<ModelTag>()?],
        };
        for t in group {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    if out.is_empty() {
        bail!("no models selected");
    }
    Ok(out)
}

pub fn parse_modalities(items: &[String]) -> Result<Vec<Modality>> {
    let mut out: Vec<Modality> = Vec::new();
    for item in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let m: Modality = item.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        bail!("no modalities selected");
    }
    out.sort();
    Ok(out)
}

/// `TAG:AXIS=v1,v2,...`
pub fn parse_grid_override(s: &str) -> Result<(String, String, Vec<f64>)> {
    let (tag, rest) = s.split_once(':').with_context(|| format!("grid override '{s}' is not TAG:AXIS=values"))?;
    let (axis, values) = rest
        .split_once('=')
        .with_context(|| format!("grid override '{s}' is not TAG:AXIS=values"))?;
    let values = values
        .split(',')
        .map(|v| v.trim().parse::<f64>().with_context(|| format!("bad value '{v}' in grid override '{s}'")))
        .collect::<Result<Vec<_>>>()?;
    Ok((tag.trim().to_string(), axis.trim().to_string(), values))
}

/// Values given on the command line; `None` falls through to the config file.
#[derive(Debug, Default, Clone)]
pub struct FlagValues {
    pub data_dir: Option<PathBuf>,
    pub paths: [Option<PathBuf>; 4],
    pub modalities: Option<Vec<String>>,
    pub models: Option<Vec<String>>,
    pub seeds: Option<Vec<u64>>,
    pub repetitions: Option<u64>,
    pub folds: Option<usize>,
    pub train_fraction: Option<f64>,
    pub no_stratify: bool,
    pub no_standardize: bool,
    pub full_grid: bool,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub grid: Vec<String>,
}

pub fn resolve(file: ConfigFile, flags: FlagValues) -> Result<RunConfig> {
    let defaults = Protocol::default();
    let data_dir = flags.data_dir.or(file.data_dir);
    let file_paths = [file.ct, file.gm, file.jd, file.wm];

    let modalities = parse_modalities(
        &flags
            .modalities
            .or(file.modalities)
            .unwrap_or_else(|| Modality::ALL_MODALITIES.iter().map(|m| m.to_string()).collect()),
    )?;
    let needed: Vec<Modality> = if modalities.contains(&Modality::ALL) {
        Modality::SINGLE.to_vec()
    } else {
        modalities.clone()
    };
    let mut inputs = BTreeMap::new();
    for m in needed {
        let k = Modality::SINGLE.iter().position(|s| *s == m).expect("single modality");
        let path = flags.paths[k]
            .clone()
            .or_else(|| file_paths[k].clone())
            .or_else(|| data_dir.as_ref().map(|d| d.join(m.file_name())))
            .with_context(|| format!("no input for {m}: set data_dir or --{}", m.as_str().to_ascii_lowercase()))?;
        inputs.insert(m.to_string(), path);
    }

    let models: Vec<String> = parse_models(&flags.models.or(file.models).unwrap_or_else(|| vec!["all".into()]))?
        .iter()
        .map(|t| t.name())
        .collect();

    let seeds = match (flags.seeds, flags.repetitions) {
        (Some(s), _) => s,
        (None, Some(n)) => (1..=n).collect(),
        (None, None) => match (file.seeds, file.repetitions) {
            (Some(s), _) => s,
            (None, Some(n)) => (1..=n).collect(),
            (None, None) => defaults.seeds.clone(),
        },
    };
    if seeds.is_empty() {
        bail!("at least one seed is required");
    }

    let mut overrides: BTreeMap<String, BTreeMap<String, Vec<f64>>> = BTreeMap::new();
    let from_flags = flags.grid.iter().map(|s| parse_grid_override(s)).collect::<Result<Vec<_>>>()?;
    let from_file = file
        .grid
        .into_iter()
        .flat_map(|(tag, axes)| axes.into_iter().map(move |(a, v)| (tag.clone(), a, v)));
    // file entries first so flags overwrite them
    for (tag, axis, values) in from_file.chain(from_flags) {
        let tag: ModelTag = tag.parse()?;
        overrides.entry(tag.name()).or_default().insert(axis, values);
    }

    let protocol = Protocol {
        train_fraction: flags.train_fraction.or(file.train_fraction).unwrap_or(defaults.train_fraction),
        stratified: !flags.no_stratify && file.stratified.unwrap_or(defaults.stratified),
        k: flags.folds.or(file.folds).unwrap_or(defaults.k),
        seeds,
        standardize: !flags.no_standardize && file.standardize.unwrap_or(defaults.standardize),
        preset: if flags.full_grid || file.full_grid.unwrap_or(false) {
            GridPreset::Full
        } else {
            GridPreset::Smoke
        },
        overrides,
    };
    if !(protocol.train_fraction > 0.0 && protocol.train_fraction < 1.0) {
        bail!("train_fraction must lie in (0, 1), got {}", protocol.train_fraction);
    }
    if protocol.k < 2 {
        bail!("folds must be at least 2, got {}", protocol.k);
    }
    // surface bad axis names before any work starts
    for name in &models {
        let tag: ModelTag = name.parse()?;
        protocol.grid(tag)?.validate()?;
    }

    Ok(RunConfig {
        inputs,
        modalities,
        models,
        protocol,
        out: flags.out.or(file.out).unwrap_or_else(|| PathBuf::from("out")),
        jobs: flags.jobs.or(file.jobs),
    })
}
