use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use smcbench_core::dataio::Modality;
use smcbench_core::eval::ModelArtifact;
use smcbench_core::explain::{
    attribution_long_csv, correct_positive_rows, shapley_sample, top_features_csv, top_k_features,
};
use smcbench_core::model::ModelTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExplainSet {
    /// Test subjects that are SMC and classified as such.
    CorrectSmc,
    /// Every test subject.
    Test,
}

pub struct ExplainArgs {
    pub out: PathBuf,
    pub tag: String,
    pub modality: String,
    pub k: usize,
    pub n_perms: usize,
    pub seed: u64,
    pub set: ExplainSet,
}

pub fn cmd_explain(args: &ExplainArgs) -> Result<()> {
    if args.k == 0 {
        bail!("k must be at least 1");
    }
    let tag: ModelTag = args.tag.parse()?;
    let modality: Modality = args.modality.parse()?;
    let dump = args
        .out
        .join("models")
        .join(modality.as_str())
        .join(format!("{}.json", tag.name()));
    if !dump.is_file() {
        bail!("no model dump for {tag} on {modality} at {} (run `smcbench run` first)", dump.display());
    }
    let text = fs::read_to_string(&dump).with_context(|| format!("reading {}", dump.display()))?;
    let artifact = ModelArtifact::from_json(&text).with_context(|| format!("loading {}", dump.display()))?;

    let rows: Vec<usize> = match args.set {
        ExplainSet::CorrectSmc => {
            let (pred, _) = artifact.model.predict(&artifact.test_features)?;
            correct_positive_rows(&artifact.test_labels, &pred)
        }
        ExplainSet::Test => (0..artifact.test_labels.len()).collect(),
    };
    if rows.is_empty() {
        bail!("explained set is empty (no correctly classified SMC test subjects); try --set test");
    }
    let explained = artifact.test_features.select_rows(rows.iter());
    let score = |x: &smcbench_core::numcore::Mat| artifact.model.scores(x);
    let report = shapley_sample(
        &score,
        &artifact.background,
        &explained,
        args.n_perms,
        args.seed,
        &artifact.feature_names,
    )?;
    let top = top_k_features(&report, args.k)?;

    let dir = args.out.join("shap");
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let top_path = dir.join(format!("{modality}_top{}.csv", args.k));
    fs::write(&top_path, top_features_csv(&top)).with_context(|| format!("writing {}", top_path.display()))?;
    let long_path = dir.join(format!("{modality}_{}_attributions.csv", tag.name()));
    fs::write(&long_path, attribution_long_csv(&report)).with_context(|| format!("writing {}", long_path.display()))?;

    println!("top {} features of {tag} on {modality} ({} subjects explained):", top.features.len(), rows.len());
    for (i, (name, v)) in top.features.iter().enumerate() {
        println!("{:>3}. {name} ({v:.4})", i + 1);
    }
    Ok(())
}
