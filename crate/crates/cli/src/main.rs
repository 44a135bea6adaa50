mod config;
mod explain;
mod run;
mod stats;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use smcbench_core::eval::{self, CellOutcome};
use smcbench_core::stats::TieMode;

use config::{ConfigFile, FlagValues};
use explain::{ExplainArgs, ExplainSet};
use stats::StatsArgs;

#[derive(Parser)]
#[command(name = "smcbench", version, about = "Benchmark randomized-network and hyperplane classifiers on MRI feature tables")]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, env = "SMCBENCH_OUT")]
    out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "SMCBENCH_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tune, train and evaluate every (model, modality) cell.
    Run(RunArgs),
    /// Ranks, Friedman test and win-tie-loss on an accuracy matrix.
    Stats(StatsCli),
    /// Shapley feature importance for a saved model.
    Explain(ExplainCli),
    /// Rewrite the result tables and summary.md from saved outcomes.
    Report,
}

#[derive(Args)]
struct RunArgs {
    /// TOML config file; flags override its keys.
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Directory holding ct.csv, gm.csv, jd.csv and wm.csv.
    #[arg(long)]
    data_dir: Option<PathBuf>,
    #[arg(long)]
    ct: Option<PathBuf>,
    #[arg(long)]
    gm: Option<PathBuf>,
    #[arg(long)]
    jd: Option<PathBuf>,
    #[arg(long)]
    wm: Option<PathBuf>,
    /// Comma-separated modalities (CT, GM, JD, WM, ALL).
    #[arg(long, value_delimiter = ',')]
    modalities: Option<Vec<String>>,
    /// Comma-separated model tags, or all / rnn / hbc.
    #[arg(long, value_delimiter = ',')]
    models: Option<Vec<String>>,
    /// Comma-separated repetition seeds.
    #[arg(long, value_delimiter = ',', conflicts_with = "repetitions")]
    seeds: Option<Vec<u64>>,
    /// Use seeds 1..=N.
    #[arg(long)]
    repetitions: Option<u64>,
    #[arg(long)]
    folds: Option<usize>,
    #[arg(long)]
    train_fraction: Option<f64>,
    #[arg(long)]
    no_stratify: bool,
    #[arg(long)]
    no_standardize: bool,
    /// Use the complete published grids instead of the smoke preset.
    #[arg(long)]
    full_grid: bool,
    /// Grid override `TAG:AXIS=v1,v2`; repeatable.
    #[arg(long = "grid")]
    grid: Vec<String>,
}

#[derive(Args)]
struct StatsCli {
    /// Accuracy matrix CSV (default: <out>/results/accuracy_matrix.csv).
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Treat accuracies as counts out of N test subjects when breaking ties.
    #[arg(long, conflicts_with = "full_precision")]
    n_test: Option<usize>,
    /// Compare accuracies at full precision instead of two decimals.
    #[arg(long)]
    full_precision: bool,
    /// F critical value; computed at the 5% level when omitted.
    #[arg(long)]
    critical: Option<f64>,
}

#[derive(Args)]
struct ExplainCli {
    /// Model tag, e.g. dRVFL or SVM-K.
    #[arg(long)]
    model: String,
    #[arg(long)]
    modality: String,
    #[arg(long, short, default_value_t = 5)]
    k: usize,
    #[arg(long, default_value_t = 200)]
    n_perms: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ExplainSet::CorrectSmc)]
    set: ExplainSet,
}

fn init_pool(jobs: Option<usize>) -> Result<()> {
    if let Some(n) = jobs {
        anyhow::ensure!(n >= 1, "jobs must be at least 1");
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("starting worker pool")?;
    }
    Ok(())
}

fn out_dir(cli_out: &Option<PathBuf>) -> PathBuf {
    cli_out.clone().unwrap_or_else(|| PathBuf::from("out"))
}

/// 0 = success, 2 = some cells failed.
fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Run(a) => {
            let file = match &a.config {
                Some(p) => ConfigFile::load(p)?,
                None => ConfigFile::default(),
            };
            let flags = FlagValues {
                data_dir: a.data_dir,
                paths: [a.ct, a.gm, a.jd, a.wm],
                modalities: a.modalities,
                models: a.models,
                seeds: a.seeds,
                repetitions: a.repetitions,
                folds: a.folds,
                train_fraction: a.train_fraction,
                no_stratify: a.no_stratify,
                no_standardize: a.no_standardize,
                full_grid: a.full_grid,
                out: cli.out,
                jobs: cli.jobs,
                grid: a.grid,
            };
            let cfg = config::resolve(file, flags)?;
            init_pool(cfg.jobs)?;
            let failed = run::cmd_run(&cfg)?;
            Ok(if failed > 0 { 2 } else { 0 })
        }
        Command::Stats(a) => {
            let out = out_dir(&cli.out);
            let ties = match (a.n_test, a.full_precision) {
                (Some(n), _) => TieMode::CountGrid(n),
                (None, true) => TieMode::Exact,
                (None, false) => TieMode::Decimals(2),
            };
            stats::cmd_stats(&StatsArgs {
                matrix: a.matrix.unwrap_or_else(|| out.join("results").join("accuracy_matrix.csv")),
                out_dir: out.join("stats"),
                ties,
                critical: a.critical,
            })?;
            Ok(0)
        }
        Command::Explain(a) => {
            init_pool(cli.jobs)?;
            explain::cmd_explain(&ExplainArgs {
                out: out_dir(&cli.out),
                tag: a.model,
                modality: a.modality,
                k: a.k,
                n_perms: a.n_perms,
                seed: a.seed,
                set: a.set,
            })?;
            Ok(0)
        }
        Command::Report => {
            let out = out_dir(&cli.out);
            let path = out.join("results").join("outcomes.json");
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let outcomes: Vec<CellOutcome> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            eval::write_results(&out, &outcomes)?;
            println!("wrote {}", out.join("results").join("summary.md").display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            // keep 2 for partial runs; usage errors are plain errors
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
