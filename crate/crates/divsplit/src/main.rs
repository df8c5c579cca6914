use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use divsplit::pipeline::{
    cmd_extract, cmd_random_split, cmd_report, cmd_score, cmd_split, write_report_tsv,
    PipelineConfig, ReportInput, ScoreConfig,
};

#[derive(Parser)]
#[command(name = "divsplit", version, about = "Divergence-controlled corpus splitting")]
struct Cli {
    /// Pipeline configuration file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the configured random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the configured output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the manifest's corpus and write the vectorized cache.
    Extract,
    /// Greedy divergence-targeted split against an extracted cache.
    Split {
        /// Desired compound divergence in [0,1].
        #[arg(long, value_name = "C")]
        target_cd: Option<f64>,
        /// Cache directory (defaults to <out>/cache).
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Name of the output subdirectory (defaults to split-c<C>-s<seed>).
        #[arg(long)]
        name: Option<String>,
    },
    /// Uniform random baseline split.
    RandomSplit {
        #[arg(long)]
        train: usize,
        #[arg(long)]
        test: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Comparison table over one or more splits of the same cache.
    Report {
        /// Split output directories written by `split` / `random-split`.
        #[arg(long = "split", value_name = "DIR")]
        splits: Vec<PathBuf>,
        /// External id files as NAME=TRAIN_FILE,TEST_FILE.
        #[arg(long = "ids", value_name = "NAME=TRAIN,TEST")]
        ids: Vec<String>,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Also write the table to this TSV file.
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
    /// chrF2++ and generalisation scores from a scoring config file.
    Score {
        /// Scoring configuration (TOML) naming hyp/ref files per language.
        score_config: PathBuf,
    },
}

fn load_config(cli: &Cli) -> divsplit::Result<PipelineConfig> {
    let path = cli.config.as_deref().ok_or_else(|| {
        divsplit::Error::Validation("--config <file> is required for this command".into())
    })?;
    let mut config = PipelineConfig::load(path)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
        config.split.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.out_dir = out.clone();
    }
    Ok(config)
}

fn run(cli: &Cli) -> divsplit::Result<()> {
    match &cli.command {
        Command::Extract => {
            let config = load_config(cli)?;
            let summary = cmd_extract(&config)?;
            println!(
                "extracted {} sentences: {} retained lemmas, {} retained compound types -> {}",
                summary.sentences,
                summary.retained_lemmas,
                summary.retained_compounds,
                summary.cache_dir.display()
            );
        }
        Command::Split { target_cd, cache, name } => {
            let config = load_config(cli)?;
            let mut split_config = config.split.clone();
            if let Some(c) = target_cd {
                split_config.divergence.target_compound_divergence = *c;
            }
            split_config.divergence.validate()?;
            let cache_dir = cache
                .clone()
                .unwrap_or_else(|| config.out_dir.join("cache"));
            let name = name.clone().unwrap_or_else(|| {
                format!(
                    "split-c{}-s{}",
                    split_config.divergence.target_compound_divergence, split_config.seed
                )
            });
            let out_dir = config.out_dir.join(name);
            let summary = cmd_split(&cache_dir, &split_config, &out_dir)?;
            println!(
                "split written to {}: train {} / test {} / discarded {}, D_A {:.4}, D_C {:.4}",
                out_dir.display(),
                summary.train_size,
                summary.test_size,
                summary.discarded,
                summary.d_atom,
                summary.d_compound
            );
        }
        Command::RandomSplit { train, test, cache, name } => {
            let config = load_config(cli)?;
            let cache_dir = cache
                .clone()
                .unwrap_or_else(|| config.out_dir.join("cache"));
            let name = name
                .clone()
                .unwrap_or_else(|| format!("random-{train}-{test}-s{}", config.seed));
            let out_dir = config.out_dir.join(name);
            let summary = cmd_random_split(&cache_dir, *train, *test, config.seed, &out_dir)?;
            println!(
                "random split written to {}: train {} / test {}, D_A {:.4}, D_C {:.4}",
                out_dir.display(),
                summary.train_size,
                summary.test_size,
                summary.d_atom,
                summary.d_compound
            );
        }
        Command::Report { splits, ids, cache, tsv } => {
            let config = load_config(cli)?;
            let cache_dir = cache
                .clone()
                .unwrap_or_else(|| config.out_dir.join("cache"));
            let mut inputs: Vec<ReportInput> =
                splits.iter().cloned().map(ReportInput::SplitDir).collect();
            for spec in ids {
                let (name, files) = spec.split_once('=').ok_or_else(|| {
                    divsplit::Error::Validation(format!(
                        "--ids expects NAME=TRAIN,TEST, got '{spec}'"
                    ))
                })?;
                let (train, test) = files.split_once(',').ok_or_else(|| {
                    divsplit::Error::Validation(format!(
                        "--ids expects NAME=TRAIN,TEST, got '{spec}'"
                    ))
                })?;
                inputs.push(ReportInput::IdFiles {
                    name: name.to_string(),
                    train: train.into(),
                    test: test.into(),
                });
            }
            if inputs.is_empty() {
                return Err(divsplit::Error::Validation(
                    "report needs at least one --split or --ids input".into(),
                ));
            }
            let rows = cmd_report(&cache_dir, &inputs)?;
            let mut stdout = std::io::stdout();
            write_report_tsv(&rows, &mut stdout)?;
            if let Some(path) = tsv {
                let mut file = std::fs::File::create(path)?;
                write_report_tsv(&rows, &mut file)?;
            }
        }
        Command::Score { score_config } => {
            let config = ScoreConfig::load(score_config)?;
            let report = cmd_score(&config)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": err.to_string() })
            );
            ExitCode::FAILURE
        }
    }
}
