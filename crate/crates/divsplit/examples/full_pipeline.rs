//! Run the whole file-based pipeline in a temporary directory: extract the
//! bundled sample into a cache, produce a maximum-divergence split, a
//! minimum-divergence split and a random baseline, then print the
//! comparison report.
//!
//! This is exactly what the `divsplit` binary does with
//! `extract`, `split`, `random-split` and `report`.
//!
//! Run with: cargo run --example full_pipeline

use std::path::Path;

use divsplit::atoms::FilterPolicy;
use divsplit::divergence::DivergenceConfig;
use divsplit::pipeline::{
    cmd_extract, cmd_random_split, cmd_report, cmd_split, write_report_tsv, PipelineConfig,
    PreprocessConfig, ReportInput,
};
use divsplit::splitter::SplitConfig;

fn main() -> divsplit::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let work = tempfile::tempdir()?;

    // a manifest pairing the CoNLL-U parse with its aligned translations
    std::fs::write(
        work.path().join("manifest.toml"),
        format!(
            "[[source]]\nconllu = \"{}\"\n\n[source.targets]\nde = \"{}\"\n",
            data.join("sample.conllu").display(),
            data.join("sample.de.txt").display()
        ),
    )?;

    let config = PipelineConfig {
        manifest: work.path().join("manifest.toml"),
        out_dir: work.path().join("out"),
        seed: 1,
        filter: FilterPolicy {
            top_k_excluded: 0,
            min_count: 0,
            ..Default::default()
        },
        preprocess: PreprocessConfig::default(),
        split: SplitConfig {
            train_fraction: 0.7,
            seed: 1,
            allow_discard: false,
            ..Default::default()
        },
    };

    let summary = cmd_extract(&config)?;
    println!(
        "extracted {} sentences ({} retained lemmas, {} retained compound types)",
        summary.sentences, summary.retained_lemmas, summary.retained_compounds
    );
    let cache_dir = config.out_dir.join("cache");

    let mut split_config = config.split.clone();
    split_config.divergence = DivergenceConfig {
        target_compound_divergence: 1.0,
        ..Default::default()
    };
    cmd_split(&cache_dir, &split_config, &config.out_dir.join("max"))?;
    split_config.divergence.target_compound_divergence = 0.0;
    cmd_split(&cache_dir, &split_config, &config.out_dir.join("min"))?;
    cmd_random_split(&cache_dir, 8, 4, config.seed, &config.out_dir.join("random"))?;

    let rows = cmd_report(
        &cache_dir,
        &[
            ReportInput::SplitDir(config.out_dir.join("max")),
            ReportInput::SplitDir(config.out_dir.join("min")),
            ReportInput::SplitDir(config.out_dir.join("random")),
        ],
    )?;
    println!();
    write_report_tsv(&rows, &mut std::io::stdout())?;

    println!(
        "\nsplit outputs (ids, aligned text exports, trace, summary) are under {}",
        config.out_dir.display()
    );
    Ok(())
}
