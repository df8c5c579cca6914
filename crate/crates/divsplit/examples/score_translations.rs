//! Score translation hypotheses with chrF2++ and turn per-split scores
//! into generalisation ratios.
//!
//! chrF2++ mixes character n-grams (orders 1-6) with word n-grams (orders
//! 1-2) under a recall-weighted F-score (beta = 2). The generalisation
//! score of a language is its translation quality on the
//! maximum-compound-divergence split divided by the quality on the
//! minimum-divergence split: the closer to 1, the more robustly a system
//! generalises to unseen compositions.
//!
//! Run with: cargo run --example score_translations

use std::collections::BTreeMap;

use divsplit::metrics::{chrf, generalisation_score, ChrfConfig};

fn main() -> divsplit::Result<()> {
    let config = ChrfConfig::default();
    let references = [
        "Der Ausschuss billigte den Vorschlag .",
        "Das Parlament debattierte gestern den Bericht .",
        "Der Minister lehnte den Antrag ab .",
    ];
    // a system translating the familiar (minimum-divergence) test set...
    let min_hyps = [
        "Der Ausschuss billigte den Vorschlag .",
        "Das Parlament debattierte den Bericht gestern .",
        "Der Minister lehnte den Antrag ab .",
    ];
    // ...and the same system on unseen compositions (maximum divergence)
    let max_hyps = [
        "Der Ausschuss hat den Vorschlag gebilligt .",
        "Das Parlament diskutierte gestern einen Bericht .",
        "Der Minister wies den Antrag zurück .",
    ];

    let min_score = chrf(&min_hyps, &references, &config)?;
    let max_score = chrf(&max_hyps, &references, &config)?;
    println!("chrF2++ on the minimum-divergence split: {min_score:.2}");
    println!("chrF2++ on the maximum-divergence split: {max_score:.2}");

    let min: BTreeMap<String, f64> = [("de".to_string(), min_score)].into();
    let max: BTreeMap<String, f64> = [("de".to_string(), max_score)].into();
    let report = generalisation_score(&min, &max)?;
    let de = &report.per_language["de"];
    println!(
        "generalisation score: {:.2} / {:.2} = {:.2}",
        de.max_split, de.min_split, de.generalisation_score
    );
    Ok(())
}
