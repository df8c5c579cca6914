//! Build the atom and compound inventories for the bundled sample corpus
//! and print every compound with its weight.
//!
//! Atoms are lemmas (frequency-filtered) and dependency-relation tags;
//! compounds are (head lemma, relation, dependant lemma) triples. A
//! compound's weight is 1 minus the share of its (relation, dependant)
//! pair's occurrences taken by the most frequent head: triples whose
//! dependant almost always has the same head carry no compositional signal
//! and are dropped.
//!
//! Run with: cargo run --example extract_inventories

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use divsplit::atoms::{AtomKind, FilterPolicy, VectorizedCorpus};
use divsplit::corpus::{parse_conllu, preprocess};

fn main() -> divsplit::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let sentences = parse_conllu(BufReader::new(File::open(data.join("sample.conllu"))?))?;
    let corpus = preprocess(sentences, 30, true);

    // the sample is tiny, so keep every lemma; on a real corpus the default
    // policy drops the 200 most frequent lemmas and everything seen < 10 times
    let policy = FilterPolicy {
        top_k_excluded: 0,
        min_count: 0,
        ..Default::default()
    };
    let vectorized = VectorizedCorpus::build(&corpus, &policy);

    println!("atoms ({} total):", vectorized.atoms.len());
    for (_, kind, text, count) in vectorized.atoms.iter() {
        let tag = match kind {
            AtomKind::Lemma => "lemma",
            AtomKind::Relation => "rel  ",
        };
        println!("  {tag} {text:<12} x{count}");
    }

    println!(
        "\ncompounds ({} total, {} retained at weight >= {}):",
        vectorized.compounds.len(),
        vectorized.compounds.retained_count(),
        policy.weight_threshold
    );
    for (_, entry) in vectorized.compounds.iter() {
        println!(
            "  {} ({:<12} --{}--> {:<10}) x{} weight {:.2}",
            if entry.retained { "keep" } else { "drop" },
            entry.head,
            entry.relation,
            entry.dependant,
            entry.count,
            entry.weight
        );
    }

    let sent = &vectorized.sentences[0];
    println!(
        "\nsentence {} vectorizes to {} atom keys and {} compound keys",
        sent.id,
        sent.bags.atoms.len(),
        sent.bags.compounds.len()
    );
    Ok(())
}
