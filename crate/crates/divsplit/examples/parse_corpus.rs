//! Parse the bundled CoNLL-U sample, attach its German translations, and
//! show what preprocessing keeps.
//!
//! Run with: cargo run --example parse_corpus

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use divsplit::corpus::{align_targets, parse_conllu, preprocess, Corpus};

fn main() -> divsplit::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let sentences = parse_conllu(BufReader::new(File::open(data.join("sample.conllu"))?))?;
    println!("parsed {} sentences", sentences.len());

    let mut corpus = Corpus {
        sentences,
        languages: Default::default(),
    };
    align_targets(
        &mut corpus,
        "de",
        BufReader::new(File::open(data.join("sample.de.txt"))?),
    )?;

    let corpus = preprocess(corpus.sentences, 30, true);
    println!("kept {} sentences after length filtering and deduplication", corpus.len());

    let sent = &corpus.sentences[0];
    println!("\nfirst sentence ({}):", sent.id);
    println!("  source: {}", sent.source_text());
    println!("  de:     {}", sent.target_texts["de"]);
    println!("  edges:");
    for token in &sent.tokens {
        if let Some(h) = token.head {
            println!(
                "    {:<10} --{}--> {}",
                sent.tokens[h].lemma, token.relation, token.lemma
            );
        }
    }
    Ok(())
}
