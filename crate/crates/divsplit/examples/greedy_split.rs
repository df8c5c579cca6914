//! Greedily split a corpus at maximum and at minimum compound divergence
//! while keeping atom divergence low, and print the resulting partitions
//! with their convergence traces.
//!
//! Each iteration scores candidate sentences on both sides with
//! Score = -|target - D_C| - D_A and commits the best placement. The
//! corpus here is generated: four "topics" that combine the same small
//! vocabulary into different (head, relation, dependant) triples, so the
//! splitter can separate compounds without skewing the atoms.
//!
//! Run with: cargo run --example greedy_split

use std::collections::BTreeMap;

use divsplit::atoms::{FilterPolicy, VectorizedCorpus};
use divsplit::corpus::{preprocess, SentenceRecord, Token};
use divsplit::divergence::DivergenceConfig;
use divsplit::splitter::{greedy_split, SplitConfig};

/// 64 sentences cycling through four compound topics over one vocabulary.
fn topic_corpus() -> VectorizedCorpus {
    let topics: [&[(&str, &str, &str)]; 4] = [
        &[("eat", "obj", "bread"), ("eat", "nsubj", "cat")],
        &[("eat", "obj", "fish"), ("eat", "nsubj", "dog")],
        &[("see", "obj", "bread"), ("see", "nsubj", "dog")],
        &[("see", "obj", "fish"), ("see", "nsubj", "cat")],
    ];
    let sentences = (0..64)
        .map(|i| {
            let mut tokens = Vec::new();
            for (head, rel, dep) in topics[i % topics.len()] {
                tokens.push(Token {
                    form: (*head).into(),
                    lemma: (*head).into(),
                    head: None,
                    relation: "root".into(),
                });
                let hp = tokens.len() - 1;
                tokens.push(Token {
                    form: (*dep).into(),
                    lemma: (*dep).into(),
                    head: Some(hp),
                    relation: (*rel).into(),
                });
            }
            SentenceRecord {
                id: format!("gen-{i:03}"),
                tokens,
                target_texts: BTreeMap::new(),
            }
        })
        .collect();
    let corpus = preprocess(sentences, 30, false);
    let policy = FilterPolicy {
        top_k_excluded: 0,
        min_count: 0,
        ..Default::default()
    };
    VectorizedCorpus::build(&corpus, &policy)
}

fn main() -> divsplit::Result<()> {
    let vectorized = topic_corpus();
    for target in [1.0, 0.0] {
        let config = SplitConfig {
            divergence: DivergenceConfig {
                target_compound_divergence: target,
                ..Default::default()
            },
            train_fraction: 0.75,
            seed: 1,
            allow_discard: false,
            ..Default::default()
        };
        let result = greedy_split(&vectorized, &config)?;
        println!("target compound divergence {target}:");
        println!(
            "  D_A {:.4}  D_C {:.4}  ({} train / {} test)",
            result.d_atom,
            result.d_compound,
            result.train_ids.len(),
            result.test_ids.len()
        );
        println!("  test set: {}", result.test_ids.join(" "));
        println!("  trace (every 8th iteration):");
        for t in result.trace.iter().step_by(8) {
            println!(
                "    iter {:>2}: D_A {:.4} D_C {:.4} score {:+.4} ({} train / {} test)",
                t.iteration, t.d_atom, t.d_compound, t.score, t.train_size, t.test_size
            );
        }
        println!();
    }
    Ok(())
}
