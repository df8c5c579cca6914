//! Maintain train/test atom and compound divergences incrementally while
//! sentences move between sides, and verify the running values against a
//! from-scratch computation.
//!
//! The divergence between two sides is 1 minus the Chernoff coefficient
//! C_alpha = sum_k p_k^alpha q_k^(1-alpha) of their normalized count
//! distributions (alpha = 0.5 for atoms, 0.1 for compounds). Because the
//! coefficient factorizes over raw counts, adding or removing one sentence
//! only touches the keys in that sentence's bags.
//!
//! Run with: cargo run --example incremental_divergence

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use divsplit::atoms::{FilterPolicy, VectorizedCorpus};
use divsplit::corpus::{parse_conllu, preprocess};
use divsplit::divergence::{chernoff, Direction, DivergenceConfig, Side, SplitState};

fn main() -> divsplit::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let sentences = parse_conllu(BufReader::new(File::open(data.join("sample.conllu"))?))?;
    let corpus = preprocess(sentences, 30, true);
    let policy = FilterPolicy {
        top_k_excluded: 0,
        min_count: 0,
        ..Default::default()
    };
    let vectorized = VectorizedCorpus::build(&corpus, &policy);

    let mut state = SplitState::new(vectorized.len(), DivergenceConfig::default())?;
    for (i, sent) in vectorized.sentences.iter().enumerate() {
        let side = if i % 3 == 0 { Side::Test } else { Side::Train };
        // peek first: the same numbers a placement would produce, without
        // committing to it
        let (peek_da, peek_dc, score) = state.peek_add(&sent.bags, side).unwrap_or((0.0, 0.0, 0.0));
        state.apply(i, &sent.bags, side, Direction::Add)?;
        if let Ok((d_a, d_c)) = state.divergences() {
            println!(
                "after {:<8} -> {:?}: D_A {d_a:.4} D_C {d_c:.4} (peeked {peek_da:.4}/{peek_dc:.4}, score {score:+.4})",
                sent.id, side
            );
        }
    }

    // cross-check the incremental values against direct summation
    let (d_a, d_c) = state.divergences()?;
    let (train_atoms, train_compounds) = state.distributions(Side::Train);
    let (test_atoms, test_compounds) = state.distributions(Side::Test);
    let direct_a = 1.0 - chernoff(train_atoms, test_atoms, 0.5)?;
    let direct_c = 1.0 - chernoff(train_compounds, test_compounds, 0.1)?;
    println!("\nincremental: D_A {d_a:.12} D_C {d_c:.12}");
    println!("direct:      D_A {direct_a:.12} D_C {direct_c:.12}");
    assert!((d_a - direct_a).abs() < 1e-12);
    assert!((d_c - direct_c).abs() < 1e-12);
    println!("incremental and direct values agree within 1e-12");
    Ok(())
}
