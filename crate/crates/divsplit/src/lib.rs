//! Divergence-controlled train/test splitting for dependency-parsed
//! parallel corpora.
//!
//! The library ingests CoNLL-U parses with line-aligned translations,
//! extracts atoms (lemmas and dependency-relation tags) and compounds
//! (head-lemma, relation, dependant-lemma triples), and greedily partitions
//! the corpus so that the train/test compound distributions diverge by a
//! chosen amount while the atom distributions stay as close as possible.
//! Divergence is one minus the Chernoff coefficient between the two sides'
//! distributions. Translation quality on the resulting splits is scored
//! with chrF2++, and the ratio between the max- and min-divergence split
//! scores gives a generalisation score.
//!
//! See the crate's `examples/` directory for one runnable example per major
//! capability; the `divsplit` binary wires the same functions into an
//! `extract` / `split` / `random-split` / `report` / `score` pipeline.

pub mod atoms;
pub mod corpus;
pub mod divergence;
pub mod error;
pub mod metrics;
pub mod pipeline;
pub mod splitter;

pub use atoms::{
    build_lemma_filter, compute_compound_weights, extract_edges, vectorize, AtomInventory,
    AtomKind, CompoundInventory, FilterPolicy, SentenceBags, VectorizedCorpus,
};
pub use corpus::{align_targets, parse_conllu, preprocess, subsample, Corpus, SentenceRecord, Token};
pub use divergence::{
    chernoff, Direction, DivergenceConfig, Label, Side, SparseDistribution, SplitState,
};
pub use error::{Error, Result};
pub use metrics::{chrf, generalisation_score, ChrfConfig, GeneralisationReport};
pub use splitter::{
    evaluate_external_split, greedy_split, random_split, seed_split, SplitConfig, SplitEvaluation,
    SplitResult,
};
