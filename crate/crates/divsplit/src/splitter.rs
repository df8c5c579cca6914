//! Greedy divergence-targeted partitioning, random baselines, and
//! evaluation of externally supplied splits.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::atoms::VectorizedCorpus;
use crate::divergence::{
    chernoff, Direction, DivergenceConfig, Label, Side, SparseDistribution, SplitState,
};
use crate::error::{Error, Result};

/// Tolerance band around `train_fraction`, enforced once enough sentences
/// are assigned.
const RATIO_BAND: f64 = 0.02;
const RATIO_ENFORCE_AFTER: usize = 1000;
/// A candidate batch may be discarded only while the compound divergence is
/// already this close to its target.
const DISCARD_SLACK: f64 = 0.01;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SplitConfig {
    pub divergence: DivergenceConfig,
    /// Target fraction of assigned sentences placed in train.
    pub train_fraction: f64,
    /// Unassigned sentences scored per iteration; 0 means all of them.
    pub candidate_pool: usize,
    pub max_assigned: Option<usize>,
    pub seed: u64,
    /// Allow leaving sentences out of both sides entirely.
    pub allow_discard: bool,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            divergence: DivergenceConfig::default(),
            train_fraction: 0.85,
            candidate_pool: 100,
            max_assigned: None,
            seed: 0,
            allow_discard: true,
        }
    }
}

impl SplitConfig {
    pub fn validate(&self) -> Result<()> {
        self.divergence.validate()?;
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::Validation(format!(
                "train_fraction must be in (0,1), got {}",
                self.train_fraction
            )));
        }
        Ok(())
    }
}

/// One line of the divergence trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub d_atom: f64,
    pub d_compound: f64,
    pub score: f64,
    pub train_size: usize,
    pub test_size: usize,
}

/// Final partition plus the divergence trace and the config that made it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitResult {
    pub train_ids: Vec<String>,
    pub test_ids: Vec<String>,
    pub discarded_ids: Vec<String>,
    pub d_atom: f64,
    pub d_compound: f64,
    pub trace: Vec<TraceEntry>,
    pub config: SplitConfig,
}

/// Write the trace as the tab-separated convergence log.
pub fn write_trace(trace: &[TraceEntry], out: &mut impl std::io::Write) -> Result<()> {
    for t in trace {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            t.iteration, t.d_atom, t.d_compound, t.score, t.train_size, t.test_size
        )?;
    }
    Ok(())
}

/// Seed both sides with one sentence each, drawn by the seeded RNG from
/// sentences with non-empty compound bags. Returns the state and the
/// remaining unassigned sentence indices.
pub fn seed_split(
    corpus: &VectorizedCorpus,
    config: &SplitConfig,
) -> Result<(SplitState, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    seed_split_with_rng(corpus, config, &mut rng)
}

fn seed_split_with_rng(
    corpus: &VectorizedCorpus,
    config: &SplitConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(SplitState, Vec<usize>)> {
    config.validate()?;
    let eligible: Vec<usize> = (0..corpus.len())
        .filter(|&i| !corpus.sentences[i].bags.compounds.is_empty())
        .collect();
    if eligible.len() < 2 {
        return Err(Error::CannotSplit(format!(
            "need at least 2 sentences with non-empty compound bags, found {}",
            eligible.len()
        )));
    }
    let picked = rand::seq::index::sample(rng, eligible.len(), 2);
    let train_seed = eligible[picked.index(0)];
    let test_seed = eligible[picked.index(1)];

    let mut state = SplitState::new(corpus.len(), config.divergence.clone())?;
    state.apply(
        train_seed,
        &corpus.sentences[train_seed].bags,
        Side::Train,
        Direction::Add,
    )?;
    state.apply(
        test_seed,
        &corpus.sentences[test_seed].bags,
        Side::Test,
        Direction::Add,
    )?;
    let unassigned = (0..corpus.len())
        .filter(|&i| i != train_seed && i != test_seed)
        .collect();
    Ok((state, unassigned))
}

fn permissible(side: Side, train: usize, test: usize, fraction: f64) -> bool {
    let assigned = train + test;
    if assigned < RATIO_ENFORCE_AFTER {
        return true;
    }
    let next = (assigned + 1) as f64;
    match side {
        Side::Train => (train + 1) as f64 / next <= fraction + RATIO_BAND,
        Side::Test => train as f64 / next >= fraction - RATIO_BAND,
    }
}

/// Place one sentence per iteration into train or test, maximizing
/// Score(V, W) over a seeded candidate pool. Ties break on lower sentence
/// index, then Train over Test. With `allow_discard`, a candidate batch
/// whose best placement would strictly worsen the score is dropped once the
/// compound divergence is already on target.
pub fn greedy_split(corpus: &VectorizedCorpus, config: &SplitConfig) -> Result<SplitResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (mut state, mut unassigned) = seed_split_with_rng(corpus, config, &mut rng)?;

    let mut discarded: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut iteration = 0usize;
    let (mut n_train, mut n_test) = state.assigned_counts();

    while !unassigned.is_empty() {
        if let Some(cap) = config.max_assigned {
            if n_train + n_test >= cap {
                break;
            }
        }
        let pool = if config.candidate_pool == 0 {
            unassigned.len()
        } else {
            config.candidate_pool.min(unassigned.len())
        };
        let mut positions: Vec<usize> =
            rand::seq::index::sample(&mut rng, unassigned.len(), pool).into_vec();
        // candidate order = ascending sentence index, so the tie-break rule
        // is independent of sampling order
        positions.sort_unstable_by_key(|&p| unassigned[p]);

        let current_score = state.score()?;
        let mut best: Option<(f64, usize, Side)> = None; // (score, position, side)
        for &pos in &positions {
            let idx = unassigned[pos];
            let bags = &corpus.sentences[idx].bags;
            for side in [Side::Train, Side::Test] {
                if !permissible(side, n_train, n_test, config.train_fraction) {
                    continue;
                }
                let (_, _, score) = state.peek_add(bags, side)?;
                let better = match &best {
                    None => true,
                    Some((s, _, _)) => score > *s,
                };
                if better {
                    best = Some((score, pos, side));
                }
            }
        }
        let Some((best_score, pos, side)) = best else {
            break; // no permissible placement
        };

        if config.allow_discard
            && best_score < current_score
            && (config.divergence.target_compound_divergence - state.divergences()?.1).abs()
                <= DISCARD_SLACK
        {
            // Drop the whole batch: none of these candidates can improve on
            // an already-on-target state.
            let mut batch = positions;
            batch.sort_unstable_by(|a, b| b.cmp(a));
            for p in batch {
                discarded.push(unassigned.swap_remove(p));
            }
            continue;
        }

        let idx = unassigned.swap_remove(pos);
        state.apply(idx, &corpus.sentences[idx].bags, side, Direction::Add)?;
        match side {
            Side::Train => n_train += 1,
            Side::Test => n_test += 1,
        }
        iteration += 1;
        let (d_atom, d_compound) = state.divergences()?;
        trace.push(TraceEntry {
            iteration,
            d_atom,
            d_compound,
            score: state.score()?,
            train_size: n_train,
            test_size: n_test,
        });
    }
    discarded.extend(unassigned);

    finalize(corpus, &state, discarded, trace, config.clone())
}

fn finalize(
    corpus: &VectorizedCorpus,
    state: &SplitState,
    mut discarded: Vec<usize>,
    trace: Vec<TraceEntry>,
    config: SplitConfig,
) -> Result<SplitResult> {
    // report divergences from a full recomputation, not the running sums
    let mut synced = state.clone();
    synced.resync();
    let (d_atom, d_compound) = synced.divergences()?;

    let mut train_ids = Vec::new();
    let mut test_ids = Vec::new();
    for i in 0..corpus.len() {
        match state.label(i) {
            Label::Train => train_ids.push(corpus.sentences[i].id.clone()),
            Label::Test => test_ids.push(corpus.sentences[i].id.clone()),
            Label::Unassigned => {}
        }
    }
    discarded.sort_unstable();
    let discarded_ids = discarded
        .into_iter()
        .map(|i| corpus.sentences[i].id.clone())
        .collect();
    Ok(SplitResult {
        train_ids,
        test_ids,
        discarded_ids,
        d_atom,
        d_compound,
        trace,
        config,
    })
}

/// Uniform random disjoint draw of `train_count` + `test_count` sentences.
pub fn random_split(
    corpus: &VectorizedCorpus,
    train_count: usize,
    test_count: usize,
    seed: u64,
) -> Result<SplitResult> {
    if train_count == 0 || test_count == 0 {
        return Err(Error::Size(
            "train and test counts must both be positive (divergence is undefined for an empty side)"
                .into(),
        ));
    }
    if train_count + test_count > corpus.len() {
        return Err(Error::Size(format!(
            "{train_count} train + {test_count} test sentences requested from a corpus of {}",
            corpus.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked =
        rand::seq::index::sample(&mut rng, corpus.len(), train_count + test_count).into_vec();
    let config = SplitConfig {
        seed,
        ..Default::default()
    };
    let mut state = SplitState::new(corpus.len(), config.divergence.clone())?;
    let mut discarded: Vec<usize> = Vec::new();
    for (i, &idx) in picked.iter().enumerate() {
        let side = if i < train_count { Side::Train } else { Side::Test };
        state.apply(idx, &corpus.sentences[idx].bags, side, Direction::Add)?;
    }
    for i in 0..corpus.len() {
        if state.label(i) == Label::Unassigned {
            discarded.push(i);
        }
    }
    finalize(corpus, &state, discarded, Vec::new(), config)
}

/// Table-style statistics for a split, alongside its divergences.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitEvaluation {
    pub train_sentences: usize,
    pub test_sentences: usize,
    pub train_words: u64,
    pub test_words: u64,
    /// Unique lemmas over both sides together.
    pub unique_lemmas: usize,
    pub d_atom: f64,
    pub d_compound: f64,
    pub mean_train_len: f64,
    pub mean_test_len: f64,
}

/// Compute divergences and size/lemma statistics for any externally
/// supplied pair of id sets.
pub fn evaluate_external_split(
    corpus: &VectorizedCorpus,
    train_ids: &[String],
    test_ids: &[String],
) -> Result<SplitEvaluation> {
    let index: std::collections::HashMap<&str, usize> = corpus
        .sentences
        .iter()
        .enumerate()
        .map(|(i, s)| (s.id.as_str(), i))
        .collect();
    let resolve = |ids: &[String], side: &str| -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(ids.len());
        let mut seen = std::collections::HashSet::new();
        for id in ids {
            let &i = index
                .get(id.as_str())
                .ok_or_else(|| Error::Validation(format!("unknown sentence id '{id}' in {side} set")))?;
            if !seen.insert(i) {
                return Err(Error::Validation(format!("duplicate id '{id}' in {side} set")));
            }
            out.push(i);
        }
        Ok(out)
    };
    let train = resolve(train_ids, "train")?;
    let test = resolve(test_ids, "test")?;
    let train_set: std::collections::HashSet<usize> = train.iter().copied().collect();
    if let Some(overlap) = test.iter().find(|i| train_set.contains(i)) {
        return Err(Error::Validation(format!(
            "id '{}' appears in both train and test sets",
            corpus.sentences[*overlap].id
        )));
    }

    let mut train_atoms = SparseDistribution::new();
    let mut train_compounds = SparseDistribution::new();
    let mut test_atoms = SparseDistribution::new();
    let mut test_compounds = SparseDistribution::new();
    let mut unique = std::collections::HashSet::new();
    let mut words = [0u64, 0];
    for (which, indices) in [(0usize, &train), (1, &test)] {
        for &i in indices {
            let sent = &corpus.sentences[i];
            words[which] += sent.word_count as u64;
            unique.extend(sent.lemma_ids.iter().copied());
            let (atoms, compounds) = if which == 0 {
                (&mut train_atoms, &mut train_compounds)
            } else {
                (&mut test_atoms, &mut test_compounds)
            };
            for &(k, c) in &sent.bags.atoms {
                atoms.add(k, c);
            }
            for &(k, c) in &sent.bags.compounds {
                compounds.add(k, c);
            }
        }
    }
    let d_atom = 1.0 - chernoff(&train_atoms, &test_atoms, 0.5)?;
    let d_compound = 1.0 - chernoff(&train_compounds, &test_compounds, 0.1)?;
    Ok(SplitEvaluation {
        train_sentences: train.len(),
        test_sentences: test.len(),
        train_words: words[0],
        test_words: words[1],
        unique_lemmas: unique.len(),
        d_atom,
        d_compound,
        mean_train_len: words[0] as f64 / train.len().max(1) as f64,
        mean_test_len: words[1] as f64 / test.len().max(1) as f64,
    })
}
