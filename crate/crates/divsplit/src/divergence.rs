//! Sparse train/test distributions, Chernoff coefficients and the greedy
//! objective, maintained incrementally.
//!
//! The Chernoff coefficient C_α(P‖Q) = Σ_k p_k^α q_k^(1−α) over normalized
//! probabilities factorizes over raw counts c, d with totals N, M:
//!
//!   C = (Σ_k c_k^α d_k^(1−α)) / (N^α M^(1−α))
//!
//! so adding or removing one sentence only touches the keys in its bags.
//! The identity is exact; only floating-point drift needs periodic
//! recomputation.

use serde::{Deserialize, Serialize};

use crate::atoms::SentenceBags;
use crate::error::{Error, Result};

/// Unnormalized sparse count vector with cached total mass. No zero-count
/// entries are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseDistribution {
    counts: std::collections::BTreeMap<u32, u64>,
    total: u64,
}

impl SparseDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut dist = Self::new();
        for (k, c) in pairs {
            dist.add(k, c);
        }
        dist
    }

    pub fn get(&self, key: u32) -> u64 {
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    /// Iterate entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add(&mut self, key: u32, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry(key).or_insert(0) += count;
        self.total += count;
    }

    pub fn remove(&mut self, key: u32, count: u64) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        let entry = self.counts.get_mut(&key).ok_or_else(|| {
            Error::State(format!("removing {count} from absent key {key}"))
        })?;
        if *entry < count {
            return Err(Error::State(format!(
                "removing {count} from key {key} with count {entry}"
            )));
        }
        *entry -= count;
        if *entry == 0 {
            self.counts.remove(&key);
        }
        self.total -= count;
        Ok(())
    }
}

/// Chernoff coefficient C_α(P‖Q) by direct summation over normalized
/// probabilities. Keys absent from either side contribute nothing.
pub fn chernoff(p: &SparseDistribution, q: &SparseDistribution, alpha: f64) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::UndefinedDivergence("left"));
    }
    if q.is_empty() {
        return Err(Error::UndefinedDivergence("right"));
    }
    let n = p.total() as f64;
    let m = q.total() as f64;
    let (small, large, a) = if p.len() <= q.len() {
        (p, q, alpha)
    } else {
        (q, p, 1.0 - alpha)
    };
    let (sn, sm) = if p.len() <= q.len() { (n, m) } else { (m, n) };
    let mut sum = 0.0;
    for (key, c) in small.iter() {
        let d = large.get(key);
        if d > 0 {
            sum += (c as f64 / sn).powf(a) * (d as f64 / sm).powf(1.0 - a);
        }
    }
    Ok(sum.clamp(0.0, 1.0))
}

/// Alphas, targets and the drift-control knob for a split.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct DivergenceConfig {
    pub alpha_atom: f64,
    pub alpha_compound: f64,
    /// Desired compound divergence c in Score = −|c − D_C| − D_A.
    pub target_compound_divergence: f64,
    pub target_atom_divergence: f64,
    /// Fully recompute accumulator sums every this many updates.
    pub recompute_interval: usize,
}

impl Default for DivergenceConfig {
    fn default() -> Self {
        DivergenceConfig {
            alpha_atom: 0.5,
            alpha_compound: 0.1,
            target_compound_divergence: 1.0,
            target_atom_divergence: 0.0,
            recompute_interval: 10_000,
        }
    }
}

impl DivergenceConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, a) in [("alpha_atom", self.alpha_atom), ("alpha_compound", self.alpha_compound)] {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::Validation(format!("{name} must be in (0,1), got {a}")));
            }
        }
        for (name, t) in [
            ("target_compound_divergence", self.target_compound_divergence),
            ("target_atom_divergence", self.target_atom_divergence),
        ] {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Validation(format!("{name} must be in [0,1], got {t}")));
            }
        }
        Ok(())
    }
}

fn term(c: u64, d: u64, alpha: f64) -> f64 {
    if c == 0 || d == 0 {
        0.0
    } else {
        (c as f64).powf(alpha) * (d as f64).powf(1.0 - alpha)
    }
}

/// Running Σ_k c_k^α d_k^(1−α) over raw counts, with drift control.
#[derive(Debug, Clone)]
struct ChernoffAccumulator {
    alpha: f64,
    sum: f64,
    peak: f64,
    ops: usize,
}

impl ChernoffAccumulator {
    fn new(alpha: f64) -> Self {
        ChernoffAccumulator {
            alpha,
            sum: 0.0,
            peak: 0.0,
            ops: 0,
        }
    }

    fn coefficient(&self, train: &SparseDistribution, test: &SparseDistribution) -> Result<f64> {
        if train.is_empty() {
            return Err(Error::UndefinedDivergence("train"));
        }
        if test.is_empty() {
            return Err(Error::UndefinedDivergence("test"));
        }
        let denom =
            (train.total() as f64).powf(self.alpha) * (test.total() as f64).powf(1.0 - self.alpha);
        Ok((self.sum / denom).clamp(0.0, 1.0))
    }

    fn recompute(&mut self, train: &SparseDistribution, test: &SparseDistribution) {
        let (small, large, swap) = if train.len() <= test.len() {
            (train, test, false)
        } else {
            (test, train, true)
        };
        let mut sum = 0.0;
        for (key, a) in small.iter() {
            let b = large.get(key);
            if b > 0 {
                let (c, d) = if swap { (b, a) } else { (a, b) };
                sum += term(c, d, self.alpha);
            }
        }
        self.sum = sum;
        self.peak = sum;
        self.ops = 0;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Train,
    Test,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Add,
    Remove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Label {
    #[default]
    Unassigned,
    Train,
    Test,
}

/// Train/test atom and compound distributions with incrementally maintained
/// Chernoff sums and per-sentence assignment labels.
#[derive(Debug, Clone)]
pub struct SplitState {
    train_atoms: SparseDistribution,
    test_atoms: SparseDistribution,
    train_compounds: SparseDistribution,
    test_compounds: SparseDistribution,
    atom_acc: ChernoffAccumulator,
    compound_acc: ChernoffAccumulator,
    labels: Vec<Label>,
    config: DivergenceConfig,
}

impl SplitState {
    pub fn new(sentence_count: usize, config: DivergenceConfig) -> Result<Self> {
        config.validate()?;
        Ok(SplitState {
            train_atoms: SparseDistribution::new(),
            test_atoms: SparseDistribution::new(),
            train_compounds: SparseDistribution::new(),
            test_compounds: SparseDistribution::new(),
            atom_acc: ChernoffAccumulator::new(config.alpha_atom),
            compound_acc: ChernoffAccumulator::new(config.alpha_compound),
            labels: vec![Label::Unassigned; sentence_count],
            config,
        })
    }

    pub fn config(&self) -> &DivergenceConfig {
        &self.config
    }

    pub fn label(&self, sentence: usize) -> Label {
        self.labels[sentence]
    }

    pub fn assigned_counts(&self) -> (usize, usize) {
        let mut train = 0;
        let mut test = 0;
        for label in &self.labels {
            match label {
                Label::Train => train += 1,
                Label::Test => test += 1,
                Label::Unassigned => {}
            }
        }
        (train, test)
    }

    pub fn distributions(&self, side: Side) -> (&SparseDistribution, &SparseDistribution) {
        match side {
            Side::Train => (&self.train_atoms, &self.train_compounds),
            Side::Test => (&self.test_atoms, &self.test_compounds),
        }
    }

    /// (D_A, D_C): complements of the atom (α = alpha_atom) and compound
    /// (α = alpha_compound) Chernoff coefficients.
    pub fn divergences(&self) -> Result<(f64, f64)> {
        let c_a = self.atom_acc.coefficient(&self.train_atoms, &self.test_atoms)?;
        let c_c = self
            .compound_acc
            .coefficient(&self.train_compounds, &self.test_compounds)?;
        Ok((1.0 - c_a, 1.0 - c_c))
    }

    /// Score(V, W) = −|c − D_C| − |a − D_A|, with a = 0 by default.
    pub fn score(&self) -> Result<f64> {
        let (d_a, d_c) = self.divergences()?;
        Ok(score_value(&self.config, d_a, d_c))
    }

    /// Move one sentence's bags in or out of a side, touching only the bag's
    /// keys. `Remove` requires the sentence to be assigned to that side.
    pub fn apply(
        &mut self,
        sentence: usize,
        bags: &SentenceBags,
        side: Side,
        direction: Direction,
    ) -> Result<()> {
        let expected = match (side, direction) {
            (_, Direction::Add) => Label::Unassigned,
            (Side::Train, Direction::Remove) => Label::Train,
            (Side::Test, Direction::Remove) => Label::Test,
        };
        if self.labels[sentence] != expected {
            return Err(Error::State(format!(
                "sentence {sentence} is {:?}, cannot {direction:?} on {side:?}",
                self.labels[sentence]
            )));
        }

        // Atom accumulator: per-key term deltas, in bag (key) order so that
        // peek and apply produce bit-identical sums.
        {
            let (this, other, swap) = match side {
                Side::Train => (&mut self.train_atoms, &self.test_atoms, false),
                Side::Test => (&mut self.test_atoms, &self.train_atoms, true),
            };
            let alpha = self.atom_acc.alpha;
            for &(key, count) in &bags.atoms {
                let old = this.get(key);
                let new = match direction {
                    Direction::Add => old + count,
                    Direction::Remove => old.checked_sub(count).ok_or_else(|| {
                        Error::State(format!("removing {count} from key {key} with count {old}"))
                    })?,
                };
                let o = other.get(key);
                let (oc, od) = if swap { (o, old) } else { (old, o) };
                let (nc, nd) = if swap { (o, new) } else { (new, o) };
                self.atom_acc.sum += term(nc, nd, alpha) - term(oc, od, alpha);
                match direction {
                    Direction::Add => this.add(key, count),
                    Direction::Remove => this.remove(key, count)?,
                }
            }
        }
        {
            let (this, other, swap) = match side {
                Side::Train => (&mut self.train_compounds, &self.test_compounds, false),
                Side::Test => (&mut self.test_compounds, &self.train_compounds, true),
            };
            let alpha = self.compound_acc.alpha;
            for &(key, count) in &bags.compounds {
                let old = this.get(key);
                let new = match direction {
                    Direction::Add => old + count,
                    Direction::Remove => old.checked_sub(count).ok_or_else(|| {
                        Error::State(format!("removing {count} from key {key} with count {old}"))
                    })?,
                };
                let o = other.get(key);
                let (oc, od) = if swap { (o, old) } else { (old, o) };
                let (nc, nd) = if swap { (o, new) } else { (new, o) };
                self.compound_acc.sum += term(nc, nd, alpha) - term(oc, od, alpha);
                match direction {
                    Direction::Add => this.add(key, count),
                    Direction::Remove => this.remove(key, count)?,
                }
            }
        }
        self.labels[sentence] = match direction {
            Direction::Add => match side {
                Side::Train => Label::Train,
                Side::Test => Label::Test,
            },
            Direction::Remove => Label::Unassigned,
        };

        if !bags.atoms.is_empty() {
            self.atom_acc.ops += 1;
            self.atom_acc.peak = self.atom_acc.peak.max(self.atom_acc.sum);
            if self.atom_acc.ops >= self.config.recompute_interval
                || self.atom_acc.sum < 1e-6 * self.atom_acc.peak
            {
                self.atom_acc.recompute(&self.train_atoms, &self.test_atoms);
            }
        }
        if !bags.compounds.is_empty() {
            self.compound_acc.ops += 1;
            self.compound_acc.peak = self.compound_acc.peak.max(self.compound_acc.sum);
            if self.compound_acc.ops >= self.config.recompute_interval
                || self.compound_acc.sum < 1e-6 * self.compound_acc.peak
            {
                self.compound_acc
                    .recompute(&self.train_compounds, &self.test_compounds);
            }
        }
        Ok(())
    }

    /// Divergences and score after hypothetically adding `bags` to `side`,
    /// without mutating the state.
    pub fn peek_add(&self, bags: &SentenceBags, side: Side) -> Result<(f64, f64, f64)> {
        let (atom_sum, atom_train_total, atom_test_total) = self.peek_sum(
            &bags.atoms,
            side,
            &self.train_atoms,
            &self.test_atoms,
            &self.atom_acc,
        );
        let (comp_sum, comp_train_total, comp_test_total) = self.peek_sum(
            &bags.compounds,
            side,
            &self.train_compounds,
            &self.test_compounds,
            &self.compound_acc,
        );
        if atom_train_total == 0 || comp_train_total == 0 {
            return Err(Error::UndefinedDivergence("train"));
        }
        if atom_test_total == 0 || comp_test_total == 0 {
            return Err(Error::UndefinedDivergence("test"));
        }
        let a = self.atom_acc.alpha;
        let c_a = (atom_sum
            / ((atom_train_total as f64).powf(a) * (atom_test_total as f64).powf(1.0 - a)))
        .clamp(0.0, 1.0);
        let a = self.compound_acc.alpha;
        let c_c = (comp_sum
            / ((comp_train_total as f64).powf(a) * (comp_test_total as f64).powf(1.0 - a)))
        .clamp(0.0, 1.0);
        let (d_a, d_c) = (1.0 - c_a, 1.0 - c_c);
        Ok((d_a, d_c, score_value(&self.config, d_a, d_c)))
    }

    fn peek_sum(
        &self,
        bag: &[(u32, u64)],
        side: Side,
        train: &SparseDistribution,
        test: &SparseDistribution,
        acc: &ChernoffAccumulator,
    ) -> (f64, u64, u64) {
        let (this, other, swap) = match side {
            Side::Train => (train, test, false),
            Side::Test => (test, train, true),
        };
        let mut sum = acc.sum;
        let mut added = 0u64;
        for &(key, count) in bag {
            let old = this.get(key);
            let new = old + count;
            let o = other.get(key);
            let (oc, od) = if swap { (o, old) } else { (old, o) };
            let (nc, nd) = if swap { (o, new) } else { (new, o) };
            sum += term(nc, nd, acc.alpha) - term(oc, od, acc.alpha);
            added += count;
        }
        let (train_total, test_total) = match side {
            Side::Train => (train.total() + added, test.total()),
            Side::Test => (train.total(), test.total() + added),
        };
        (sum, train_total, test_total)
    }

    /// Recompute both accumulator sums from the stored counts. The result of
    /// `divergences` is unchanged up to floating-point drift.
    pub fn resync(&mut self) {
        self.atom_acc.recompute(&self.train_atoms, &self.test_atoms);
        self.compound_acc
            .recompute(&self.train_compounds, &self.test_compounds);
    }
}

pub fn score_value(config: &DivergenceConfig, d_atom: f64, d_compound: f64) -> f64 {
    -(config.target_compound_divergence - d_compound).abs()
        - (config.target_atom_divergence - d_atom).abs()
}
