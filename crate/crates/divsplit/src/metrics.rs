//! Translation scoring: corpus-level chrF2++ and the min/max-split
//! generalisation score.
//!
//! chrF2++ here is character n-grams up to order 6 over whitespace-stripped
//! text plus word n-grams up to order 2 over whitespace tokens, F-score with
//! beta = 2 (recall-weighted), n-gram statistics micro-averaged across
//! segments and the F values averaged over orders. Scores are on a 0–100
//! scale.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ChrfConfig {
    pub char_ngram_max: usize,
    /// The "++" part: word n-gram orders included on top of the character
    /// orders.
    pub word_ngram_max: usize,
    pub beta: f64,
}

impl Default for ChrfConfig {
    fn default() -> Self {
        ChrfConfig {
            char_ngram_max: 6,
            word_ngram_max: 2,
            beta: 2.0,
        }
    }
}

impl ChrfConfig {
    fn validate(&self) -> Result<()> {
        if self.char_ngram_max < 1 || self.word_ngram_max < 1 || self.beta <= 0.0 {
            return Err(Error::Validation(format!(
                "invalid chrF configuration: char_ngram_max={}, word_ngram_max={}, beta={}",
                self.char_ngram_max, self.word_ngram_max, self.beta
            )));
        }
        Ok(())
    }

    fn orders(&self) -> usize {
        self.char_ngram_max + self.word_ngram_max
    }
}

/// Matches, hypothesis total and reference total for one n-gram order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct OrderStats {
    pub matches: u64,
    pub hyp_total: u64,
    pub ref_total: u64,
}

impl OrderStats {
    pub fn precision(&self) -> f64 {
        if self.hyp_total == 0 {
            0.0
        } else {
            self.matches as f64 / self.hyp_total as f64
        }
    }

    pub fn recall(&self) -> f64 {
        if self.ref_total == 0 {
            0.0
        } else {
            self.matches as f64 / self.ref_total as f64
        }
    }

    fn f_beta(&self, beta: f64) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        let b2 = beta * beta;
        let denom = b2 * p + r;
        if denom > 0.0 {
            (1.0 + b2) * p * r / denom
        } else {
            0.0
        }
    }
}

fn count_ngrams<T: Clone + Eq + std::hash::Hash>(items: &[T], n: usize) -> HashMap<&[T], u64> {
    let mut counts = HashMap::new();
    if items.len() >= n {
        for window in items.windows(n) {
            *counts.entry(window).or_insert(0) += 1;
        }
    }
    counts
}

fn matched<T: Clone + Eq + std::hash::Hash>(
    hyp: &HashMap<&[T], u64>,
    reference: &HashMap<&[T], u64>,
) -> u64 {
    hyp.iter()
        .map(|(k, &c)| c.min(reference.get(k).copied().unwrap_or(0)))
        .sum()
}

/// Corpus-level chrF2++ statistics per n-gram order (character orders first,
/// then word orders).
pub fn chrf_stats(
    hypotheses: &[impl AsRef<str>],
    references: &[impl AsRef<str>],
    config: &ChrfConfig,
) -> Result<Vec<OrderStats>> {
    config.validate()?;
    if hypotheses.is_empty() {
        return Err(Error::Validation("no segments to score".into()));
    }
    if hypotheses.len() != references.len() {
        return Err(Error::Validation(format!(
            "segment count mismatch: {} hypotheses vs {} references",
            hypotheses.len(),
            references.len()
        )));
    }
    let mut stats = vec![OrderStats::default(); config.orders()];
    for (hyp, reference) in hypotheses.iter().zip(references) {
        let hyp = hyp.as_ref().trim();
        let reference = reference.as_ref().trim();
        let hyp_chars: Vec<char> = hyp.split_whitespace().flat_map(|w| w.chars()).collect();
        let ref_chars: Vec<char> = reference.split_whitespace().flat_map(|w| w.chars()).collect();
        for n in 1..=config.char_ngram_max {
            let h = count_ngrams(&hyp_chars, n);
            let r = count_ngrams(&ref_chars, n);
            let s = &mut stats[n - 1];
            s.matches += matched(&h, &r);
            s.hyp_total += h.values().sum::<u64>();
            s.ref_total += r.values().sum::<u64>();
        }
        let hyp_words: Vec<&str> = hyp.split_whitespace().collect();
        let ref_words: Vec<&str> = reference.split_whitespace().collect();
        for n in 1..=config.word_ngram_max {
            let h = count_ngrams(&hyp_words, n);
            let r = count_ngrams(&ref_words, n);
            let s = &mut stats[config.char_ngram_max + n - 1];
            s.matches += matched(&h, &r);
            s.hyp_total += h.values().sum::<u64>();
            s.ref_total += r.values().sum::<u64>();
        }
    }
    Ok(stats)
}

/// Corpus-level chrF2++ in [0, 100]. Orders with no hypothesis and no
/// reference n-grams at all are skipped.
pub fn chrf(
    hypotheses: &[impl AsRef<str>],
    references: &[impl AsRef<str>],
    config: &ChrfConfig,
) -> Result<f64> {
    let stats = chrf_stats(hypotheses, references, config)?;
    let mut total = 0.0;
    let mut effective = 0usize;
    for s in &stats {
        if s.hyp_total + s.ref_total == 0 {
            continue;
        }
        effective += 1;
        total += s.f_beta(config.beta);
    }
    if effective == 0 {
        // both corpora entirely empty: vacuous perfect agreement
        return Ok(100.0);
    }
    Ok(100.0 * total / effective as f64)
}

/// Per-language chrF results on the min- and max-divergence splits, plus
/// their ratio.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LanguageScores {
    pub min_split: f64,
    pub max_split: f64,
    /// max_split / min_split; closer to 1 means more robust generalisation.
    pub generalisation_score: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneralisationReport {
    pub per_language: BTreeMap<String, LanguageScores>,
}

/// Ratio of max-split to min-split translation scores per language. Both
/// absolute values are carried in the report.
pub fn generalisation_score(
    results_min: &BTreeMap<String, f64>,
    results_max: &BTreeMap<String, f64>,
) -> Result<GeneralisationReport> {
    let mut per_language = BTreeMap::new();
    for (lang, &max_score) in results_max {
        let &min_score = results_min.get(lang).ok_or_else(|| {
            Error::Validation(format!("no min-split result for language '{lang}'"))
        })?;
        if min_score <= 0.0 {
            return Err(Error::Validation(format!(
                "min-split score for '{lang}' must be positive, got {min_score}"
            )));
        }
        per_language.insert(
            lang.clone(),
            LanguageScores {
                min_split: min_score,
                max_split: max_score,
                generalisation_score: max_score / min_score,
            },
        );
    }
    for lang in results_min.keys() {
        if !results_max.contains_key(lang) {
            return Err(Error::Validation(format!(
                "no max-split result for language '{lang}'"
            )));
        }
    }
    Ok(GeneralisationReport { per_language })
}
