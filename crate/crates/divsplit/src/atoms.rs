//! Atoms, compounds, frequency filtering and compound weights.
//!
//! Atoms are lemmas and dependency-relation tags; compounds are
//! (head lemma, relation, dependant lemma) triples. Lemmas are filtered by
//! corpus frequency (top-k excluded, rare dropped); compounds additionally
//! carry a weight derived from how many distinct heads a
//! (dependant, relation) pair occurs with, and are dropped below a weight
//! threshold.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, SentenceRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AtomKind {
    Lemma,
    Relation,
}

impl AtomKind {
    fn as_str(self) -> &'static str {
        match self {
            AtomKind::Lemma => "lemma",
            AtomKind::Relation => "relation",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "lemma" => Some(AtomKind::Lemma),
            "relation" => Some(AtomKind::Relation),
            _ => None,
        }
    }
}

/// Frequency and weight thresholds controlling which atoms and compounds
/// enter the divergence calculations.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterPolicy {
    /// Exclude this many of the most frequent lemmas.
    pub top_k_excluded: usize,
    /// Drop lemmas occurring fewer than this many times in total.
    pub min_count: u64,
    /// Drop compounds whose weight falls below this threshold.
    pub weight_threshold: f64,
}

impl Default for FilterPolicy {
    fn default() -> Self {
        FilterPolicy {
            top_k_excluded: 200,
            min_count: 10,
            weight_threshold: 0.5,
        }
    }
}

/// Interned atom vocabulary: retained lemmas plus every relation tag.
#[derive(Debug, Clone, Default)]
pub struct AtomInventory {
    entries: Vec<(AtomKind, String, u64)>,
    index: HashMap<(AtomKind, String), u32>,
}

impl AtomInventory {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn id(&self, kind: AtomKind, text: &str) -> Option<u32> {
        self.index.get(&(kind, text.to_string())).copied()
    }

    pub fn entry(&self, id: u32) -> Option<(AtomKind, &str, u64)> {
        self.entries
            .get(id as usize)
            .map(|(k, t, c)| (*k, t.as_str(), *c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, AtomKind, &str, u64)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, (k, t, c))| (i as u32, *k, t.as_str(), *c))
    }

    pub fn lemma_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|(k, _, _)| *k == AtomKind::Lemma)
            .count()
    }

    fn from_entries(entries: Vec<(AtomKind, String, u64)>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, (k, t, _))| ((*k, t.clone()), i as u32))
            .collect();
        AtomInventory { entries, index }
    }

    /// Tab-separated dump: `kind<TAB>text<TAB>count`, sorted by id.
    pub fn dump(&self, out: &mut impl std::io::Write) -> Result<()> {
        for (_, kind, text, count) in self.iter() {
            writeln!(out, "{}\t{}\t{}", kind.as_str(), text, count)?;
        }
        Ok(())
    }

    pub fn load(reader: impl std::io::BufRead) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let parse_err = |msg: &str| Error::Parse {
                line: lineno + 1,
                message: msg.to_string(),
            };
            if cols.len() != 3 {
                return Err(parse_err("expected 3 columns in atom dump"));
            }
            let kind = AtomKind::parse(cols[0]).ok_or_else(|| parse_err("unknown atom kind"))?;
            let count = cols[2].parse().map_err(|_| parse_err("invalid count"))?;
            entries.push((kind, cols[1].to_string(), count));
        }
        Ok(AtomInventory::from_entries(entries))
    }
}

/// One compound triple with its corpus count, weight, and retain flag.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundEntry {
    pub head: String,
    pub relation: String,
    pub dependant: String,
    pub count: u64,
    pub weight: f64,
    pub retained: bool,
}

/// Interned compound vocabulary covering every extracted triple, retained
/// or not.
#[derive(Debug, Clone, Default)]
pub struct CompoundInventory {
    entries: Vec<CompoundEntry>,
    index: HashMap<(String, String, String), u32>,
}

impl CompoundInventory {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn retained_count(&self) -> usize {
        self.entries.iter().filter(|e| e.retained).count()
    }

    pub fn id(&self, head: &str, relation: &str, dependant: &str) -> Option<u32> {
        self.index
            .get(&(head.to_string(), relation.to_string(), dependant.to_string()))
            .copied()
    }

    pub fn entry(&self, id: u32) -> Option<&CompoundEntry> {
        self.entries.get(id as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &CompoundEntry)> {
        self.entries.iter().enumerate().map(|(i, e)| (i as u32, e))
    }

    fn from_entries(entries: Vec<CompoundEntry>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                (
                    (e.head.clone(), e.relation.clone(), e.dependant.clone()),
                    i as u32,
                )
            })
            .collect();
        CompoundInventory { entries, index }
    }

    /// Tab-separated dump: `head<TAB>rel<TAB>dep<TAB>count<TAB>weight<TAB>retained`.
    pub fn dump(&self, out: &mut impl std::io::Write) -> Result<()> {
        for (_, e) in self.iter() {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                e.head, e.relation, e.dependant, e.count, e.weight, e.retained as u8
            )?;
        }
        Ok(())
    }

    pub fn load(reader: impl std::io::BufRead) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let parse_err = |msg: &str| Error::Parse {
                line: lineno + 1,
                message: msg.to_string(),
            };
            if cols.len() != 6 {
                return Err(parse_err("expected 6 columns in compound dump"));
            }
            entries.push(CompoundEntry {
                head: cols[0].to_string(),
                relation: cols[1].to_string(),
                dependant: cols[2].to_string(),
                count: cols[3].parse().map_err(|_| parse_err("invalid count"))?,
                weight: cols[4].parse().map_err(|_| parse_err("invalid weight"))?,
                retained: cols[5] == "1",
            });
        }
        Ok(CompoundInventory::from_entries(entries))
    }
}

/// Dependency edges of one sentence as lowercased
/// (head lemma, relation, dependant lemma) triples. ROOT-attached tokens
/// produce no triple.
pub fn extract_edges(sentence: &SentenceRecord) -> Vec<(String, String, String)> {
    let mut edges = Vec::new();
    for token in &sentence.tokens {
        if let Some(h) = token.head {
            edges.push((
                sentence.tokens[h].lemma.to_lowercase(),
                token.relation.clone(),
                token.lemma.to_lowercase(),
            ));
        }
    }
    edges
}

/// Lemmas that survive the frequency filter: everything except the
/// `top_k_excluded` most frequent and those occurring fewer than
/// `min_count` times. Ties at the top-k boundary break lexicographically.
pub fn build_lemma_filter(corpus: &Corpus, policy: &FilterPolicy) -> BTreeSet<String> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for sent in &corpus.sentences {
        for token in &sent.tokens {
            *counts.entry(token.lemma.to_lowercase()).or_insert(0) += 1;
        }
    }
    let mut by_freq: Vec<(String, u64)> = counts.into_iter().collect();
    by_freq.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    by_freq
        .into_iter()
        .skip(policy.top_k_excluded)
        .filter(|(_, c)| *c >= policy.min_count)
        .map(|(lemma, _)| lemma)
        .collect()
}

/// Corpus-wide compound inventory with weights.
///
/// weight(h, r, d) = 1 − max over heads h′ of count(h′, r, d) / count(·, r, d).
/// A compound is retained when its weight clears the threshold and both of
/// its lemmas pass the frequency filter.
pub fn compute_compound_weights(
    corpus: &Corpus,
    retained_lemmas: &BTreeSet<String>,
    weight_threshold: f64,
) -> CompoundInventory {
    let mut triple_counts: BTreeMap<(String, String, String), u64> = BTreeMap::new();
    let mut pair_totals: HashMap<(String, String), u64> = HashMap::new();
    for sent in &corpus.sentences {
        for (head, rel, dep) in extract_edges(sent) {
            *pair_totals.entry((rel.clone(), dep.clone())).or_insert(0) += 1;
            *triple_counts.entry((head, rel, dep)).or_insert(0) += 1;
        }
    }
    let mut pair_max: HashMap<(String, String), u64> = HashMap::new();
    for ((_, rel, dep), count) in &triple_counts {
        let max = pair_max.entry((rel.clone(), dep.clone())).or_insert(0);
        *max = (*max).max(*count);
    }
    let entries = triple_counts
        .into_iter()
        .map(|((head, rel, dep), count)| {
            let key = (rel.clone(), dep.clone());
            let weight = 1.0 - pair_max[&key] as f64 / pair_totals[&key] as f64;
            let retained = weight >= weight_threshold
                && retained_lemmas.contains(&head)
                && retained_lemmas.contains(&dep);
            CompoundEntry {
                head,
                relation: rel,
                dependant: dep,
                count,
                weight,
                retained,
            }
        })
        .collect();
    CompoundInventory::from_entries(entries)
}

/// Per-sentence count bags over the interned inventories, sorted by id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SentenceBags {
    pub atoms: Vec<(u32, u64)>,
    pub compounds: Vec<(u32, u64)>,
}

/// Count atoms and compounds of one sentence against the built inventories.
/// Lemma atoms count once per token occurrence among retained lemmas;
/// relation atoms count once per extracted edge; non-retained items
/// contribute nothing.
pub fn vectorize(
    sentence: &SentenceRecord,
    atoms: &AtomInventory,
    compounds: &CompoundInventory,
) -> SentenceBags {
    let mut atom_bag: BTreeMap<u32, u64> = BTreeMap::new();
    for token in &sentence.tokens {
        if let Some(id) = atoms.id(AtomKind::Lemma, &token.lemma.to_lowercase()) {
            *atom_bag.entry(id).or_insert(0) += 1;
        }
    }
    let mut compound_bag: BTreeMap<u32, u64> = BTreeMap::new();
    for (head, rel, dep) in extract_edges(sentence) {
        if let Some(id) = atoms.id(AtomKind::Relation, &rel) {
            *atom_bag.entry(id).or_insert(0) += 1;
        }
        if let Some(id) = compounds.id(&head, &rel, &dep) {
            if compounds.entry(id).is_some_and(|e| e.retained) {
                *compound_bag.entry(id).or_insert(0) += 1;
            }
        }
    }
    SentenceBags {
        atoms: atom_bag.into_iter().collect(),
        compounds: compound_bag.into_iter().collect(),
    }
}

/// One vectorized sentence: id, size metadata and count bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorizedSentence {
    pub id: String,
    pub word_count: u32,
    /// All token lemmas (lowercased, unfiltered), interned in the corpus
    /// lemma pool; used for vocabulary statistics.
    pub lemma_ids: Vec<u32>,
    pub bags: SentenceBags,
}

/// The fully vectorized corpus: inventories plus per-sentence bags.
#[derive(Debug, Clone, Default)]
pub struct VectorizedCorpus {
    pub atoms: AtomInventory,
    pub compounds: CompoundInventory,
    /// Every distinct lemma in the corpus, sorted; `lemma_ids` index here.
    pub lemma_pool: Vec<String>,
    pub sentences: Vec<VectorizedSentence>,
}

impl VectorizedCorpus {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// Two-pass build: count lemmas and edges, derive filters and weights,
    /// then vectorize every sentence.
    pub fn build(corpus: &Corpus, policy: &FilterPolicy) -> Self {
        let retained_lemmas = build_lemma_filter(corpus, policy);
        let compounds = compute_compound_weights(corpus, &retained_lemmas, policy.weight_threshold);

        // Atom inventory: retained lemmas with token counts, plus every
        // relation tag with its edge count. Relation tags are never
        // frequency-filtered.
        let mut lemma_counts: BTreeMap<String, u64> = BTreeMap::new();
        let mut relation_counts: BTreeMap<String, u64> = BTreeMap::new();
        let mut pool_set: BTreeSet<String> = BTreeSet::new();
        for sent in &corpus.sentences {
            for token in &sent.tokens {
                let lemma = token.lemma.to_lowercase();
                if retained_lemmas.contains(&lemma) {
                    *lemma_counts.entry(lemma.clone()).or_insert(0) += 1;
                }
                pool_set.insert(lemma);
                if token.head.is_some() {
                    *relation_counts.entry(token.relation.clone()).or_insert(0) += 1;
                }
            }
        }
        let mut entries: Vec<(AtomKind, String, u64)> = lemma_counts
            .into_iter()
            .map(|(t, c)| (AtomKind::Lemma, t, c))
            .collect();
        entries.extend(
            relation_counts
                .into_iter()
                .map(|(t, c)| (AtomKind::Relation, t, c)),
        );
        let atoms = AtomInventory::from_entries(entries);

        let lemma_pool: Vec<String> = pool_set.into_iter().collect();
        let pool_index: HashMap<&str, u32> = lemma_pool
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u32))
            .collect();

        let sentences = corpus
            .sentences
            .iter()
            .map(|sent| VectorizedSentence {
                id: sent.id.clone(),
                word_count: sent.word_count() as u32,
                lemma_ids: sent
                    .tokens
                    .iter()
                    .map(|t| pool_index[t.lemma.to_lowercase().as_str()])
                    .collect(),
                bags: vectorize(sent, &atoms, &compounds),
            })
            .collect();

        VectorizedCorpus {
            atoms,
            compounds,
            lemma_pool,
            sentences,
        }
    }

    pub fn index_of_id(&self, id: &str) -> Option<usize> {
        self.sentences.iter().position(|s| s.id == id)
    }
}
