//! Pipeline front-end: config files, the on-disk cache, and the
//! extract / split / random-split / report / score commands as library
//! functions. The `divsplit` binary is a thin wrapper over these.
//!
//! All randomness flows from the configured seed through ChaCha8, so every
//! command is reproducible byte-for-byte; each emitted artifact embeds the
//! seed and a hash of the extraction config.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::atoms::{
    AtomInventory, CompoundInventory, FilterPolicy, SentenceBags, VectorizedCorpus,
    VectorizedSentence,
};
use crate::corpus::{align_targets, parse_conllu, preprocess, subsample, Corpus};
use crate::error::{Error, Result};
use crate::metrics::{chrf, generalisation_score, ChrfConfig, GeneralisationReport};
use crate::splitter::{
    evaluate_external_split, greedy_split, random_split, write_trace, SplitConfig, SplitResult,
};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct PreprocessConfig {
    pub max_words: usize,
    pub dedup: bool,
    /// Random subsample size applied after dedup/length filtering.
    pub subsample: Option<usize>,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            max_words: 30,
            dedup: true,
            subsample: None,
        }
    }
}

/// Top-level pipeline configuration, read from a TOML file. Relative paths
/// are resolved against the config file's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub manifest: PathBuf,
    pub out_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub filter: FilterPolicy,
    #[serde(default)]
    pub preprocess: PreprocessConfig,
    #[serde(default)]
    pub split: SplitConfig,
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        let mut config: PipelineConfig = toml::from_str(&text).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if let Some(base) = path.parent() {
            if config.manifest.is_relative() {
                config.manifest = base.join(&config.manifest);
            }
            if config.out_dir.is_relative() {
                config.out_dir = base.join(&config.out_dir);
            }
        }
        Ok(config)
    }
}

/// Corpus manifest: (CoNLL-U source, per-language target file) pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(rename = "source")]
    pub sources: Vec<SourceEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SourceEntry {
    pub conllu: PathBuf,
    #[serde(default)]
    pub targets: BTreeMap<String, PathBuf>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        let mut manifest: Manifest = toml::from_str(&text).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if manifest.sources.is_empty() {
            return Err(Error::Validation(format!(
                "manifest {} lists no sources",
                path.display()
            )));
        }
        if let Some(base) = path.parent() {
            for source in &mut manifest.sources {
                if source.conllu.is_relative() {
                    source.conllu = base.join(&source.conllu);
                }
                for target in source.targets.values_mut() {
                    if target.is_relative() {
                        *target = base.join(&*target);
                    }
                }
            }
        }
        Ok(manifest)
    }
}

/// Hash of everything that shapes the cache contents: manifest bytes plus
/// the filter/preprocess settings and the seed.
pub fn extraction_hash(config: &PipelineConfig) -> Result<String> {
    let mut hasher = Sha256::new();
    let manifest_bytes =
        fs::read(&config.manifest).map_err(|e| Error::file(&config.manifest, e))?;
    hasher.update(&manifest_bytes);
    hasher.update(toml::to_string(&config.filter).unwrap_or_default());
    hasher.update(toml::to_string(&config.preprocess).unwrap_or_default());
    hasher.update(config.seed.to_le_bytes());
    Ok(format!("{:x}", hasher.finalize()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheMeta {
    pub version: u32,
    pub config_hash: String,
    pub seed: u64,
    pub languages: Vec<String>,
    pub sentence_count: usize,
    pub retained_lemmas: usize,
    pub atom_count: usize,
    pub compound_count: usize,
    pub retained_compounds: usize,
}

/// The on-disk vectorized corpus: inventories, bags and target texts.
#[derive(Debug, Clone)]
pub struct Cache {
    pub meta: CacheMeta,
    pub corpus: VectorizedCorpus,
    pub source_texts: Vec<String>,
    pub targets: BTreeMap<String, Vec<String>>,
}

fn create_file(path: &Path) -> Result<std::io::BufWriter<fs::File>> {
    Ok(std::io::BufWriter::new(
        fs::File::create(path).map_err(|e| Error::file(path, e))?,
    ))
}

fn encode_bag(bag: &[(u32, u64)]) -> String {
    bag.iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn decode_bag(field: &str, line: usize) -> Result<Vec<(u32, u64)>> {
    if field.is_empty() {
        return Ok(Vec::new());
    }
    field
        .split(',')
        .map(|pair| {
            let (k, c) = pair.split_once(':').ok_or(Error::Parse {
                line,
                message: format!("malformed bag entry '{pair}'"),
            })?;
            Ok((
                k.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad key in '{pair}'"),
                })?,
                c.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad count in '{pair}'"),
                })?,
            ))
        })
        .collect()
}

impl Cache {
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::file(dir, e))?;
        let meta = serde_json::to_string_pretty(&self.meta).expect("meta serializes");
        fs::write(dir.join("meta.json"), meta + "\n").map_err(|e| Error::file(dir, e))?;

        let mut out = create_file(&dir.join("atoms.tsv"))?;
        self.corpus.atoms.dump(&mut out)?;
        let mut out = create_file(&dir.join("compounds.tsv"))?;
        self.corpus.compounds.dump(&mut out)?;

        let mut out = create_file(&dir.join("lemmas.txt"))?;
        for lemma in &self.corpus.lemma_pool {
            writeln!(out, "{lemma}")?;
        }

        let mut sent_out = create_file(&dir.join("sentences.tsv"))?;
        let mut bag_out = create_file(&dir.join("bags.tsv"))?;
        for (sent, text) in self.corpus.sentences.iter().zip(&self.source_texts) {
            let lemma_ids = sent
                .lemma_ids
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(
                sent_out,
                "{}\t{}\t{}\t{}",
                sent.id, sent.word_count, text, lemma_ids
            )?;
            writeln!(
                bag_out,
                "{}\t{}\t{}",
                sent.id,
                encode_bag(&sent.bags.atoms),
                encode_bag(&sent.bags.compounds)
            )?;
        }
        drop(sent_out);
        drop(bag_out);

        for (lang, lines) in &self.targets {
            let mut out = create_file(&dir.join(format!("targets.{lang}.txt")))?;
            for line in lines {
                writeln!(out, "{line}")?;
            }
        }
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let meta_path = dir.join("meta.json");
        let meta_text = fs::read_to_string(&meta_path).map_err(|e| Error::file(&meta_path, e))?;
        let meta: CacheMeta = serde_json::from_str(&meta_text).map_err(|e| Error::Config {
            path: meta_path,
            message: e.to_string(),
        })?;
        if meta.version != CACHE_VERSION {
            return Err(Error::Validation(format!(
                "cache version {} is not supported (expected {CACHE_VERSION})",
                meta.version
            )));
        }
        let open = |name: &str| -> Result<BufReader<fs::File>> {
            let path = dir.join(name);
            Ok(BufReader::new(
                fs::File::open(&path).map_err(|e| Error::file(&path, e))?,
            ))
        };
        let atoms = AtomInventory::load(open("atoms.tsv")?)?;
        let compounds = CompoundInventory::load(open("compounds.tsv")?)?;
        let lemmas_path = dir.join("lemmas.txt");
        let lemma_pool: Vec<String> = fs::read_to_string(&lemmas_path)
            .map_err(|e| Error::file(&lemmas_path, e))?
            .lines()
            .map(String::from)
            .collect();

        let sent_path = dir.join("sentences.tsv");
        let sent_text = fs::read_to_string(&sent_path).map_err(|e| Error::file(&sent_path, e))?;
        let bag_path = dir.join("bags.tsv");
        let bag_text = fs::read_to_string(&bag_path).map_err(|e| Error::file(&bag_path, e))?;
        let mut sentences = Vec::new();
        let mut source_texts = Vec::new();
        for ((lineno, sent_line), bag_line) in sent_text.lines().enumerate().zip(bag_text.lines()) {
            let line = lineno + 1;
            let cols: Vec<&str> = sent_line.split('\t').collect();
            if cols.len() != 4 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 4 columns in sentences.tsv, found {}", cols.len()),
                });
            }
            let bag_cols: Vec<&str> = bag_line.split('\t').collect();
            if bag_cols.len() != 3 || bag_cols[0] != cols[0] {
                return Err(Error::Parse {
                    line,
                    message: "bags.tsv does not line up with sentences.tsv".into(),
                });
            }
            let lemma_ids = if cols[3].is_empty() {
                Vec::new()
            } else {
                cols[3]
                    .split(' ')
                    .map(|t| {
                        t.parse().map_err(|_| Error::Parse {
                            line,
                            message: format!("bad lemma id '{t}'"),
                        })
                    })
                    .collect::<Result<_>>()?
            };
            sentences.push(VectorizedSentence {
                id: cols[0].to_string(),
                word_count: cols[1].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad word count '{}'", cols[1]),
                })?,
                lemma_ids,
                bags: SentenceBags {
                    atoms: decode_bag(bag_cols[1], line)?,
                    compounds: decode_bag(bag_cols[2], line)?,
                },
            });
            source_texts.push(cols[2].to_string());
        }
        if sentences.len() != meta.sentence_count {
            return Err(Error::Validation(format!(
                "cache lists {} sentences but meta.json says {}",
                sentences.len(),
                meta.sentence_count
            )));
        }

        let mut targets = BTreeMap::new();
        for lang in &meta.languages {
            let path = dir.join(format!("targets.{lang}.txt"));
            let lines: Vec<String> = fs::read_to_string(&path)
                .map_err(|e| Error::file(&path, e))?
                .lines()
                .map(String::from)
                .collect();
            if lines.len() != sentences.len() {
                return Err(Error::Alignment {
                    language: lang.clone(),
                    corpus: sentences.len(),
                    lines: lines.len(),
                });
            }
            targets.insert(lang.clone(), lines);
        }
        Ok(Cache {
            meta,
            corpus: VectorizedCorpus {
                atoms,
                compounds,
                lemma_pool,
                sentences,
            },
            source_texts,
            targets,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtractSummary {
    pub sentences: usize,
    pub retained_lemmas: usize,
    pub retained_compounds: usize,
    pub cache_dir: PathBuf,
    pub config_hash: String,
}

/// Parse, preprocess and vectorize the corpus named by the config's
/// manifest, writing the cache under `<out_dir>/cache`.
pub fn cmd_extract(config: &PipelineConfig) -> Result<ExtractSummary> {
    let manifest = Manifest::load(&config.manifest)?;
    let config_hash = extraction_hash(config)?;
    let multiple = manifest.sources.len() > 1;

    let mut all = Vec::new();
    let mut corpus = Corpus::default();
    for source in &manifest.sources {
        let file = fs::File::open(&source.conllu).map_err(|e| Error::file(&source.conllu, e))?;
        let mut sentences = parse_conllu(BufReader::new(file))?;
        if multiple {
            let stem = source
                .conllu
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            for sent in &mut sentences {
                sent.id = format!("{stem}:{}", sent.id);
            }
        }
        let mut part = Corpus {
            sentences,
            languages: Default::default(),
        };
        for (lang, path) in &source.targets {
            let file = fs::File::open(path).map_err(|e| Error::file(path, e))?;
            align_targets(&mut part, lang, BufReader::new(file))?;
        }
        all.append(&mut part.sentences);
        corpus.languages.extend(part.languages);
    }
    let languages = corpus.languages.clone();
    let mut corpus = preprocess(all, config.preprocess.max_words, config.preprocess.dedup);
    corpus.languages = languages;
    if let Some(n) = config.preprocess.subsample {
        corpus = subsample(corpus, n, config.seed);
    }

    let vectorized = VectorizedCorpus::build(&corpus, &config.filter);
    let source_texts = corpus.sentences.iter().map(|s| s.source_text()).collect();
    let mut targets: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for lang in &corpus.languages {
        targets.insert(
            lang.clone(),
            corpus
                .sentences
                .iter()
                .map(|s| s.target_texts.get(lang).cloned().unwrap_or_default())
                .collect(),
        );
    }
    let meta = CacheMeta {
        version: CACHE_VERSION,
        config_hash: config_hash.clone(),
        seed: config.seed,
        languages: corpus.languages.iter().cloned().collect(),
        sentence_count: vectorized.len(),
        retained_lemmas: vectorized.atoms.lemma_count(),
        atom_count: vectorized.atoms.len(),
        compound_count: vectorized.compounds.len(),
        retained_compounds: vectorized.compounds.retained_count(),
    };
    let summary = ExtractSummary {
        sentences: meta.sentence_count,
        retained_lemmas: meta.retained_lemmas,
        retained_compounds: meta.retained_compounds,
        cache_dir: config.out_dir.join("cache"),
        config_hash,
    };
    let cache = Cache {
        meta,
        corpus: vectorized,
        source_texts,
        targets,
    };
    cache.write(&summary.cache_dir)?;
    Ok(summary)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitSummary {
    pub config_hash: String,
    pub seed: u64,
    pub target_compound_divergence: f64,
    pub d_atom: f64,
    pub d_compound: f64,
    pub train_size: usize,
    pub test_size: usize,
    pub discarded: usize,
    pub mean_train_len: f64,
    pub mean_test_len: f64,
    pub split_config: SplitConfig,
}

fn write_ids(path: &Path, ids: &[String]) -> Result<()> {
    let mut out = create_file(path)?;
    for id in ids {
        writeln!(out, "{id}")?;
    }
    Ok(())
}

fn write_split_outputs(
    cache: &Cache,
    result: &SplitResult,
    out_dir: &Path,
) -> Result<SplitSummary> {
    fs::create_dir_all(out_dir).map_err(|e| Error::file(out_dir, e))?;
    write_ids(&out_dir.join("train.ids"), &result.train_ids)?;
    write_ids(&out_dir.join("test.ids"), &result.test_ids)?;
    write_ids(&out_dir.join("discarded.ids"), &result.discarded_ids)?;
    let mut trace_out = create_file(&out_dir.join("trace.tsv"))?;
    write_trace(&result.trace, &mut trace_out)?;

    // parallel exports, one sentence per line, aligned across files
    let index: BTreeMap<&str, usize> = cache
        .corpus
        .sentences
        .iter()
        .enumerate()
        .map(|(i, s)| (s.id.as_str(), i))
        .collect();
    for (name, ids) in [("train", &result.train_ids), ("test", &result.test_ids)] {
        let mut source_out = create_file(&out_dir.join(format!("{name}.source.txt")))?;
        let mut lang_outs: Vec<(String, _)> = Vec::new();
        for lang in cache.targets.keys() {
            lang_outs.push((
                lang.clone(),
                create_file(&out_dir.join(format!("{name}.{lang}.txt")))?,
            ));
        }
        for id in ids {
            let i = index[id.as_str()];
            writeln!(source_out, "{}", cache.source_texts[i])?;
            for (lang, out) in &mut lang_outs {
                writeln!(out, "{}", cache.targets[lang][i])?;
            }
        }
    }

    let eval = evaluate_external_split(&cache.corpus, &result.train_ids, &result.test_ids)?;
    let summary = SplitSummary {
        config_hash: cache.meta.config_hash.clone(),
        seed: result.config.seed,
        target_compound_divergence: result.config.divergence.target_compound_divergence,
        d_atom: result.d_atom,
        d_compound: result.d_compound,
        train_size: result.train_ids.len(),
        test_size: result.test_ids.len(),
        discarded: result.discarded_ids.len(),
        mean_train_len: eval.mean_train_len,
        mean_test_len: eval.mean_test_len,
        split_config: result.config.clone(),
    };
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    fs::write(out_dir.join("summary.json"), text + "\n").map_err(|e| Error::file(out_dir, e))?;
    Ok(summary)
}

/// Run the greedy split against an extracted cache and write id files,
/// parallel exports, the trace log and a summary record.
pub fn cmd_split(
    cache_dir: &Path,
    split_config: &SplitConfig,
    out_dir: &Path,
) -> Result<SplitSummary> {
    let cache = Cache::load(cache_dir)?;
    let result = greedy_split(&cache.corpus, split_config)?;
    write_split_outputs(&cache, &result, out_dir)
}

/// Random-baseline split with the same outputs as `cmd_split`.
pub fn cmd_random_split(
    cache_dir: &Path,
    train_count: usize,
    test_count: usize,
    seed: u64,
    out_dir: &Path,
) -> Result<SplitSummary> {
    let cache = Cache::load(cache_dir)?;
    let result = random_split(&cache.corpus, train_count, test_count, seed)?;
    write_split_outputs(&cache, &result, out_dir)
}

/// One row of the comparison table.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub train_sentences: usize,
    pub test_sentences: usize,
    pub train_words: u64,
    pub test_words: u64,
    pub unique_lemmas: usize,
    pub d_atom: f64,
    pub d_compound: f64,
    pub mean_train_len: f64,
    pub mean_test_len: f64,
}

/// Inputs to `cmd_report`: previously written split directories and/or raw
/// id-file pairs.
pub enum ReportInput {
    SplitDir(PathBuf),
    IdFiles { name: String, train: PathBuf, test: PathBuf },
}

fn read_ids(path: &Path) -> Result<Vec<String>> {
    Ok(fs::read_to_string(path)
        .map_err(|e| Error::file(path, e))?
        .lines()
        .map(String::from)
        .collect())
}

/// Evaluate one or more splits against the same cache and produce
/// comparison-table rows.
pub fn cmd_report(cache_dir: &Path, inputs: &[ReportInput]) -> Result<Vec<ReportRow>> {
    let cache = Cache::load(cache_dir)?;
    let mut rows = Vec::new();
    for input in inputs {
        let (name, train_ids, test_ids) = match input {
            ReportInput::SplitDir(dir) => {
                let summary_path = dir.join("summary.json");
                let text = fs::read_to_string(&summary_path)
                    .map_err(|e| Error::file(&summary_path, e))?;
                let summary: SplitSummary =
                    serde_json::from_str(&text).map_err(|e| Error::Config {
                        path: summary_path,
                        message: e.to_string(),
                    })?;
                if summary.config_hash != cache.meta.config_hash {
                    return Err(Error::Validation(format!(
                        "split {} was produced from a different cache (hash {} vs {})",
                        dir.display(),
                        summary.config_hash,
                        cache.meta.config_hash
                    )));
                }
                let name = dir
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| dir.display().to_string());
                (name, read_ids(&dir.join("train.ids"))?, read_ids(&dir.join("test.ids"))?)
            }
            ReportInput::IdFiles { name, train, test } => {
                (name.clone(), read_ids(train)?, read_ids(test)?)
            }
        };
        let eval = evaluate_external_split(&cache.corpus, &train_ids, &test_ids)?;
        rows.push(ReportRow {
            name,
            train_sentences: eval.train_sentences,
            test_sentences: eval.test_sentences,
            train_words: eval.train_words,
            test_words: eval.test_words,
            unique_lemmas: eval.unique_lemmas,
            d_atom: eval.d_atom,
            d_compound: eval.d_compound,
            mean_train_len: eval.mean_train_len,
            mean_test_len: eval.mean_test_len,
        });
    }
    Ok(rows)
}

/// Machine-readable report table, tab-separated with a header row.
pub fn write_report_tsv(rows: &[ReportRow], out: &mut impl Write) -> Result<()> {
    writeln!(
        out,
        "name\ttrain_sentences\ttest_sentences\ttrain_words\ttest_words\tunique_lemmas\tD_A\tD_C\tmean_train_len\tmean_test_len"
    )?;
    for r in rows {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.name,
            r.train_sentences,
            r.test_sentences,
            r.train_words,
            r.test_words,
            r.unique_lemmas,
            r.d_atom,
            r.d_compound,
            r.mean_train_len,
            r.mean_test_len
        )?;
    }
    Ok(())
}

/// Scoring configuration: per language, one or more hypothesis/reference
/// file pairs for each of the min- and max-divergence splits. Multiple
/// pairs (for example one per seed) are chrF-scored separately and averaged
/// before the ratio is taken.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoreConfig {
    #[serde(rename = "language")]
    pub languages: Vec<LanguageFiles>,
    #[serde(default)]
    pub chrf: ChrfConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LanguageFiles {
    pub code: String,
    pub min: Vec<FilePair>,
    pub max: Vec<FilePair>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilePair {
    pub hyp: PathBuf,
    #[serde(rename = "ref")]
    pub reference: PathBuf,
}

impl ScoreConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        let mut config: ScoreConfig = toml::from_str(&text).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if let Some(base) = path.parent() {
            for lang in &mut config.languages {
                for pair in lang.min.iter_mut().chain(lang.max.iter_mut()) {
                    if pair.hyp.is_relative() {
                        pair.hyp = base.join(&pair.hyp);
                    }
                    if pair.reference.is_relative() {
                        pair.reference = base.join(&pair.reference);
                    }
                }
            }
        }
        Ok(config)
    }
}

fn read_segments(path: &Path) -> Result<Vec<String>> {
    Ok(fs::read_to_string(path)
        .map_err(|e| Error::file(path, e))?
        .lines()
        .map(String::from)
        .collect())
}

fn score_pairs(pairs: &[FilePair], config: &ChrfConfig) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::Validation("no hypothesis/reference pairs given".into()));
    }
    let mut total = 0.0;
    for pair in pairs {
        let hyps = read_segments(&pair.hyp)?;
        let refs = read_segments(&pair.reference)?;
        if hyps.len() != refs.len() {
            return Err(Error::Validation(format!(
                "line count mismatch between {} ({} lines) and {} ({} lines)",
                pair.hyp.display(),
                hyps.len(),
                pair.reference.display(),
                refs.len()
            )));
        }
        total += chrf(&hyps, &refs, config)?;
    }
    Ok(total / pairs.len() as f64)
}

/// chrF2++ both splits per language, average over the provided runs, and
/// take the max/min ratio.
pub fn cmd_score(config: &ScoreConfig) -> Result<GeneralisationReport> {
    let mut min_scores = BTreeMap::new();
    let mut max_scores = BTreeMap::new();
    for lang in &config.languages {
        min_scores.insert(lang.code.clone(), score_pairs(&lang.min, &config.chrf)?);
        max_scores.insert(lang.code.clone(), score_pairs(&lang.max, &config.chrf)?);
    }
    generalisation_score(&min_scores, &max_scores)
}
