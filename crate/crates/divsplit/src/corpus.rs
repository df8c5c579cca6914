//! CoNLL-U ingestion and corpus preprocessing.
//!
//! The splitter only consumes the dependency fields of a parse: lemma, head
//! and relation. Everything else in the 10-column format is carried through
//! unread. Target-side translations are attached per language from plain
//! line-aligned text files.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::BufRead;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// One source-side token with its dependency edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub form: String,
    pub lemma: String,
    /// 0-based index of the head token; `None` for ROOT attachment.
    pub head: Option<usize>,
    pub relation: String,
}

/// One aligned sentence: source tokens plus any target-language texts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRecord {
    pub id: String,
    pub tokens: Vec<Token>,
    pub target_texts: BTreeMap<String, String>,
}

impl SentenceRecord {
    /// Source text reconstructed from token surface forms.
    pub fn source_text(&self) -> String {
        let forms: Vec<&str> = self.tokens.iter().map(|t| t.form.as_str()).collect();
        forms.join(" ")
    }

    /// Number of source words (token count, before subword tokenisation).
    pub fn word_count(&self) -> usize {
        self.tokens.len()
    }
}

/// An immutable preprocessed corpus, safe to share across threads.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub sentences: Vec<SentenceRecord>,
    pub languages: BTreeSet<String>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

/// Parse a CoNLL-U stream into sentence records.
///
/// Lemma comes from column 3, head from column 7 (1-based, 0 = ROOT),
/// relation from column 8. Multiword-token ranges (`3-4`) and empty nodes
/// (`5.1`) are skipped. A `# sent_id` comment names the sentence; otherwise
/// a zero-padded ordinal id is assigned.
pub fn parse_conllu(reader: impl BufRead) -> Result<Vec<SentenceRecord>> {
    let mut sentences = Vec::new();
    let mut tokens: Vec<Token> = Vec::new();
    let mut heads_1based: Vec<(usize, usize)> = Vec::new(); // (file line, head)
    let mut sent_id: Option<String> = None;
    let mut ordinal = 0usize;

    let flush = |tokens: &mut Vec<Token>,
                     heads: &mut Vec<(usize, usize)>,
                     sent_id: &mut Option<String>,
                     ordinal: &mut usize,
                     out: &mut Vec<SentenceRecord>|
     -> Result<()> {
        if tokens.is_empty() {
            return Ok(());
        }
        let n = tokens.len();
        for (tok, &(line, head)) in tokens.iter_mut().zip(heads.iter()) {
            if head == 0 {
                tok.head = None;
            } else if head > n {
                return Err(Error::Parse {
                    line,
                    message: format!("head index {head} out of range (sentence has {n} tokens)"),
                });
            } else {
                tok.head = Some(head - 1);
            }
        }
        let id = sent_id
            .take()
            .unwrap_or_else(|| format!("{:08}", *ordinal));
        *ordinal += 1;
        out.push(SentenceRecord {
            id,
            tokens: std::mem::take(tokens),
            target_texts: BTreeMap::new(),
        });
        heads.clear();
        Ok(())
    };

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| {
            if e.kind() == std::io::ErrorKind::InvalidData {
                Error::Parse {
                    line: lineno,
                    message: "input is not valid UTF-8".into(),
                }
            } else {
                Error::Io(e)
            }
        })?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.is_empty() {
            flush(&mut tokens, &mut heads_1based, &mut sent_id, &mut ordinal, &mut sentences)?;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("sent_id") {
                let value = rest.trim_start_matches([' ', '=']).trim();
                if !value.is_empty() {
                    sent_id = Some(value.to_string());
                }
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 10 tab-separated columns, found {}", cols.len()),
            });
        }
        // Multiword-token ranges and empty nodes carry no dependency edge.
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let expected = tokens.len() + 1;
        let token_id: usize = cols[0].parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid token id '{}'", cols[0]),
        })?;
        if token_id != expected {
            return Err(Error::Parse {
                line: lineno,
                message: format!("token id {token_id} out of sequence (expected {expected})"),
            });
        }
        let head: usize = cols[6].parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid head '{}'", cols[6]),
        })?;
        if head == token_id {
            return Err(Error::Parse {
                line: lineno,
                message: format!("token {token_id} is its own head"),
            });
        }
        if cols[2].is_empty() || cols[7].is_empty() {
            return Err(Error::Parse {
                line: lineno,
                message: "empty lemma or relation".into(),
            });
        }
        tokens.push(Token {
            form: cols[1].to_string(),
            lemma: cols[2].to_string(),
            head: None, // fixed up at flush, once the sentence length is known
            relation: cols[7].to_string(),
        });
        heads_1based.push((lineno, head));
    }
    flush(&mut tokens, &mut heads_1based, &mut sent_id, &mut ordinal, &mut sentences)?;
    Ok(sentences)
}

/// Serialize sentences back to CoNLL-U (dependency fields only, `_` elsewhere).
pub fn write_conllu(sentences: &[SentenceRecord], out: &mut impl std::io::Write) -> Result<()> {
    for sent in sentences {
        writeln!(out, "# sent_id = {}", sent.id)?;
        for (i, tok) in sent.tokens.iter().enumerate() {
            let head = match tok.head {
                None => 0,
                Some(h) => h + 1,
            };
            writeln!(
                out,
                "{}\t{}\t{}\t_\t_\t_\t{}\t{}\t_\t_",
                i + 1,
                tok.form,
                tok.lemma,
                head,
                tok.relation
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Length-filter and (optionally) deduplicate sentences, in input order.
///
/// Deduplication keys on the raw source text; the first occurrence wins.
pub fn preprocess(sentences: Vec<SentenceRecord>, max_words: usize, dedup: bool) -> Corpus {
    let mut seen: HashSet<String> = HashSet::new();
    let mut kept = Vec::new();
    let mut languages = BTreeSet::new();
    for sent in sentences {
        if sent.word_count() > max_words {
            continue;
        }
        if dedup && !seen.insert(sent.source_text()) {
            continue;
        }
        for lang in sent.target_texts.keys() {
            languages.insert(lang.clone());
        }
        kept.push(sent);
    }
    Corpus {
        sentences: kept,
        languages,
    }
}

/// Draw `n` sentences uniformly without replacement, preserving corpus order.
/// Deterministic for a fixed seed.
pub fn subsample(corpus: Corpus, n: usize, seed: u64) -> Corpus {
    if n >= corpus.len() {
        return corpus;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, corpus.len(), n).into_vec();
    picked.sort_unstable();
    let mut keep = vec![false; corpus.len()];
    for i in picked {
        keep[i] = true;
    }
    let sentences = corpus
        .sentences
        .into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect();
    Corpus {
        sentences,
        languages: corpus.languages,
    }
}

/// Attach one target language from a line-aligned text stream.
pub fn align_targets(corpus: &mut Corpus, language: &str, reader: impl BufRead) -> Result<()> {
    let lines: Vec<String> = reader.lines().collect::<std::io::Result<_>>()?;
    if lines.len() != corpus.len() {
        return Err(Error::Alignment {
            language: language.to_string(),
            corpus: corpus.len(),
            lines: lines.len(),
        });
    }
    for (sent, line) in corpus.sentences.iter_mut().zip(lines) {
        sent.target_texts.insert(language.to_string(), line);
    }
    corpus.languages.insert(language.to_string());
    Ok(())
}
