//! Sentence selection: picks corpus sentences suitable for gap-fill
//! questions and records a per-sentence verdict trail.
//!
//! A sentence is kept only when all four checks pass:
//! 1. it names a concept by title or alias (`c1`),
//! 2. it contains at least one further term that characterizes that concept
//!    (`c2`),
//! 3. it does not open with a subordinating connective, so it stands on its
//!    own (`c3`),
//! 4. it is a declarative sentence and does not open with an adverb (`c4`).
//!
//! Sentences shorter than four words fail everything outright. Verdicts for
//! every sentence — kept or not — can be written to a JSON-lines file whose
//! header records the checksum of the corpus they were derived from.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::ClassifiedCorpus;
use crate::error::{Error, Result};
use crate::knowledge::{ConceptId, Glossary, Ontology};
use crate::textproc::{analyze_clause, lemmatize, Lexicon, TaggedSentence};

pub const VERDICTS_FORMAT_VERSION: u32 = 1;

/// Outcome of the four checks for one sentence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionVerdict {
    pub doc_id: String,
    pub index: usize,
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub c4: bool,
    pub accepted: bool,
    /// The concept the sentence names, when `c1` holds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concept: Option<ConceptId>,
    /// Characterizing terms in first-occurrence order, when `c1` holds.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub key_terms: Vec<String>,
}

/// A characterizing term inside a candidate sentence, pointing at the token
/// that carries it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyTerm {
    pub lemma: String,
    pub token_index: usize,
}

/// An accepted sentence, ready for question generation.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSentence {
    pub doc_id: String,
    pub index: usize,
    pub sentence: String,
    pub concept: ConceptId,
    pub key_terms: Vec<KeyTerm>,
}

/// All accepted sentences plus the checksum of the corpus they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet {
    pub corpus_checksum: String,
    pub candidates: Vec<CandidateSentence>,
}

/// Verdicts for every sentence and the accepted candidates, from one
/// selection pass.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionOutcome {
    pub verdicts: Vec<SelectionVerdict>,
    pub candidates: CandidateSet,
}

#[derive(Serialize, Deserialize)]
struct VerdictsHeader {
    format_version: u32,
    corpus_checksum: String,
}

/// Runs the four checks over every sentence of every document, in document
/// order.
pub fn select(
    corpus: &ClassifiedCorpus,
    ontology: &Ontology,
    glossary: &Glossary,
    lexicon: &Lexicon,
) -> SelectionOutcome {
    let patterns = concept_patterns(ontology, glossary, lexicon);
    let mut verdicts = Vec::new();
    let mut candidates = Vec::new();

    for doc in &corpus.documents {
        for (index, sentence) in doc.sentences.iter().enumerate() {
            let (verdict, candidate) = assess(
                sentence,
                &doc.doc_id,
                index,
                &doc.concept,
                corpus,
                &patterns,
                glossary,
                lexicon,
            );
            verdicts.push(verdict);
            candidates.extend(candidate);
        }
    }

    SelectionOutcome {
        verdicts,
        candidates: CandidateSet {
            corpus_checksum: corpus.checksum(),
            candidates,
        },
    }
}

struct ConceptPatterns {
    concept: ConceptId,
    /// Lemmatized word sequences for the title and each alias.
    patterns: Vec<Vec<String>>,
    /// Glossary lemma of the title itself, when the title is a glossary
    /// term; such a term never counts as a key term of its own concept.
    title_lemma: Option<String>,
}

fn concept_patterns(
    ontology: &Ontology,
    glossary: &Glossary,
    lexicon: &Lexicon,
) -> Vec<ConceptPatterns> {
    ontology
        .concepts()
        .iter()
        .map(|c| ConceptPatterns {
            concept: c.id.clone(),
            patterns: std::iter::once(&c.title)
                .chain(c.aliases.iter())
                .map(|surface| lemma_words(surface, glossary, lexicon))
                .filter(|words| !words.is_empty())
                .collect(),
            title_lemma: glossary.lookup_term(&c.title).map(|e| e.lemma.clone()),
        })
        .collect()
}

/// Splits on whitespace, hyphens, and slashes, lemmatizing each piece, so
/// "Black-box testing" and "black box testing" compare equal.
fn lemma_words(surface: &str, glossary: &Glossary, lexicon: &Lexicon) -> Vec<String> {
    surface
        .split(|c: char| c.is_whitespace() || c == '-' || c == '/')
        .filter(|w| !w.is_empty())
        .map(|w| lemmatize(w, glossary, lexicon))
        .collect()
}

/// Word boundary marker that no lemmatized word can equal; punctuation
/// tokens become one of these so a title match cannot span a comma.
const BREAK: &str = "\0";

#[allow(clippy::too_many_arguments)]
fn assess(
    sentence: &str,
    doc_id: &str,
    index: usize,
    doc_concept: &ConceptId,
    corpus: &ClassifiedCorpus,
    patterns: &[ConceptPatterns],
    glossary: &Glossary,
    lexicon: &Lexicon,
) -> (SelectionVerdict, Option<CandidateSentence>) {
    let tagged = TaggedSentence::annotate(sentence, doc_id, doc_concept, glossary, lexicon);

    let reject_all = |concept: Option<ConceptId>, key_terms: Vec<String>| SelectionVerdict {
        doc_id: doc_id.to_string(),
        index,
        c1: false,
        c2: false,
        c3: false,
        c4: false,
        accepted: false,
        concept,
        key_terms,
    };

    if tagged.word_count() < 4 {
        return (reject_all(None, Vec::new()), None);
    }

    let sentence_words: Vec<String> = tagged
        .tokens
        .iter()
        .flat_map(|t| {
            if t.is_word() {
                lemma_words(&t.surface, glossary, lexicon)
            } else {
                vec![BREAK.to_string()]
            }
        })
        .collect();

    let matched = match_concept(&sentence_words, doc_concept, patterns);
    let c1 = matched.is_some();

    let (concept, key_terms) = match matched {
        Some(m) => {
            let mut seen = Vec::new();
            for token in tagged.tokens.iter().filter(|t| t.is_glossary_term) {
                if Some(&token.lemma) == m.title_lemma.as_ref() {
                    continue;
                }
                if corpus.characterizes(&token.lemma, &m.concept)
                    && !seen.iter().any(|k: &KeyTerm| k.lemma == token.lemma)
                {
                    seen.push(KeyTerm {
                        lemma: token.lemma.clone(),
                        token_index: tagged
                            .tokens
                            .iter()
                            .position(|t| t.lemma == token.lemma && t.is_glossary_term)
                            .expect("token exists"),
                    });
                }
            }
            (Some(m.concept.clone()), seen)
        }
        None => (None, Vec::new()),
    };
    let c2 = !key_terms.is_empty();

    let clause = analyze_clause(&tagged.tokens, lexicon);
    let c3 = !clause.starts_with_subordinator;
    let c4 = clause.is_declarative && !clause.starts_with_adverb;
    let accepted = c1 && c2 && c3 && c4;

    let verdict = SelectionVerdict {
        doc_id: doc_id.to_string(),
        index,
        c1,
        c2,
        c3,
        c4,
        accepted,
        concept: concept.clone(),
        key_terms: key_terms.iter().map(|k| k.lemma.clone()).collect(),
    };

    let candidate = accepted.then(|| CandidateSentence {
        doc_id: doc_id.to_string(),
        index,
        sentence: sentence.to_string(),
        concept: concept.expect("accepted implies a concept"),
        key_terms,
    });

    (verdict, candidate)
}

/// Which concept the sentence names. The document's own concept wins when
/// its title or alias appears; otherwise the longest match (word count,
/// then bytes) wins, and equal lengths fall back to the smaller concept id.
fn match_concept<'p>(
    sentence_words: &[String],
    doc_concept: &ConceptId,
    patterns: &'p [ConceptPatterns],
) -> Option<&'p ConceptPatterns> {
    let mut best: Option<(&ConceptPatterns, usize, usize)> = None;

    for cp in patterns {
        let matched = cp
            .patterns
            .iter()
            .filter(|p| contains_run(sentence_words, p))
            .map(|p| (p.len(), p.iter().map(String::len).sum::<usize>()))
            .max();
        let Some((words, bytes)) = matched else {
            continue;
        };
        if cp.concept == *doc_concept {
            return Some(cp);
        }
        let better = match best {
            None => true,
            Some((b, bw, bb)) => {
                (words, bytes) > (bw, bb)
                    || ((words, bytes) == (bw, bb) && cp.concept < b.concept)
            }
        };
        if better {
            best = Some((cp, words, bytes));
        }
    }

    best.map(|(cp, _, _)| cp)
}

fn contains_run(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty()
        && haystack
            .windows(needle.len())
            .any(|window| window == needle)
}

impl SelectionOutcome {
    /// Writes the verdicts as JSON lines under a header that pins the
    /// corpus checksum.
    pub fn save_verdicts(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        let header = VerdictsHeader {
            format_version: VERDICTS_FORMAT_VERSION,
            corpus_checksum: self.candidates.corpus_checksum.clone(),
        };
        writeln!(out, "{}", serde_json::to_string(&header).expect("header")).expect("string write");
        for verdict in &self.verdicts {
            writeln!(out, "{}", serde_json::to_string(verdict).expect("verdict"))
                .expect("string write");
        }
        fs::write(path, out).map_err(|source| Error::Write {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Reads a verdicts file back: the corpus checksum from the header and one
/// verdict per line.
pub fn load_verdicts(path: &Path) -> Result<(String, Vec<SelectionVerdict>)> {
    let text = fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let parse_err = |e: serde_json::Error| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    };

    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header_line = lines.next().ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        message: "empty verdicts file".into(),
    })?;
    let header: VerdictsHeader = serde_json::from_str(header_line).map_err(parse_err)?;
    if header.format_version != VERDICTS_FORMAT_VERSION {
        return Err(Error::FormatVersion {
            path: path.to_path_buf(),
            found: header.format_version,
            expected: VERDICTS_FORMAT_VERSION,
        });
    }

    let mut verdicts = Vec::new();
    for line in lines {
        verdicts.push(serde_json::from_str(line).map_err(parse_err)?);
    }
    Ok((header.corpus_checksum, verdicts))
}

impl CandidateSet {
    /// Rebuilds candidates from a corpus and previously saved verdicts,
    /// recomputing token positions for each key term. The stored checksum
    /// must match the corpus.
    pub fn rehydrate(
        corpus: &ClassifiedCorpus,
        corpus_checksum: &str,
        verdicts: &[SelectionVerdict],
        glossary: &Glossary,
        lexicon: &Lexicon,
    ) -> Result<CandidateSet> {
        let expected = corpus.checksum();
        if corpus_checksum != expected {
            return Err(Error::ProvenanceMismatch {
                expected,
                found: corpus_checksum.to_string(),
            });
        }

        let mut candidates = Vec::new();
        for verdict in verdicts.iter().filter(|v| v.accepted) {
            let doc = corpus
                .documents
                .iter()
                .find(|d| d.doc_id == verdict.doc_id)
                .ok_or_else(|| {
                    Error::Config(format!(
                        "verdict references unknown document `{}`",
                        verdict.doc_id
                    ))
                })?;
            let sentence = doc.sentences.get(verdict.index).ok_or_else(|| {
                Error::Config(format!(
                    "verdict references sentence {} of `{}`, which has {}",
                    verdict.index,
                    verdict.doc_id,
                    doc.sentences.len()
                ))
            })?;
            let concept = verdict.concept.clone().ok_or_else(|| {
                Error::Config(format!(
                    "accepted verdict for `{}` sentence {} lacks a concept",
                    verdict.doc_id, verdict.index
                ))
            })?;

            let tagged =
                TaggedSentence::annotate(sentence, &verdict.doc_id, &concept, glossary, lexicon);
            let mut key_terms = Vec::new();
            for lemma in &verdict.key_terms {
                let token_index = tagged
                    .tokens
                    .iter()
                    .position(|t| t.is_glossary_term && &t.lemma == lemma)
                    .ok_or_else(|| Error::KeyTermNotInSentence {
                        lemma: lemma.clone(),
                    })?;
                key_terms.push(KeyTerm {
                    lemma: lemma.clone(),
                    token_index,
                });
            }
            candidates.push(CandidateSentence {
                doc_id: verdict.doc_id.clone(),
                index: verdict.index,
                sentence: sentence.clone(),
                concept,
                key_terms,
            });
        }

        Ok(CandidateSet {
            corpus_checksum: expected,
            candidates,
        })
    }
}
