//! Corpus ingestion and technical-term classification.
//!
//! Documents live in one subdirectory per concept (`docs/BBT/intro.txt`
//! becomes document `BBT/intro` tagged with concept `BBT`). Ingestion splits
//! each file into sentences; classification then counts every glossary-term
//! occurrence per concept and sorts each term into one of three classes:
//! `unique` (appears under a single concept), `frequent` (dominated by one
//! concept at share ≥ τ), or `common` (spread across concepts).

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::knowledge::{ConceptId, Glossary, Ontology};
use crate::textproc::{split_sentences, Lexicon, TaggedSentence};

pub const CORPUS_FORMAT_VERSION: u32 = 1;

/// One ingested document: its id (`concept/stem`), owning concept, and
/// sentences in reading order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub doc_id: String,
    pub concept: ConceptId,
    pub sentences: Vec<String>,
}

/// Where a term shows up: occurrence and document counts per concept.
/// Concepts where the term never appears carry no entry.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TermStats {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub occurrences: BTreeMap<ConceptId, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub documents: BTreeMap<ConceptId, usize>,
}

impl TermStats {
    pub fn total_occurrences(&self) -> usize {
        self.occurrences.values().sum()
    }

    pub fn occurrences_in(&self, concept: &ConceptId) -> usize {
        self.occurrences.get(concept).copied().unwrap_or(0)
    }
}

/// Classification of a technical term by how its occurrences distribute
/// over concepts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum TermClass {
    /// All occurrences fall under one concept.
    Unique { concept: ConceptId },
    /// At least two concepts, but one holds a share of at least τ.
    Frequent { concept: ConceptId },
    /// Spread out with no dominating concept.
    Common,
}

impl TermClass {
    /// The concept a unique or frequent term characterizes.
    pub fn concept(&self) -> Option<&ConceptId> {
        match self {
            TermClass::Unique { concept } | TermClass::Frequent { concept } => Some(concept),
            TermClass::Common => None,
        }
    }

    /// True when the term characterizes `concept` (unique to it or frequent
    /// in it).
    pub fn characterizes(&self, concept: &ConceptId) -> bool {
        self.concept() == Some(concept)
    }
}

/// What ingestion saw: totals plus warnings for files it had to skip.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IngestReport {
    pub documents: usize,
    pub sentences: usize,
    pub skipped: Vec<String>,
}

/// Sizes of a two-concept term Venn diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VennCounts {
    pub only_a: usize,
    pub only_b: usize,
    pub shared: usize,
}

/// The classified corpus: documents, per-term statistics, and term classes,
/// all under the τ threshold used to compute them.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedCorpus {
    pub tau: f64,
    pub concepts: Vec<ConceptId>,
    pub documents: Vec<DocumentRecord>,
    pub stats: BTreeMap<String, TermStats>,
    pub classes: BTreeMap<String, TermClass>,
}

#[derive(Serialize)]
struct CorpusFileRef<'a> {
    format_version: u32,
    tau: f64,
    concepts: &'a [ConceptId],
    documents: &'a [DocumentRecord],
    stats: &'a BTreeMap<String, TermStats>,
    classes: &'a BTreeMap<String, TermClass>,
}

#[derive(Deserialize)]
struct CorpusFile {
    format_version: u32,
    tau: f64,
    concepts: Vec<ConceptId>,
    documents: Vec<DocumentRecord>,
    stats: BTreeMap<String, TermStats>,
    classes: BTreeMap<String, TermClass>,
}

/// Reads every `*.txt` under one subdirectory per concept. Subdirectory
/// names must be concept ids; directories and files are visited in sorted
/// order so ingestion is deterministic. Unreadable files are skipped and
/// reported rather than aborting the run.
pub fn ingest(
    docs_dir: &Path,
    ontology: &Ontology,
    lexicon: &Lexicon,
) -> Result<(Vec<DocumentRecord>, IngestReport)> {
    let mut concept_dirs = Vec::new();
    for entry in read_dir_sorted(docs_dir)? {
        if entry.is_dir() {
            concept_dirs.push(entry);
        }
    }

    let mut documents = Vec::new();
    let mut report = IngestReport::default();

    for dir in concept_dirs {
        let name = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let concept = ConceptId::from(name.as_str());
        if !ontology.contains(&concept) {
            return Err(Error::UnknownConceptDirectory { path: dir });
        }

        for file in read_dir_sorted(&dir)? {
            if file.extension().map_or(true, |e| e != "txt") || !file.is_file() {
                continue;
            }
            let text = match fs::read_to_string(&file) {
                Ok(text) => text,
                Err(e) => {
                    report.skipped.push(format!("{}: {e}", file.display()));
                    continue;
                }
            };
            let stem = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let sentences = split_sentences(&text, lexicon);
            report.documents += 1;
            report.sentences += sentences.len();
            documents.push(DocumentRecord {
                doc_id: format!("{name}/{stem}"),
                concept: concept.clone(),
                sentences,
            });
        }
    }

    Ok((documents, report))
}

fn read_dir_sorted(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|source| Error::Read {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|source| Error::Read {
            path: dir.to_path_buf(),
            source,
        })?;
        paths.push(entry.path());
    }
    paths.sort();
    Ok(paths)
}

/// Counts glossary-term occurrences in the given documents and classifies
/// every term that appears. `tau` is the frequent-class dominance threshold
/// and must lie in (0.5, 1.0] so at most one concept can dominate.
pub fn classify(
    documents: Vec<DocumentRecord>,
    ontology: &Ontology,
    glossary: &Glossary,
    lexicon: &Lexicon,
    tau: f64,
) -> Result<ClassifiedCorpus> {
    if !(tau > 0.5 && tau <= 1.0) {
        return Err(Error::TauOutOfRange { tau });
    }

    let mut stats: BTreeMap<String, TermStats> = BTreeMap::new();
    for doc in &documents {
        let mut lemmas_in_doc: BTreeSet<String> = BTreeSet::new();
        for sentence in &doc.sentences {
            let tagged =
                TaggedSentence::annotate(sentence, &doc.doc_id, &doc.concept, glossary, lexicon);
            for token in tagged.tokens.iter().filter(|t| t.is_glossary_term) {
                *stats
                    .entry(token.lemma.clone())
                    .or_default()
                    .occurrences
                    .entry(doc.concept.clone())
                    .or_insert(0) += 1;
                lemmas_in_doc.insert(token.lemma.clone());
            }
        }
        for lemma in lemmas_in_doc {
            *stats
                .get_mut(&lemma)
                .expect("lemma was just counted")
                .documents
                .entry(doc.concept.clone())
                .or_insert(0) += 1;
        }
    }

    let classes = stats
        .iter()
        .map(|(lemma, term_stats)| (lemma.clone(), classify_term(term_stats, tau)))
        .collect();

    Ok(ClassifiedCorpus {
        tau,
        concepts: ontology.concepts().iter().map(|c| c.id.clone()).collect(),
        documents,
        stats,
        classes,
    })
}

fn classify_term(stats: &TermStats, tau: f64) -> TermClass {
    let mut best: Option<(&ConceptId, usize)> = None;
    for (concept, &count) in &stats.occurrences {
        // Strict comparison keeps the smallest concept id on equal counts,
        // since the map iterates in id order.
        if best.map_or(true, |(_, c)| count > c) {
            best = Some((concept, count));
        }
    }
    let (concept, count) = best.expect("classified terms have at least one occurrence");

    if stats.occurrences.len() == 1 {
        return TermClass::Unique {
            concept: concept.clone(),
        };
    }
    if count as f64 / stats.total_occurrences() as f64 >= tau {
        return TermClass::Frequent {
            concept: concept.clone(),
        };
    }
    TermClass::Common
}

impl ClassifiedCorpus {
    /// The exact bytes [`save`](Self::save) writes; also the checksum input.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let file = CorpusFileRef {
            format_version: CORPUS_FORMAT_VERSION,
            tau: self.tau,
            concepts: &self.concepts,
            documents: &self.documents,
            stats: &self.stats,
            classes: &self.classes,
        };
        let mut bytes = serde_json::to_vec_pretty(&file).expect("corpus serializes to JSON");
        bytes.push(b'\n');
        bytes
    }

    /// Hex SHA-256 of the canonical serialization. Downstream files carry
    /// this value so stale derivations are detected.
    pub fn checksum(&self) -> String {
        let digest = Sha256::digest(self.canonical_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.canonical_bytes()).map_err(|source| Error::Write {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<ClassifiedCorpus> {
        let bytes = fs::read(path).map_err(|source| Error::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let file: CorpusFile = serde_json::from_slice(&bytes).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if file.format_version != CORPUS_FORMAT_VERSION {
            return Err(Error::FormatVersion {
                path: path.to_path_buf(),
                found: file.format_version,
                expected: CORPUS_FORMAT_VERSION,
            });
        }
        Ok(ClassifiedCorpus {
            tau: file.tau,
            concepts: file.concepts,
            documents: file.documents,
            stats: file.stats,
            classes: file.classes,
        })
    }

    pub fn class_of(&self, lemma: &str) -> Option<&TermClass> {
        self.classes.get(lemma)
    }

    /// True when `lemma` is classified as unique to or frequent in `concept`.
    pub fn characterizes(&self, lemma: &str, concept: &ConceptId) -> bool {
        self.class_of(lemma).map_or(false, |c| c.characterizes(concept))
    }

    /// Term-sharing counts between two concepts: terms characterizing only
    /// one side, and common terms occurring on both sides.
    pub fn overlap_counts(&self, a: &ConceptId, b: &ConceptId) -> VennCounts {
        let mut counts = VennCounts {
            only_a: 0,
            only_b: 0,
            shared: 0,
        };
        for (lemma, class) in &self.classes {
            match class {
                TermClass::Unique { concept } | TermClass::Frequent { concept } => {
                    if concept == a {
                        counts.only_a += 1;
                    } else if concept == b {
                        counts.only_b += 1;
                    }
                }
                TermClass::Common => {
                    let stats = &self.stats[lemma];
                    if stats.occurrences_in(a) > 0 && stats.occurrences_in(b) > 0 {
                        counts.shared += 1;
                    }
                }
            }
        }
        counts
    }
}
