use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type. Variants that describe malformed or inconsistent
/// input files map to exit code 2 on the command line; everything else maps
/// to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("duplicate concept id `{id}`")]
    DuplicateConceptId { id: String },

    #[error("concept `{id}` has an empty title")]
    EmptyConceptTitle { id: String },

    #[error("surface `{surface}` is claimed by both concept `{first}` and concept `{second}`")]
    ConceptSurfaceClash {
        surface: String,
        first: String,
        second: String,
    },

    #[error("relation {kind} {from} -> {to} references unknown concept `{missing}`")]
    DanglingRelation {
        kind: String,
        from: String,
        to: String,
        missing: String,
    },

    #[error("relation {from} -> {to} connects a concept to itself")]
    SelfRelation { from: String, to: String },

    #[error("generalization edges form a cycle through `{through}`")]
    GeneralizationCycle { through: String },

    #[error("declared root `{id}` is not in the concept list")]
    UnknownRoot { id: String },

    #[error("concept `{id}` is unreachable from root `{root}`")]
    DisconnectedConcept { id: String, root: String },

    #[error("unknown concept id `{id}`")]
    UnknownConcept { id: String },

    #[error("glossary entry has an empty lemma")]
    EmptyLemma,

    #[error("duplicate glossary lemma `{lemma}`")]
    DuplicateLemma { lemma: String },

    #[error("surface `{surface}` maps to both glossary lemma `{first}` and `{second}`")]
    AmbiguousSurface {
        surface: String,
        first: String,
        second: String,
    },

    #[error("document directory `{path}` is not named after a known concept")]
    UnknownConceptDirectory { path: PathBuf },

    #[error("tau must lie in (0.5, 1.0], got {tau}")]
    TauOutOfRange { tau: f64 },

    #[error("{path}: unsupported format version {found} (expected {expected})")]
    FormatVersion {
        path: PathBuf,
        found: u32,
        expected: u32,
    },

    #[error("candidate set was derived from a different corpus (expected checksum {expected}, found {found})")]
    ProvenanceMismatch { expected: String, found: String },

    #[error("sentence has no glossary token with lemma `{lemma}`")]
    KeyTermNotInSentence { lemma: String },

    #[error("`{lemma}` is not a glossary term")]
    KeyTermNotInGlossary { lemma: String },

    #[error("need at least 3 compatible terms to build a distractor set, got {available}")]
    TooFewCompatibleTerms { available: usize },

    #[error("inflection failed for `{lemma}` in its gap context")]
    InflectionFailed { lemma: String },

    #[error("series lengths differ: {left} vs {right}")]
    SeriesLengthMismatch { left: usize, right: usize },

    #[error("correlation needs at least 3 points, got {len}")]
    SeriesTooShort { len: usize },

    #[error("correlation is undefined for a constant series")]
    ConstantSeries,

    #[error("{0}")]
    Config(String),
}

impl Error {
    /// Process exit code for the CLI: 2 for malformed or inconsistent input,
    /// 3 for pipeline failures.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Read { .. }
            | Parse { .. }
            | DuplicateConceptId { .. }
            | EmptyConceptTitle { .. }
            | ConceptSurfaceClash { .. }
            | DanglingRelation { .. }
            | SelfRelation { .. }
            | GeneralizationCycle { .. }
            | UnknownRoot { .. }
            | DisconnectedConcept { .. }
            | EmptyLemma
            | DuplicateLemma { .. }
            | AmbiguousSurface { .. }
            | UnknownConceptDirectory { .. }
            | TauOutOfRange { .. }
            | FormatVersion { .. }
            | Config(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
