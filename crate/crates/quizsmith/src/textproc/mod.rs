//! Rule-based text processing: sentence splitting, glossary-aware
//! tokenization, suffix lemmatization, part-of-speech tagging, clause
//! analysis, and inflection of rendered choices.

mod clause;
mod inflect;
mod lemma;
mod lexicon;
mod sentence;
mod tag;
mod tokenize;

pub use clause::{analyze_clause, ClauseReport};
pub use inflect::{inflect, pluralize, singularize, GapContext};
pub use lemma::lemmatize;
pub use lexicon::Lexicon;
pub use sentence::split_sentences;
pub use tag::pos_tag;
pub use tokenize::tokenize;

use serde::{Deserialize, Serialize};

use crate::knowledge::{ConceptId, Glossary};

/// Part-of-speech tag assigned by the rule cascade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosTag {
    Noun,
    Pronoun,
    Verb,
    Adjective,
    Adverb,
    Preposition,
    Conjunction,
    Interjection,
    Determiner,
    Punctuation,
    Unknown,
}

/// Byte range of a token inside its source sentence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub tag: PosTag,
    pub is_glossary_term: bool,
    pub span: Span,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.tag != PosTag::Punctuation
    }
}

/// A fully processed sentence, tied to the document and concept it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaggedSentence {
    pub raw: String,
    pub tokens: Vec<Token>,
    pub source_doc: String,
    pub concept: ConceptId,
}

impl TaggedSentence {
    /// Tokenize, lemmatize, and tag a raw sentence in one pass.
    pub fn annotate(
        raw: &str,
        source_doc: &str,
        concept: &ConceptId,
        glossary: &Glossary,
        lexicon: &Lexicon,
    ) -> TaggedSentence {
        let tokens = pos_tag(tokenize(raw, glossary), glossary, lexicon);
        TaggedSentence {
            raw: raw.to_string(),
            tokens,
            source_doc: source_doc.to_string(),
            concept: concept.clone(),
        }
    }

    /// Number of non-punctuation tokens.
    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_word()).count()
    }
}
