use super::{Lexicon, PosTag, Token};

const WH_WORDS: [&str; 9] = [
    "what", "which", "who", "whom", "whose", "when", "where", "why", "how",
];

/// Structural facts about a sentence that the selection criteria and the
/// gap-context analysis read off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseReport {
    /// The first word is tagged as an adverb.
    pub starts_with_adverb: bool,
    /// The sentence opens with a subordinating word or two-word phrase
    /// ("however", "in addition", ...), so it leans on a previous sentence.
    pub starts_with_subordinator: bool,
    /// Question mark, leading auxiliary, or leading wh-word.
    pub interrogative: bool,
    /// Index of the first noun or pronoun token.
    pub subject_index: Option<usize>,
    /// Index of the first finite verb after the subject. Bare `-ing` forms
    /// do not count, so "testers preparing stubs write drivers" finds
    /// "write".
    pub verb_index: Option<usize>,
    /// Not a question, and both a subject and a finite verb were found.
    pub is_declarative: bool,
    /// Number of the verb at `verb_index`: `are`/`were`/`have` are plural,
    /// anything else is plural exactly when it does not end in `s`.
    pub verb_is_plural: Option<bool>,
}

/// Reads clause-level structure from a tagged token sequence.
pub fn analyze_clause(tokens: &[Token], lexicon: &Lexicon) -> ClauseReport {
    let words: Vec<(usize, &Token)> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_word())
        .collect();

    let starts_with_adverb = words
        .first()
        .map_or(false, |(_, t)| t.tag == PosTag::Adverb);

    let first_word = words.first().map(|(_, t)| t.surface.to_ascii_lowercase());
    let second_word = words.get(1).map(|(_, t)| t.surface.to_ascii_lowercase());
    let starts_with_subordinator = match (&first_word, &second_word) {
        (Some(w1), Some(w2)) if lexicon.is_subordinator(&format!("{w1} {w2}")) => true,
        (Some(w1), _) => lexicon.is_subordinator(w1),
        _ => false,
    };

    let ends_with_question_mark = tokens.last().map_or(false, |t| t.surface == "?");
    let opens_like_a_question = first_word.as_deref().map_or(false, |w| {
        lexicon.is_auxiliary(w) || WH_WORDS.contains(&w)
    });
    let interrogative = ends_with_question_mark || opens_like_a_question;

    let subject_index = tokens
        .iter()
        .position(|t| matches!(t.tag, PosTag::Noun | PosTag::Pronoun));

    let verb_index = subject_index.and_then(|s| {
        tokens
            .iter()
            .enumerate()
            .skip(s + 1)
            .find(|(_, t)| t.tag == PosTag::Verb && !t.surface.to_ascii_lowercase().ends_with("ing"))
            .map(|(i, _)| i)
    });

    let is_declarative = !interrogative && subject_index.is_some() && verb_index.is_some();

    let verb_is_plural = verb_index.map(|i| {
        let surface = tokens[i].surface.to_ascii_lowercase();
        matches!(surface.as_str(), "are" | "were" | "have") || !surface.ends_with('s')
    });

    ClauseReport {
        starts_with_adverb,
        starts_with_subordinator,
        interrogative,
        subject_index,
        verb_index,
        is_declarative,
        verb_is_plural,
    }
}
