use crate::knowledge::GlossaryEntry;

use super::Lexicon;

/// What the sentence demands of the word that fills the gap: the word right
/// before the gap (article agreement) and whether the slot is plural.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GapContext {
    pub preceding: Option<String>,
    pub plural: bool,
}

/// Renders a glossary term into a gap, or reports that it cannot fit.
///
/// A term starting with a vowel sound cannot follow "a", and one starting
/// with a consonant sound cannot follow "an"; such candidates are rejected
/// outright instead of silently producing an ungrammatical choice. A plural
/// slot pluralizes the term's last word.
pub fn inflect(entry: &GlossaryEntry, context: &GapContext, lexicon: &Lexicon) -> Option<String> {
    if let Some(preceding) = &context.preceding {
        let article = preceding.to_ascii_lowercase();
        if article == "a" && entry.vowel_initial {
            return None;
        }
        if article == "an" && !entry.vowel_initial {
            return None;
        }
    }
    if context.plural {
        Some(pluralize(&entry.lemma, lexicon))
    } else {
        Some(entry.lemma.clone())
    }
}

/// Plural of a word or phrase; multi-word input pluralizes the last word.
pub fn pluralize(phrase: &str, lexicon: &Lexicon) -> String {
    apply_to_last_word(phrase, |word| {
        if let Some(plural) = lexicon.irregular_plural(word) {
            return plural.to_string();
        }
        if let Some(stem) = word.strip_suffix('y') {
            if stem
                .chars()
                .last()
                .map_or(false, |c| !matches!(c, 'a' | 'e' | 'i' | 'o' | 'u'))
            {
                return format!("{stem}ies");
            }
        }
        if word.ends_with('s')
            || word.ends_with('x')
            || word.ends_with('z')
            || word.ends_with("ch")
            || word.ends_with("sh")
        {
            return format!("{word}es");
        }
        format!("{word}s")
    })
}

/// Singular of a word or phrase; the inverse of [`pluralize`] for the
/// irregular table and for regularly pluralized nouns.
pub fn singularize(phrase: &str, lexicon: &Lexicon) -> String {
    apply_to_last_word(phrase, |word| {
        if let Some(singular) = lexicon.irregular_singular(word) {
            return singular.to_string();
        }
        if let Some(stem) = word.strip_suffix("ies") {
            if !stem.is_empty() {
                return format!("{stem}y");
            }
        }
        if let Some(stem) = word.strip_suffix('s') {
            if stem.is_empty() || word.ends_with("ss") {
                return word.to_string();
            }
            if lexicon.is_known_base(stem) {
                return stem.to_string();
            }
            if let Some(es_stem) = word.strip_suffix("es") {
                if es_stem.ends_with('s')
                    || es_stem.ends_with('x')
                    || es_stem.ends_with('z')
                    || es_stem.ends_with("ch")
                    || es_stem.ends_with("sh")
                {
                    return es_stem.to_string();
                }
            }
            return stem.to_string();
        }
        word.to_string()
    })
}

fn apply_to_last_word(phrase: &str, f: impl FnOnce(&str) -> String) -> String {
    match phrase.rsplit_once(' ') {
        Some((prefix, last)) => format!("{prefix} {}", f(last)),
        None => f(phrase),
    }
}
