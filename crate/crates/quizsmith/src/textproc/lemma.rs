use crate::knowledge::Glossary;

use super::Lexicon;

/// Reduces a surface form to its base form.
///
/// Resolution order, repeated until the word stops changing:
/// 1. glossary lookup over lemmas and variants (returns the entry lemma),
/// 2. the irregular-form table (verb forms plus irregular noun plurals),
/// 3. words the lexicon already lists as base forms are returned as-is,
/// 4. suffix rules for `-ies`, `-es`, `-s`, `-ing`, and `-ed`, with stem
///    repair (undoubling, restoring a dropped `e`, `i`→`y`).
///
/// Multi-word input that is not itself a glossary surface keeps its leading
/// words and lemmatizes only the last one, so "black boxes" becomes
/// "black box". Output is always lowercase with single internal spaces.
/// The loop structure makes the function idempotent: feeding a result back
/// in returns it unchanged.
pub fn lemmatize(surface: &str, glossary: &Glossary, lexicon: &Lexicon) -> String {
    let normalized = surface
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_ascii_lowercase();
    if normalized.is_empty() {
        return normalized;
    }
    if let Some(entry) = glossary.lookup_term(&normalized) {
        return entry.lemma.clone();
    }
    match normalized.rsplit_once(' ') {
        Some((prefix, last)) => {
            format!("{prefix} {}", lemmatize_word(last, glossary, lexicon))
        }
        None => lemmatize_word(&normalized, glossary, lexicon),
    }
}

fn lemmatize_word(word: &str, glossary: &Glossary, lexicon: &Lexicon) -> String {
    let mut current = word.to_string();
    loop {
        if let Some(entry) = glossary.lookup_term(&current) {
            return entry.lemma.clone();
        }
        if let Some(lemma) = lexicon.irregular_lemma(&current) {
            if lemma == current {
                // Identity rows ("read", "set", "series") stop here rather
                // than looping.
                return current;
            }
            current = lemma.to_string();
            continue;
        }
        if lexicon.is_known_base(&current) {
            return current;
        }
        match apply_suffix_rule(&current, lexicon) {
            Some(next) if next != current => current = next,
            _ => return current,
        }
    }
}

fn apply_suffix_rule(word: &str, lexicon: &Lexicon) -> Option<String> {
    let n = word.len();

    if let Some(stem) = word.strip_suffix("ies") {
        if n >= 5 {
            return Some(format!("{stem}y"));
        }
    }

    if let Some(es_stem) = word.strip_suffix("es") {
        if n >= 4 {
            // Prefer dropping just the final `s` when that lands on a listed
            // base ("responses" → "response"); otherwise strip `es` after a
            // sibilant ("boxes" → "box", "classes" → "class").
            let s_stripped = &word[..n - 1];
            if lexicon.is_known_base(s_stripped) {
                return Some(s_stripped.to_string());
            }
            if ends_in_sibilant(es_stem) {
                return Some(es_stem.to_string());
            }
        }
    }

    if let Some(stem) = word.strip_suffix('s') {
        if n >= 4 && !word.ends_with("ss") && !word.ends_with("us") && !word.ends_with("is") {
            return Some(stem.to_string());
        }
    }

    if let Some(stem) = word.strip_suffix("ing") {
        if n >= 5 {
            return repair_stem(stem, false, lexicon).or_else(|| Some(word.to_string()));
        }
    }

    if let Some(stem) = word.strip_suffix("ed") {
        if n >= 4 {
            return repair_stem(stem, true, lexicon).or_else(|| Some(word.to_string()));
        }
    }

    None
}

/// Turns the remainder left after stripping `-ing`/`-ed` back into a base
/// form. Lexicon-confirmed repairs are tried first; blind heuristics only
/// apply when nothing is listed. Returns `None` when the stem is too short
/// to be a word, which leaves the original surface untouched.
fn repair_stem(stem: &str, i_to_y: bool, lexicon: &Lexicon) -> Option<String> {
    if stem.len() >= 3 && lexicon.is_known_base(stem) {
        return Some(stem.to_string());
    }
    if let Some(undoubled) = undouble(stem, false) {
        if lexicon.is_known_base(&undoubled) {
            return Some(undoubled);
        }
    }
    let with_e = format!("{stem}e");
    if lexicon.is_known_base(&with_e) {
        return Some(with_e);
    }
    if i_to_y {
        if let Some(prefix) = stem.strip_suffix('i') {
            return Some(format!("{prefix}y"));
        }
    }
    if let Some(undoubled) = undouble(stem, true) {
        return Some(undoubled);
    }
    if stem.len() >= 3 {
        return Some(stem.to_string());
    }
    None
}

/// Removes a doubled final consonant ("plann" → "plan"). In blind mode the
/// letters l, s, and z stay doubled because words legitimately end in them
/// ("tell", "press", "buzz"); when a lexicon check follows, any doubled
/// consonant may be tried.
fn undouble(stem: &str, blind: bool) -> Option<String> {
    let bytes = stem.as_bytes();
    let n = bytes.len();
    if n < 2 || bytes[n - 1] != bytes[n - 2] {
        return None;
    }
    let c = bytes[n - 1] as char;
    if !c.is_ascii_alphabetic() || matches!(c, 'a' | 'e' | 'i' | 'o' | 'u') {
        return None;
    }
    if blind && matches!(c, 'l' | 's' | 'z') {
        return None;
    }
    Some(stem[..n - 1].to_string())
}

fn ends_in_sibilant(stem: &str) -> bool {
    stem.ends_with('s')
        || stem.ends_with('x')
        || stem.ends_with('z')
        || stem.ends_with("ch")
        || stem.ends_with("sh")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knowledge::{GlossaryEntry, GlossaryOptions, SemanticClass};
    use crate::textproc::PosTag;
    use proptest::prelude::*;

    fn glossary() -> Glossary {
        Glossary::from_entries(
            vec![GlossaryEntry {
                lemma: "test suite".into(),
                variants: vec!["test suites".into()],
                pos: PosTag::Noun,
                semantic_class: SemanticClass::Thought,
                vowel_initial: false,
            }],
            &GlossaryOptions::default(),
        )
        .unwrap()
    }

    fn lemma(s: &str) -> String {
        lemmatize(s, &glossary(), Lexicon::bundled())
    }

    #[test]
    fn regular_verb_forms_reduce_to_the_base() {
        assert_eq!(lemma("walking"), "walk");
        assert_eq!(lemma("walked"), "walk");
        assert_eq!(lemma("testing"), "test");
        assert_eq!(lemma("tested"), "test");
    }

    #[test]
    fn irregular_verb_forms_use_the_table() {
        assert_eq!(lemma("is"), "be");
        assert_eq!(lemma("was"), "be");
        assert_eq!(lemma("are"), "be");
        assert_eq!(lemma("chosen"), "choose");
        assert_eq!(lemma("has"), "have");
    }

    #[test]
    fn identity_rows_do_not_loop() {
        assert_eq!(lemma("read"), "read");
        assert_eq!(lemma("set"), "set");
        assert_eq!(lemma("series"), "series");
    }

    #[test]
    fn noun_plurals_reduce_to_singular() {
        assert_eq!(lemma("inputs"), "input");
        assert_eq!(lemma("boxes"), "box");
        assert_eq!(lemma("classes"), "class");
        assert_eq!(lemma("branches"), "branch");
        assert_eq!(lemma("studies"), "study");
        assert_eq!(lemma("children"), "child");
        assert_eq!(lemma("analyses"), "analysis");
    }

    #[test]
    fn final_s_words_survive() {
        assert_eq!(lemma("class"), "class");
        assert_eq!(lemma("analysis"), "analysis");
        assert_eq!(lemma("status"), "status");
    }

    #[test]
    fn dropped_e_is_restored_from_the_lexicon() {
        assert_eq!(lemma("writing"), "write");
        assert_eq!(lemma("used"), "use");
        assert_eq!(lemma("derived"), "derive");
        assert_eq!(lemma("produced"), "produce");
    }

    #[test]
    fn doubled_consonants_are_undoubled() {
        assert_eq!(lemma("planning"), "plan");
        assert_eq!(lemma("mapped"), "map");
    }

    #[test]
    fn final_i_becomes_y_after_ed() {
        assert_eq!(lemma("applied"), "apply");
        assert_eq!(lemma("studied"), "study");
    }

    #[test]
    fn glossary_variants_win_over_suffix_rules() {
        assert_eq!(lemma("test suites"), "test suite");
        assert_eq!(lemma("Test Suites"), "test suite");
    }

    #[test]
    fn multi_word_input_lemmatizes_the_last_word() {
        assert_eq!(lemma("black boxes"), "black box");
        assert_eq!(lemma("boundary values"), "boundary value");
    }

    #[test]
    fn output_is_normalized() {
        assert_eq!(lemma("  Boundary   Values "), "boundary value");
        assert_eq!(lemma(""), "");
    }

    #[test]
    fn short_words_are_left_alone() {
        assert_eq!(lemma("as"), "as");
        assert_eq!(lemma("its"), "its");
        assert_eq!(lemma("sing"), "sing");
    }

    proptest! {
        #[test]
        fn lemmatize_is_idempotent(word in "[a-z]{1,12}") {
            let g = glossary();
            let lex = Lexicon::bundled();
            let once = lemmatize(&word, &g, lex);
            let twice = lemmatize(&once, &g, lex);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn lemmatize_is_idempotent_on_suffixed_words(
            stem in "[a-z]{2,8}",
            suffix in prop::sample::select(vec!["s", "es", "ies", "ing", "ed"]),
        ) {
            let g = glossary();
            let lex = Lexicon::bundled();
            let word = format!("{stem}{suffix}");
            let once = lemmatize(&word, &g, lex);
            let twice = lemmatize(&once, &g, lex);
            prop_assert_eq!(once, twice);
        }
    }
}
