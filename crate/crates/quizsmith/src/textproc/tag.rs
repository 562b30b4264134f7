use crate::knowledge::Glossary;

use super::{lemmatize, Lexicon, PosTag, Token};

/// Assigns a part-of-speech tag to every token and fills in lemmas for
/// non-glossary words.
///
/// The cascade per token: pure punctuation keeps a punctuation tag; glossary
/// tokens take the tag recorded on their entry; everything else is looked up
/// in the closed-class list, then the open-class list by surface and by
/// lemma, and finally falls through to suffix heuristics (`-ly` adverbs,
/// `-ing`/`-ed` verbs right after an auxiliary, `-tion`/`-ment`/`-ness`
/// nouns) with noun as the default. The auxiliary look-back skips adverbs so
/// "is usually passing" still tags "passing" as a verb.
pub fn pos_tag(tokens: Vec<Token>, glossary: &Glossary, lexicon: &Lexicon) -> Vec<Token> {
    let mut out: Vec<Token> = Vec::with_capacity(tokens.len());

    for mut token in tokens {
        if !token.surface.chars().any(char::is_alphanumeric) {
            token.tag = PosTag::Punctuation;
            out.push(token);
            continue;
        }

        if token.is_glossary_term {
            token.tag = glossary
                .lookup_term(&token.lemma)
                .map(|e| e.pos)
                .unwrap_or(PosTag::Noun);
            out.push(token);
            continue;
        }

        let lowered = token.surface.to_ascii_lowercase();
        token.lemma = lemmatize(&lowered, glossary, lexicon);

        token.tag = lexicon
            .closed_class_tag(&lowered)
            .or_else(|| lexicon.open_class_tag(&lowered))
            .or_else(|| lexicon.open_class_tag(&token.lemma))
            .unwrap_or_else(|| heuristic_tag(&lowered, &out, lexicon));

        out.push(token);
    }

    out
}

fn heuristic_tag(lowered: &str, previous: &[Token], lexicon: &Lexicon) -> PosTag {
    if lowered.ends_with("ly") {
        return PosTag::Adverb;
    }
    if (lowered.ends_with("ing") || lowered.ends_with("ed")) && follows_auxiliary(previous, lexicon)
    {
        return PosTag::Verb;
    }
    if lowered.ends_with("tion") || lowered.ends_with("ment") || lowered.ends_with("ness") {
        return PosTag::Noun;
    }
    PosTag::Noun
}

/// True when the nearest preceding non-adverb token is an auxiliary verb.
fn follows_auxiliary(previous: &[Token], lexicon: &Lexicon) -> bool {
    previous
        .iter()
        .rev()
        .find(|t| t.tag != PosTag::Adverb)
        .map_or(false, |t| {
            t.tag == PosTag::Verb && lexicon.is_auxiliary(&t.surface.to_ascii_lowercase())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knowledge::{GlossaryEntry, GlossaryOptions, SemanticClass};
    use crate::textproc::tokenize;

    fn glossary() -> Glossary {
        Glossary::from_entries(
            vec![GlossaryEntry {
                lemma: "defect".into(),
                variants: vec!["defects".into()],
                pos: PosTag::Noun,
                semantic_class: SemanticClass::Object,
                vowel_initial: false,
            }],
            &GlossaryOptions::default(),
        )
        .unwrap()
    }

    fn tag_all(raw: &str) -> Vec<(String, PosTag)> {
        let g = glossary();
        pos_tag(tokenize(raw, &g), &g, Lexicon::bundled())
            .into_iter()
            .map(|t| (t.surface, t.tag))
            .collect()
    }

    fn tags(raw: &str) -> Vec<PosTag> {
        tag_all(raw).into_iter().map(|(_, t)| t).collect()
    }

    #[test]
    fn closed_class_words_use_the_list() {
        assert_eq!(
            tags("However, the system works"),
            vec![
                PosTag::Conjunction,
                PosTag::Punctuation,
                PosTag::Determiner,
                PosTag::Noun,
                PosTag::Verb,
            ]
        );
    }

    #[test]
    fn ly_suffix_marks_adverbs() {
        let tagged = tag_all("Reportedly the build failed");
        assert_eq!(tagged[0].1, PosTag::Adverb);
    }

    #[test]
    fn glossary_tokens_take_the_entry_tag() {
        let tagged = tag_all("Each defect matters");
        assert_eq!(tagged[1], ("defect".into(), PosTag::Noun));
    }

    #[test]
    fn participle_after_auxiliary_is_a_verb() {
        let tagged = tag_all("My father is kerfuffling to London");
        assert_eq!(tagged[3], ("kerfuffling".into(), PosTag::Verb));
    }

    #[test]
    fn auxiliary_lookback_skips_adverbs() {
        let tagged = tag_all("The build was not frobbed");
        assert_eq!(tagged[3].1, PosTag::Adverb);
        assert_eq!(tagged[4], ("frobbed".into(), PosTag::Verb));
    }

    #[test]
    fn participle_without_auxiliary_falls_back_to_noun() {
        let tagged = tag_all("The frobbed build works");
        assert_eq!(tagged[1].1, PosTag::Noun);
    }

    #[test]
    fn derivational_suffixes_mark_nouns() {
        let tagged = tag_all("The blorgination shows blorgness");
        assert_eq!(tagged[1].1, PosTag::Noun);
        assert_eq!(tagged[3].1, PosTag::Noun);
    }

    #[test]
    fn open_class_lookup_falls_back_to_the_lemma() {
        // "walks" is not listed as a surface, but its lemma "walk" is.
        let tagged = tag_all("She walks home");
        assert_eq!(tagged[1], ("walks".into(), PosTag::Verb));
    }

    #[test]
    fn lemmas_are_filled_in_for_plain_words() {
        let g = glossary();
        let tagged = pos_tag(tokenize("The tests were chosen", &g), &g, Lexicon::bundled());
        let lemmas: Vec<&str> = tagged.iter().map(|t| t.lemma.as_str()).collect();
        assert_eq!(lemmas, vec!["the", "test", "be", "choose"]);
    }

    #[test]
    fn unknown_words_default_to_noun() {
        let tagged = tag_all("Zorbs exist");
        assert_eq!(tagged[0].1, PosTag::Noun);
    }
}
