use crate::knowledge::{Glossary, GlossaryEntry};

use super::{PosTag, Span, Token};

/// Splits a sentence into tokens, folding each glossary term occurrence into
/// a single token.
///
/// Matching is greedy: at every word start the longest glossary surface
/// (lemma or variant) that fits is taken, compared case-insensitively, and
/// both ends must sit on word boundaries so "protesting" never matches
/// "test". Outside glossary spans, a word is a maximal run of alphanumerics
/// where `-` and `'` join two alphanumerics ("state-of-the-art"); every
/// other non-whitespace character becomes its own token. Surfaces keep the
/// original casing and every token records its byte span in the input; tags
/// are assigned later by the part-of-speech pass, and non-glossary lemmas
/// start as the lowercased surface until the lemmatizer fills them in.
pub fn tokenize(raw: &str, glossary: &Glossary) -> Vec<Token> {
    let lowered = raw.to_ascii_lowercase();
    let chars: Vec<(usize, char)> = raw.char_indices().collect();
    let mut tokens = Vec::new();
    let mut pos = 0;

    while pos < chars.len() {
        let (byte_idx, ch) = chars[pos];
        if ch.is_whitespace() {
            pos += 1;
            continue;
        }

        let at_word_start = pos == 0 || !chars[pos - 1].1.is_alphanumeric();
        if at_word_start {
            if let Some((match_len, entry)) = longest_glossary_match(&lowered[byte_idx..], glossary)
            {
                let end = byte_idx + match_len;
                tokens.push(Token {
                    surface: raw[byte_idx..end].to_string(),
                    lemma: entry.lemma.clone(),
                    tag: PosTag::Unknown,
                    is_glossary_term: true,
                    span: Span {
                        start: byte_idx,
                        end,
                    },
                });
                while pos < chars.len() && chars[pos].0 < end {
                    pos += 1;
                }
                continue;
            }
        }

        if ch.is_alphanumeric() {
            let start_byte = byte_idx;
            let mut end_pos = pos;
            while end_pos < chars.len() {
                let c = chars[end_pos].1;
                if c.is_alphanumeric() {
                    end_pos += 1;
                } else if (c == '-' || c == '\'')
                    && end_pos + 1 < chars.len()
                    && chars[end_pos + 1].1.is_alphanumeric()
                {
                    end_pos += 1;
                } else {
                    break;
                }
            }
            let end_byte = byte_end(&chars, end_pos - 1, raw);
            tokens.push(Token {
                surface: raw[start_byte..end_byte].to_string(),
                lemma: lowered[start_byte..end_byte].to_string(),
                tag: PosTag::Unknown,
                is_glossary_term: false,
                span: Span {
                    start: start_byte,
                    end: end_byte,
                },
            });
            pos = end_pos;
        } else {
            let end_byte = byte_idx + ch.len_utf8();
            tokens.push(Token {
                surface: raw[byte_idx..end_byte].to_string(),
                lemma: lowered[byte_idx..end_byte].to_string(),
                tag: PosTag::Unknown,
                is_glossary_term: false,
                span: Span {
                    start: byte_idx,
                    end: end_byte,
                },
            });
            pos += 1;
        }
    }

    tokens
}

/// Longest glossary surface starting at the head of `text` (already
/// lowercased), requiring a non-alphanumeric character or end of input right
/// after the match.
fn longest_glossary_match<'g>(
    text: &str,
    glossary: &'g Glossary,
) -> Option<(usize, &'g GlossaryEntry)> {
    for (surface, entry) in glossary.surfaces_by_len() {
        if text.starts_with(surface) {
            let boundary = text[surface.len()..]
                .chars()
                .next()
                .map_or(true, |c| !c.is_alphanumeric());
            if boundary {
                return Some((surface.len(), entry));
            }
        }
    }
    None
}

fn byte_end(chars: &[(usize, char)], last_pos: usize, raw: &str) -> usize {
    let (idx, ch) = chars[last_pos];
    debug_assert!(idx + ch.len_utf8() <= raw.len());
    idx + ch.len_utf8()
}
