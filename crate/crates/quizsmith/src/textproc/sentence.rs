use super::Lexicon;

/// Splits raw text into sentences.
///
/// A sentence ends at `.`, `!`, or `?` when the terminator is followed by
/// whitespace or the end of the input. A period does not terminate when the
/// word it closes is a known abbreviation (`e.g.`, `etc.`, ...). A blank line
/// always ends the current sentence, which keeps headings and list fragments
/// that lack terminal punctuation from bleeding into the next paragraph.
/// Each returned sentence is trimmed and has internal whitespace collapsed
/// to single spaces; empty pieces are dropped.
pub fn split_sentences(text: &str, lexicon: &Lexicon) -> Vec<String> {
    let mut sentences = Vec::new();
    let mut current = String::new();
    let mut chars = text.char_indices().peekable();

    while let Some((idx, ch)) = chars.next() {
        match ch {
            '.' | '!' | '?' => {
                current.push(ch);
                let next = chars.peek().map(|&(_, c)| c);
                let at_break = next.map_or(true, char::is_whitespace);
                let suppressed =
                    ch == '.' && at_break && is_abbreviation_tail(text, idx, lexicon);
                if at_break && !suppressed {
                    flush(&mut current, &mut sentences);
                }
            }
            '\n' => {
                // Look ahead for a second newline with only blanks between:
                // that is a paragraph break, which is a hard boundary.
                let mut rest = text[idx + 1..].chars();
                let mut blank_line = false;
                for c in rest.by_ref() {
                    if c == '\n' {
                        blank_line = true;
                        break;
                    }
                    if !c.is_whitespace() {
                        break;
                    }
                }
                if blank_line {
                    flush(&mut current, &mut sentences);
                } else {
                    current.push(' ');
                }
            }
            c if c.is_whitespace() => current.push(' '),
            c => current.push(c),
        }
    }
    flush(&mut current, &mut sentences);
    sentences
}

/// True when the word ending at byte `dot_idx` (exclusive of the dot) reads
/// as a bundled abbreviation once trailing dots are stripped and the word is
/// lowercased. Walks back to the nearest whitespace in the original text.
fn is_abbreviation_tail(text: &str, dot_idx: usize, lexicon: &Lexicon) -> bool {
    let head = &text[..dot_idx];
    let word_start = head
        .rfind(char::is_whitespace)
        .map(|i| i + head[i..].chars().next().map_or(1, char::len_utf8))
        .unwrap_or(0);
    let word = head[word_start..]
        .trim_end_matches('.')
        .to_ascii_lowercase();
    !word.is_empty() && lexicon.is_abbreviation(&word)
}

fn flush(current: &mut String, sentences: &mut Vec<String>) {
    let cleaned = current.split_whitespace().collect::<Vec<_>>().join(" ");
    if !cleaned.is_empty() {
        sentences.push(cleaned);
    }
    current.clear();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(text: &str) -> Vec<String> {
        split_sentences(text, Lexicon::bundled())
    }

    #[test]
    fn splits_on_terminators_before_whitespace() {
        assert_eq!(
            split("Black box testing works. It needs inputs."),
            vec!["Black box testing works.", "It needs inputs."]
        );
    }

    #[test]
    fn abbreviation_period_does_not_split() {
        assert_eq!(
            split("Test data, e.g. boundary values, are chosen."),
            vec!["Test data, e.g. boundary values, are chosen."]
        );
    }

    #[test]
    fn trailing_abbreviation_still_holds_sentence_open() {
        assert_eq!(
            split("Limits cover arrays, lists, etc. within one class."),
            vec!["Limits cover arrays, lists, etc. within one class."]
        );
    }

    #[test]
    fn question_and_exclamation_terminate() {
        assert_eq!(
            split("Does it work? Yes! It does."),
            vec!["Does it work?", "Yes!", "It does."]
        );
    }

    #[test]
    fn decimal_point_is_not_a_boundary() {
        assert_eq!(
            split("Coverage reached 99.9 percent overall."),
            vec!["Coverage reached 99.9 percent overall."]
        );
    }

    #[test]
    fn blank_line_is_a_hard_boundary() {
        assert_eq!(
            split("A heading without punctuation\n\nThe body starts here."),
            vec!["A heading without punctuation", "The body starts here."]
        );
    }

    #[test]
    fn single_newline_is_soft() {
        assert_eq!(
            split("The plan spans\ntwo lines."),
            vec!["The plan spans two lines."]
        );
    }

    #[test]
    fn whitespace_is_collapsed_and_trimmed() {
        assert_eq!(
            split("  Spaced   out\tsentence.  "),
            vec!["Spaced out sentence."]
        );
    }

    #[test]
    fn empty_input_yields_nothing() {
        assert!(split("").is_empty());
        assert!(split(" \n \n ").is_empty());
    }

    #[test]
    fn unterminated_tail_is_kept() {
        assert_eq!(
            split("First part done. trailing fragment"),
            vec!["First part done.", "trailing fragment"]
        );
    }
}
