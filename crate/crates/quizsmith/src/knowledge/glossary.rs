use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textproc::PosTag;

/// Coarse meaning category of a glossary term. Distractors are only drawn
/// from terms in the same category as the removed term, so these are required
/// annotations rather than something inferred from text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticClass {
    Thought,
    Object,
    Quality,
    Process,
}

impl SemanticClass {
    pub const ALL: [SemanticClass; 4] = [
        SemanticClass::Thought,
        SemanticClass::Object,
        SemanticClass::Quality,
        SemanticClass::Process,
    ];
}

impl fmt::Display for SemanticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SemanticClass::Thought => "thought",
            SemanticClass::Object => "object",
            SemanticClass::Quality => "quality",
            SemanticClass::Process => "process",
        };
        f.write_str(s)
    }
}

/// One glossary record. `vowel_initial` is derived from the lemma at load
/// time and drives article agreement when a choice is rendered after "a" or
/// "an".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlossaryEntry {
    pub lemma: String,
    #[serde(default)]
    pub variants: Vec<String>,
    pub pos: PosTag,
    pub semantic_class: SemanticClass,
    #[serde(skip)]
    pub vowel_initial: bool,
}

#[derive(Deserialize)]
struct GlossaryFile {
    #[serde(default)]
    terms: Vec<GlossaryEntry>,
}

/// Loader knobs. `vowel_exceptions` lists lemmas whose spelling starts with a
/// vowel letter but which take "a" (or the reverse), e.g. "user" or "hour".
#[derive(Clone, Debug, Default)]
pub struct GlossaryOptions {
    pub vowel_exceptions: Vec<String>,
}

/// Term dictionary with case-insensitive lookup over lemmas and variants.
#[derive(Clone, Debug, Default)]
pub struct Glossary {
    entries: Vec<GlossaryEntry>,
    by_surface: BTreeMap<String, usize>,
    // Surfaces ordered longest-first for greedy matching in the tokenizer.
    surfaces_by_len: Vec<(String, usize)>,
}

impl Glossary {
    pub fn load(path: &Path) -> Result<Glossary> {
        Glossary::load_with(path, &GlossaryOptions::default())
    }

    pub fn load_with(path: &Path, options: &GlossaryOptions) -> Result<Glossary> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let file: GlossaryFile = toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Glossary::from_entries(file.terms, options)
    }

    pub fn from_entries(
        entries: Vec<GlossaryEntry>,
        options: &GlossaryOptions,
    ) -> Result<Glossary> {
        let mut normalized: Vec<GlossaryEntry> = Vec::with_capacity(entries.len());
        for mut e in entries {
            e.lemma = normalize(&e.lemma);
            if e.lemma.is_empty() {
                return Err(Error::EmptyLemma);
            }
            e.variants = e
                .variants
                .iter()
                .map(|v| normalize(v))
                .filter(|v| !v.is_empty())
                .collect();
            let letter_vowel = e
                .lemma
                .chars()
                .next()
                .map(|c| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u'))
                .unwrap_or(false);
            let excepted = options
                .vowel_exceptions
                .iter()
                .any(|x| normalize(x) == e.lemma);
            e.vowel_initial = letter_vowel != excepted;
            normalized.push(e);
        }
        normalized.sort_by(|a, b| a.lemma.cmp(&b.lemma));

        let mut by_surface: BTreeMap<String, usize> = BTreeMap::new();
        for (i, e) in normalized.iter().enumerate() {
            if let Some(&prev) = by_surface.get(&e.lemma) {
                let prev_lemma = &normalized[prev].lemma;
                if *prev_lemma == e.lemma {
                    return Err(Error::DuplicateLemma {
                        lemma: e.lemma.clone(),
                    });
                }
            }
            for surface in std::iter::once(&e.lemma).chain(e.variants.iter()) {
                match by_surface.get(surface) {
                    Some(&prev) if prev != i => {
                        return Err(Error::AmbiguousSurface {
                            surface: surface.clone(),
                            first: normalized[prev].lemma.clone(),
                            second: e.lemma.clone(),
                        });
                    }
                    _ => {
                        by_surface.insert(surface.clone(), i);
                    }
                }
            }
        }

        let mut surfaces_by_len: Vec<(String, usize)> = by_surface
            .iter()
            .map(|(s, &i)| (s.clone(), i))
            .collect();
        surfaces_by_len.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));

        Ok(Glossary {
            entries: normalized,
            by_surface,
            surfaces_by_len,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Entries sorted by lemma.
    pub fn entries(&self) -> &[GlossaryEntry] {
        &self.entries
    }

    /// Case-insensitive lookup over lemmas and variants.
    pub fn lookup_term(&self, surface: &str) -> Option<&GlossaryEntry> {
        self.by_surface
            .get(&normalize(surface))
            .map(|&i| &self.entries[i])
    }

    pub fn entry(&self, lemma: &str) -> Option<&GlossaryEntry> {
        self.lookup_term(lemma).filter(|e| e.lemma == normalize(lemma))
    }

    /// All known surfaces, longest first, each with its entry. Used by the
    /// tokenizer's greedy matcher.
    pub fn surfaces_by_len(&self) -> impl Iterator<Item = (&str, &GlossaryEntry)> {
        self.surfaces_by_len
            .iter()
            .map(move |(s, i)| (s.as_str(), &self.entries[*i]))
    }
}

fn normalize(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_ascii_lowercase()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(lemma: &str, variants: &[&str], class: SemanticClass) -> GlossaryEntry {
        GlossaryEntry {
            lemma: lemma.into(),
            variants: variants.iter().map(|v| v.to_string()).collect(),
            pos: PosTag::Noun,
            semantic_class: class,
            vowel_initial: false,
        }
    }

    fn sample() -> Glossary {
        Glossary::from_entries(
            vec![
                entry("test suite", &["test suites"], SemanticClass::Thought),
                entry("defect", &["defects"], SemanticClass::Object),
                entry("equivalence partition", &["equivalence partitions"], SemanticClass::Thought),
            ],
            &GlossaryOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn variant_lookup_returns_the_lemma_entry() {
        let g = sample();
        assert_eq!(g.lookup_term("test suites").unwrap().lemma, "test suite");
        assert_eq!(g.lookup_term("Test  Suites").unwrap().lemma, "test suite");
    }

    #[test]
    fn unknown_surface_returns_none() {
        assert!(sample().lookup_term("banana").is_none());
    }

    #[test]
    fn every_variant_resolves_to_its_own_lemma() {
        let g = sample();
        for e in g.entries() {
            for v in &e.variants {
                assert_eq!(g.lookup_term(v).unwrap().lemma, e.lemma);
            }
        }
    }

    #[test]
    fn duplicate_lemma_is_rejected() {
        let err = Glossary::from_entries(
            vec![
                entry("defect", &[], SemanticClass::Object),
                entry("Defect", &[], SemanticClass::Object),
            ],
            &GlossaryOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateLemma { .. }));
    }

    #[test]
    fn colliding_variant_is_rejected() {
        let err = Glossary::from_entries(
            vec![
                entry("defect", &["bugs"], SemanticClass::Object),
                entry("fault", &["bugs"], SemanticClass::Object),
            ],
            &GlossaryOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::AmbiguousSurface { .. }));
    }

    #[test]
    fn empty_lemma_is_rejected() {
        let err = Glossary::from_entries(
            vec![entry("   ", &[], SemanticClass::Object)],
            &GlossaryOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyLemma));
    }

    #[test]
    fn empty_glossary_is_valid() {
        let g = Glossary::from_entries(vec![], &GlossaryOptions::default()).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn vowel_initial_follows_spelling_unless_excepted() {
        let g = Glossary::from_entries(
            vec![
                entry("equivalence partition", &[], SemanticClass::Thought),
                entry("defect", &[], SemanticClass::Object),
                entry("user", &[], SemanticClass::Object),
            ],
            &GlossaryOptions {
                vowel_exceptions: vec!["user".into()],
            },
        )
        .unwrap();
        assert!(g.entry("equivalence partition").unwrap().vowel_initial);
        assert!(!g.entry("defect").unwrap().vowel_initial);
        assert!(!g.entry("user").unwrap().vowel_initial);
    }
}
