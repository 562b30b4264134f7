use std::collections::{BTreeMap, BTreeSet};

use once_cell::sync::Lazy;

use super::PosTag;

const CLOSED_CLASS: &str = include_str!("../../data/closed_class.tsv");
const OPEN_CLASS: &str = include_str!("../../data/open_class.tsv");
const IRREGULAR_VERBS: &str = include_str!("../../data/irregular_verbs.tsv");
const IRREGULAR_NOUNS: &str = include_str!("../../data/irregular_nouns.tsv");
const ABBREVIATIONS: &str = include_str!("../../data/abbreviations.tsv");
const SUBORDINATORS: &str = include_str!("../../data/subordinators.tsv");

/// Bundled word lists backing the rule-based pipeline. The data files are
/// two-column TSV (`surface<TAB>tag-or-lemma`), UTF-8, with `#` comments;
/// the first entry wins when a surface repeats.
#[derive(Clone, Debug)]
pub struct Lexicon {
    closed: BTreeMap<String, PosTag>,
    auxiliaries: BTreeSet<String>,
    open: BTreeMap<String, PosTag>,
    irregular_lemmas: BTreeMap<String, String>,
    irregular_bases: BTreeSet<String>,
    plural_of: BTreeMap<String, String>,
    singular_of: BTreeMap<String, String>,
    abbreviations: BTreeSet<String>,
    subordinators: BTreeSet<String>,
}

static BUNDLED: Lazy<Lexicon> = Lazy::new(Lexicon::from_bundled_data);

impl Lexicon {
    /// The lexicon built from the bundled data files.
    pub fn bundled() -> &'static Lexicon {
        &BUNDLED
    }

    fn from_bundled_data() -> Lexicon {
        let mut closed = BTreeMap::new();
        let mut auxiliaries = BTreeSet::new();
        for (surface, tag) in parse_two_column(CLOSED_CLASS) {
            let pos = if tag == "aux" {
                auxiliaries.insert(surface.clone());
                PosTag::Verb
            } else {
                parse_tag(&tag)
            };
            closed.entry(surface).or_insert(pos);
        }

        let mut open = BTreeMap::new();
        for (surface, tag) in parse_two_column(OPEN_CLASS) {
            open.entry(surface).or_insert_with(|| parse_tag(&tag));
        }

        let mut irregular_lemmas = BTreeMap::new();
        for (surface, lemma) in parse_two_column(IRREGULAR_VERBS) {
            irregular_lemmas.entry(surface).or_insert(lemma);
        }

        let mut plural_of = BTreeMap::new();
        let mut singular_of = BTreeMap::new();
        for (singular, plural) in parse_two_column(IRREGULAR_NOUNS) {
            irregular_lemmas
                .entry(plural.clone())
                .or_insert_with(|| singular.clone());
            singular_of.entry(plural.clone()).or_insert(singular.clone());
            plural_of.entry(singular).or_insert(plural);
        }

        let abbreviations = parse_two_column(ABBREVIATIONS).map(|(s, _)| s).collect();
        let subordinators = parse_two_column(SUBORDINATORS).map(|(s, _)| s).collect();
        let irregular_bases = irregular_lemmas.values().cloned().collect();

        Lexicon {
            closed,
            auxiliaries,
            open,
            irregular_lemmas,
            irregular_bases,
            plural_of,
            singular_of,
            abbreviations,
            subordinators,
        }
    }

    /// Copy of this lexicon with extra subordinator phrases added.
    pub fn with_extra_subordinators<I, S>(&self, extras: I) -> Lexicon
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out = self.clone();
        for s in extras {
            let normalized = s
                .as_ref()
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" ")
                .to_ascii_lowercase();
            if !normalized.is_empty() {
                out.subordinators.insert(normalized);
            }
        }
        out
    }

    pub fn closed_class_tag(&self, surface: &str) -> Option<PosTag> {
        self.closed.get(surface).copied()
    }

    pub fn open_class_tag(&self, surface: &str) -> Option<PosTag> {
        self.open.get(surface).copied()
    }

    pub fn is_auxiliary(&self, surface: &str) -> bool {
        self.auxiliaries.contains(surface)
    }

    pub fn irregular_lemma(&self, surface: &str) -> Option<&str> {
        self.irregular_lemmas.get(surface).map(String::as_str)
    }

    pub fn irregular_plural(&self, singular: &str) -> Option<&str> {
        self.plural_of.get(singular).map(String::as_str)
    }

    pub fn irregular_singular(&self, plural: &str) -> Option<&str> {
        self.singular_of.get(plural).map(String::as_str)
    }

    pub fn irregular_noun_pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.plural_of.iter().map(|(s, p)| (s.as_str(), p.as_str()))
    }

    pub fn is_abbreviation(&self, word: &str) -> bool {
        self.abbreviations.contains(word)
    }

    pub fn is_subordinator(&self, phrase: &str) -> bool {
        self.subordinators.contains(phrase)
    }

    /// A word counts as a known base form when a lexicon or exception table
    /// lists it directly; the lemmatizer leaves such words alone.
    pub fn is_known_base(&self, word: &str) -> bool {
        self.closed.contains_key(word)
            || self.open.contains_key(word)
            || self.irregular_bases.contains(word)
    }
}

fn parse_two_column(data: &str) -> impl Iterator<Item = (String, String)> + '_ {
    data.lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| {
            let (surface, value) = l.split_once('\t')?;
            Some((surface.trim().to_ascii_lowercase(), value.trim().to_string()))
        })
}

fn parse_tag(tag: &str) -> PosTag {
    match tag {
        "noun" => PosTag::Noun,
        "pronoun" => PosTag::Pronoun,
        "verb" => PosTag::Verb,
        "adjective" => PosTag::Adjective,
        "adverb" => PosTag::Adverb,
        "preposition" => PosTag::Preposition,
        "conjunction" => PosTag::Conjunction,
        "interjection" => PosTag::Interjection,
        "determiner" => PosTag::Determiner,
        other => panic!("bundled lexicon uses unknown tag `{other}`"),
    }
}
