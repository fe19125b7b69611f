//! Seed sets and the lexicons induced from them.

mod build;
mod compare;
mod io;
mod sample;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

pub use self::build::{
    build_lexicon, net_polarity, normalize_valences, BuildWarning, LexiconBuilder,
    PoleAggregation, Provenance, RawPolarityScore, ResolvedSeeds,
};
pub use self::compare::{compare_lexicons, OverlapReport, Residual, ResidualFit, RESIDUAL_THRESHOLDS};
pub use self::io::{export_csv, import_csv, read_lexicon, write_lexicon, LEXICON_HEADER};
pub use self::sample::sample_seeds;

use crate::digest;
use crate::error::{Error, Result};

/// Which end of a conceptual dimension a word belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pole {
    Positive,
    Negative,
}

impl Pole {
    pub fn sign(self) -> f64 {
        match self {
            Pole::Positive => 1.0,
            Pole::Negative => -1.0,
        }
    }
}

/// Two opposing lists of seed words defining one concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSet {
    concept: String,
    positive_label: String,
    negative_label: String,
    positive_seeds: Vec<String>,
    negative_seeds: Vec<String>,
}

impl SeedSet {
    /// Seeds are trimmed and lowercased. Both poles must be non-empty,
    /// duplicate-free and disjoint, and the labels must differ.
    pub fn new<S: AsRef<str>>(
        concept: impl Into<String>,
        positive_label: impl Into<String>,
        negative_label: impl Into<String>,
        positive_seeds: impl IntoIterator<Item = S>,
        negative_seeds: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let positive_label = positive_label.into();
        let negative_label = negative_label.into();
        if positive_label.is_empty() || negative_label.is_empty() {
            return Err(Error::InvalidSeeds("pole labels must be non-empty".into()));
        }
        if positive_label == negative_label {
            return Err(Error::InvalidSeeds(format!(
                "both poles are labelled {positive_label:?}"
            )));
        }
        let positive_seeds = clean_pole(&positive_label, positive_seeds)?;
        let negative_seeds = clean_pole(&negative_label, negative_seeds)?;
        let positive: HashSet<&String> = positive_seeds.iter().collect();
        if let Some(shared) = negative_seeds.iter().find(|w| positive.contains(w)) {
            return Err(Error::InvalidSeeds(format!(
                "{shared:?} appears on both poles"
            )));
        }
        Ok(SeedSet {
            concept: concept.into(),
            positive_label,
            negative_label,
            positive_seeds,
            negative_seeds,
        })
    }

    pub fn concept(&self) -> &str {
        &self.concept
    }

    pub fn positive_label(&self) -> &str {
        &self.positive_label
    }

    pub fn negative_label(&self) -> &str {
        &self.negative_label
    }

    pub fn positive_seeds(&self) -> &[String] {
        &self.positive_seeds
    }

    pub fn negative_seeds(&self) -> &[String] {
        &self.negative_seeds
    }

    pub fn seeds(&self, pole: Pole) -> &[String] {
        match pole {
            Pole::Positive => &self.positive_seeds,
            Pole::Negative => &self.negative_seeds,
        }
    }

    pub fn label(&self, pole: Pole) -> &str {
        match pole {
            Pole::Positive => &self.positive_label,
            Pole::Negative => &self.negative_label,
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.positive_seeds.iter().any(|w| w == word) || self.negative_seeds.iter().any(|w| w == word)
    }

    /// Content digest over labels and seed lists (order-sensitive).
    pub fn digest(&self) -> String {
        let mut text = format!(
            "{}\n{}\n{}\n",
            self.concept, self.positive_label, self.negative_label
        );
        for (tag, words) in [("+", &self.positive_seeds), ("-", &self.negative_seeds)] {
            for w in words {
                text.push_str(tag);
                text.push_str(w);
                text.push('\n');
            }
        }
        digest::sha256_hex(text.as_bytes())
    }
}

fn clean_pole<S: AsRef<str>>(
    label: &str,
    words: impl IntoIterator<Item = S>,
) -> Result<Vec<String>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in words {
        let w = w.as_ref().trim().to_lowercase();
        if w.is_empty() {
            continue;
        }
        if !seen.insert(w.clone()) {
            return Err(Error::InvalidSeeds(format!(
                "{w:?} is listed twice on pole {label:?}"
            )));
        }
        out.push(w);
    }
    if out.is_empty() {
        return Err(Error::InvalidSeeds(format!("pole {label:?} has no seed words")));
    }
    Ok(out)
}

/// One lexicon row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub word: String,
    /// In `[-1, 1]`, never zero; seeds are exactly `+1` or `-1`.
    pub valence: f64,
    pub seed: bool,
    /// Label of the pole matching the sign of `valence`.
    pub pole: String,
}

impl LexiconEntry {
    pub fn pole_kind(&self) -> Pole {
        if self.valence > 0.0 {
            Pole::Positive
        } else {
            Pole::Negative
        }
    }
}

/// A concept lexicon, kept sorted by valence (descending, ties by word).
#[derive(Debug, Clone)]
pub struct Lexicon {
    concept: String,
    positive_label: String,
    negative_label: String,
    entries: Vec<LexiconEntry>,
    index: HashMap<String, usize>,
    provenance: Option<Provenance>,
}

impl PartialEq for Lexicon {
    /// Provenance is bookkeeping and does not take part in equality.
    fn eq(&self, other: &Self) -> bool {
        self.concept == other.concept
            && self.positive_label == other.positive_label
            && self.negative_label == other.negative_label
            && self.entries == other.entries
    }
}

impl Lexicon {
    /// Validate and sort `entries`.
    pub fn new(
        concept: impl Into<String>,
        positive_label: impl Into<String>,
        negative_label: impl Into<String>,
        mut entries: Vec<LexiconEntry>,
    ) -> Result<Self> {
        let positive_label = positive_label.into();
        let negative_label = negative_label.into();
        if positive_label == negative_label {
            return Err(Error::InvalidLexicon(format!(
                "both poles are labelled {positive_label:?}"
            )));
        }
        for e in &entries {
            if !e.valence.is_finite() || e.valence.abs() > 1.0 {
                return Err(Error::InvalidLexicon(format!(
                    "{:?} has valence {} outside [-1, 1]",
                    e.word, e.valence
                )));
            }
            if e.valence == 0.0 {
                return Err(Error::InvalidLexicon(format!("{:?} has zero valence", e.word)));
            }
            if e.seed && e.valence.abs() != 1.0 {
                return Err(Error::InvalidLexicon(format!(
                    "seed {:?} must have valence 1 or -1, not {}",
                    e.word, e.valence
                )));
            }
            let expected = match e.pole_kind() {
                Pole::Positive => &positive_label,
                Pole::Negative => &negative_label,
            };
            if &e.pole != expected {
                return Err(Error::InvalidLexicon(format!(
                    "{:?} with valence {} is labelled {:?}, expected {:?}",
                    e.word, e.valence, e.pole, expected
                )));
            }
        }
        entries.sort_by(entry_order);
        let mut index = HashMap::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            if index.insert(e.word.clone(), i).is_some() {
                return Err(Error::InvalidLexicon(format!("duplicate word {:?}", e.word)));
            }
        }
        Ok(Lexicon {
            concept: concept.into(),
            positive_label,
            negative_label,
            entries,
            index,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn concept(&self) -> &str {
        &self.concept
    }

    pub fn positive_label(&self) -> &str {
        &self.positive_label
    }

    pub fn negative_label(&self) -> &str {
        &self.negative_label
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&LexiconEntry> {
        self.index.get(word).map(|&i| &self.entries[i])
    }

    /// Entries that are not seeds.
    pub fn expanded(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.iter().filter(|e| !e.seed)
    }

    pub fn seeds(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.iter().filter(|e| e.seed)
    }

    pub fn pole(&self, pole: Pole) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.iter().filter(move |e| e.pole_kind() == pole)
    }

    /// Lexicon digest over the exported CSV bytes.
    pub fn digest(&self) -> String {
        let mut buf = Vec::new();
        export_csv(self, &mut buf).expect("writing to memory cannot fail");
        digest::sha256_hex(&buf)
    }
}

/// Valence descending, then word ascending.
pub(crate) fn entry_order(a: &LexiconEntry, b: &LexiconEntry) -> Ordering {
    b.valence
        .total_cmp(&a.valence)
        .then_with(|| a.word.cmp(&b.word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(word: &str, valence: f64, seed: bool, pole: &str) -> LexiconEntry {
        LexiconEntry {
            word: word.into(),
            valence,
            seed,
            pole: pole.into(),
        }
    }

    #[test]
    fn seed_set_normalizes_words() {
        let s = SeedSet::new("sentiment", "Positive", "Negative", [" Good", "great"], ["BAD"]).unwrap();
        assert_eq!(s.positive_seeds(), ["good", "great"]);
        assert_eq!(s.negative_seeds(), ["bad"]);
        assert!(s.contains("bad"));
    }

    #[test]
    fn seed_set_rejects_overlap_duplicates_and_empty_poles() {
        assert!(SeedSet::new("c", "P", "N", ["good"], ["Good"]).is_err());
        assert!(SeedSet::new("c", "P", "N", ["good", "good"], ["bad"]).is_err());
        assert!(SeedSet::new("c", "P", "N", Vec::<&str>::new(), ["bad"]).is_err());
        assert!(SeedSet::new("c", "P", "P", ["good"], ["bad"]).is_err());
    }

    #[test]
    fn seed_digest_depends_on_content() {
        let a = SeedSet::new("c", "P", "N", ["good"], ["bad"]).unwrap();
        let b = SeedSet::new("c", "P", "N", ["good"], ["awful"]).unwrap();
        assert_eq!(a.digest(), a.clone().digest());
        assert_ne!(a.digest(), b.digest());
    }

    #[test]
    fn lexicon_sorts_entries() {
        let lex = Lexicon::new(
            "c",
            "Positive",
            "Negative",
            vec![
                entry("b", -0.5, false, "Negative"),
                entry("z", 1.0, true, "Positive"),
                entry("a", 1.0, false, "Positive"),
                entry("m", 0.3, false, "Positive"),
            ],
        )
        .unwrap();
        let words: Vec<_> = lex.entries().iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["a", "z", "m", "b"]);
        assert_eq!(lex.get("m").unwrap().valence, 0.3);
        assert_eq!(lex.pole(Pole::Negative).count(), 1);
    }

    #[test]
    fn lexicon_rejects_bad_entries() {
        let bad = |e| Lexicon::new("c", "Positive", "Negative", vec![e]).is_err();
        assert!(bad(entry("a", 1.2, false, "Positive")));
        assert!(bad(entry("a", 0.0, false, "Positive")));
        assert!(bad(entry("a", 0.5, true, "Positive")));
        assert!(bad(entry("a", -0.5, false, "Positive")));
        assert!(bad(entry("a", f64::NAN, false, "Positive")));
        let dup = Lexicon::new(
            "c",
            "Positive",
            "Negative",
            vec![entry("a", 0.5, false, "Positive"), entry("a", -0.5, false, "Negative")],
        );
        assert!(dup.is_err());
    }
}
