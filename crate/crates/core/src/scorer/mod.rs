//! Bag-of-words document scoring against lexicons.
//!
//! Polarity mode counts matched tokens per pole and reports
//! `(P - N) / (P + N)`. Valence mode averages the valences of matched
//! tokens. Either way only tokens found in the lexicon enter the
//! denominator unless [`Denominator::AllTokens`] is requested, and a
//! document with no matches scores 0 with `no_match` set.
//!
//! Matched words are accumulated in word order, so the result does not
//! depend on token order and equals the sum of the per-word attributions.

mod frames;
mod io;
mod tokenize;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use self::frames::{predict_frame, FramePrediction, FrameSet, CANONICAL_FRAMES, NON_MORAL};
pub use self::io::{
    read_corpus, write_attributions, write_frame_predictions, write_scores, CorpusFormat,
    SCORE_HEADER,
};
pub use self::tokenize::{tokenize, TokenizedDoc};

use crate::error::{Error, Result};
use crate::lexicon::{Lexicon, Pole};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreMode {
    /// Every matched word counts +1 or -1.
    #[default]
    Polarity,
    /// Every matched word counts its valence.
    Valence,
}

impl ScoreMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScoreMode::Polarity => "polarity",
            ScoreMode::Valence => "valence",
        }
    }
}

impl fmt::Display for ScoreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScoreMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polarity" => Ok(ScoreMode::Polarity),
            "valence" => Ok(ScoreMode::Valence),
            other => Err(Error::InvalidArgument(format!(
                "unknown scoring mode {other:?} (expected polarity or valence)"
            ))),
        }
    }
}

/// What the summed contributions are divided by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Denominator {
    /// Number of matched token occurrences.
    #[default]
    Matched,
    /// Number of tokens in the document.
    AllTokens,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScoreOptions {
    pub mode: ScoreMode,
    pub denominator: Denominator,
}

impl From<ScoreMode> for ScoreOptions {
    fn from(mode: ScoreMode) -> Self {
        ScoreOptions {
            mode,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentScore {
    pub doc_id: String,
    pub concept: String,
    pub mode: ScoreMode,
    /// In `[-1, 1]`; 0 when nothing matched.
    pub score: f64,
    pub matched_positive: usize,
    pub matched_negative: usize,
    pub matched_total: usize,
    pub no_match: bool,
    /// Sum of contributions before division.
    pub numerator: f64,
}

/// One lexicon word's share of a document score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchAttribution {
    pub word: String,
    pub valence: f64,
    pub occurrences: usize,
    /// `occurrences * valence` (valence mode) or `occurrences * ±1`.
    pub contribution: f64,
}

struct Match<'a> {
    word: &'a str,
    valence: f64,
    pole: Pole,
    occurrences: usize,
}

/// Lexicon words present in `doc`, in word order.
fn matches<'a>(doc: &'a TokenizedDoc, lexicon: &'a Lexicon) -> Vec<Match<'a>> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for t in &doc.tokens {
        *counts.entry(t.as_str()).or_default() += 1;
    }
    counts
        .into_iter()
        .filter_map(|(word, occurrences)| {
            lexicon.get(word).map(|e| Match {
                word,
                valence: e.valence,
                pole: e.pole_kind(),
                occurrences,
            })
        })
        .collect()
}

fn weight(m: &Match<'_>, mode: ScoreMode) -> f64 {
    match mode {
        ScoreMode::Polarity => m.pole.sign(),
        ScoreMode::Valence => m.valence,
    }
}

/// Score one document.
pub fn score_document(
    doc: &TokenizedDoc,
    lexicon: &Lexicon,
    options: impl Into<ScoreOptions>,
) -> DocumentScore {
    let options = options.into();
    let found = matches(doc, lexicon);
    let (mut positive, mut negative) = (0, 0);
    let mut numerator = 0.0;
    for m in &found {
        match m.pole {
            Pole::Positive => positive += m.occurrences,
            Pole::Negative => negative += m.occurrences,
        }
        numerator += m.occurrences as f64 * weight(m, options.mode);
    }
    let total = positive + negative;
    let denominator = match options.denominator {
        Denominator::Matched => total,
        Denominator::AllTokens => doc.token_count(),
    };
    let score = if total == 0 {
        0.0
    } else {
        (numerator / denominator as f64).clamp(-1.0, 1.0)
    };
    DocumentScore {
        doc_id: doc.doc_id.clone(),
        concept: lexicon.concept().to_string(),
        mode: options.mode,
        score,
        matched_positive: positive,
        matched_negative: negative,
        matched_total: total,
        no_match: total == 0,
        numerator,
    }
}

/// Score every document, preserving input order. With `parallel` the
/// documents are fanned out over the rayon pool.
pub fn score_corpus(
    docs: &[TokenizedDoc],
    lexicon: &Lexicon,
    options: impl Into<ScoreOptions>,
    parallel: bool,
) -> Vec<DocumentScore> {
    let options = options.into();
    if parallel {
        docs.par_iter()
            .map(|d| score_document(d, lexicon, options))
            .collect()
    } else {
        docs.iter()
            .map(|d| score_document(d, lexicon, options))
            .collect()
    }
}

/// The `top_k` matched words with the largest absolute contribution
/// (ties by word).
pub fn attribute_matches(
    doc: &TokenizedDoc,
    lexicon: &Lexicon,
    mode: ScoreMode,
    top_k: usize,
) -> Result<Vec<MatchAttribution>> {
    if top_k == 0 {
        return Err(Error::InvalidArgument("top_k must be at least 1".into()));
    }
    let mut out: Vec<MatchAttribution> = matches(doc, lexicon)
        .iter()
        .map(|m| MatchAttribution {
            word: m.word.to_string(),
            valence: m.valence,
            occurrences: m.occurrences,
            contribution: m.occurrences as f64 * weight(m, mode),
        })
        .collect();
    out.sort_by(|a, b| {
        b.contribution
            .abs()
            .total_cmp(&a.contribution.abs())
            .then_with(|| a.word.cmp(&b.word))
    });
    out.truncate(top_k);
    Ok(out)
}
