//! Seed expansion.
//!
//! A candidate word's raw score is the sum of its cosine similarities to the
//! positive seeds minus the sum of its similarities to the negative seeds.
//! Because table vectors are unit length this equals a single dot product
//! with `sum(positive) - sum(negative)`, so scoring the whole vocabulary costs
//! one pass over the table. The highest scores form the positive pole, the
//! lowest the negative pole, and each pole is rescaled so that its extreme
//! expanded word sits at exactly `+1` / `-1`. Seeds are pinned to `+1` / `-1`.

use std::cmp::Ordering;
use std::collections::HashSet;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Lexicon, LexiconEntry, Pole, SeedSet};
use crate::embedding::{dot, CandidateVocab, EmbeddingTable};
use crate::error::{Error, Result};

/// Unnormalized net similarity of a word to the two poles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawPolarityScore {
    pub word: String,
    pub score: f64,
}

/// How per-seed similarities are combined within a pole.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoleAggregation {
    /// Plain sum over seeds.
    #[default]
    Sum,
    /// Sum divided by the number of resolved seeds on the pole.
    Mean,
}

/// Seeds located in an embedding table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedSeeds {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    /// Seed words with no vector, in seed-list order.
    pub dropped: Vec<String>,
}

impl ResolvedSeeds {
    /// Look up every seed; missing words are dropped with a warning. A pole
    /// left with no words is an error.
    pub fn resolve(seeds: &SeedSet, table: &EmbeddingTable) -> Result<Self> {
        let mut dropped = Vec::new();
        let mut lookup = |pole: Pole| -> Result<Vec<usize>> {
            let found: Vec<usize> = seeds
                .seeds(pole)
                .iter()
                .filter_map(|w| {
                    let pos = table.position(w);
                    if pos.is_none() {
                        dropped.push(w.clone());
                    }
                    pos
                })
                .collect();
            if found.is_empty() {
                return Err(Error::EmptyPole {
                    pole: seeds.label(pole).to_string(),
                });
            }
            Ok(found)
        };
        let positive = lookup(Pole::Positive)?;
        let negative = lookup(Pole::Negative)?;
        if !dropped.is_empty() {
            warn!(
                "{}: {} seed word(s) not in the embedding vocabulary: {}",
                seeds.concept(),
                dropped.len(),
                dropped.join(", ")
            );
        }
        Ok(ResolvedSeeds {
            positive,
            negative,
            dropped,
        })
    }

    /// `aggregate(positive) - aggregate(negative)` as one vector.
    fn direction(&self, table: &EmbeddingTable, aggregation: PoleAggregation) -> Vec<f64> {
        let mut direction = vec![0.0; table.dimension()];
        for (positions, sign) in [(&self.positive, 1.0), (&self.negative, -1.0)] {
            let mut pole = vec![0.0; table.dimension()];
            for &p in positions {
                for (acc, v) in pole.iter_mut().zip(table.vector(p)) {
                    *acc += v;
                }
            }
            let scale = match aggregation {
                PoleAggregation::Sum => sign,
                PoleAggregation::Mean => sign / positions.len() as f64,
            };
            for (d, v) in direction.iter_mut().zip(&pole) {
                *d += scale * v;
            }
        }
        direction
    }
}

/// Raw net polarity of a single word against a seed set (summed poles).
pub fn net_polarity(
    word: &str,
    seeds: &SeedSet,
    table: &EmbeddingTable,
) -> Result<RawPolarityScore> {
    let position = table
        .position(word)
        .ok_or_else(|| Error::UnknownWord(word.to_string()))?;
    let resolved = ResolvedSeeds::resolve(seeds, table)?;
    let direction = resolved.direction(table, PoleAggregation::Sum);
    Ok(RawPolarityScore {
        word: word.to_string(),
        score: dot(table.vector(position), &direction),
    })
}

/// Rescale raw scores into `[-1, 1]`, each pole separately.
///
/// Positive scores are divided by the largest positive score and negative
/// scores by the magnitude of the most negative one, so each pole's extreme
/// lands on exactly `1` or `-1` and order within a pole is preserved. Zero
/// scores map to zero.
pub fn normalize_valences(raw: &[RawPolarityScore]) -> Result<Vec<f64>> {
    if let Some(bad) = raw.iter().find(|r| !r.score.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "non-finite raw score for {:?}",
            bad.word
        )));
    }
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    let max_positive = raw.iter().map(|r| r.score).fold(0.0_f64, f64::max);
    let min_negative = raw.iter().map(|r| r.score).fold(0.0_f64, f64::min);
    if max_positive == 0.0 && min_negative == 0.0 {
        return Err(Error::NoPolarity);
    }
    Ok(raw
        .iter()
        .map(|r| match r.score.partial_cmp(&0.0) {
            Some(Ordering::Greater) => r.score / max_positive,
            Some(Ordering::Less) => -(r.score / min_negative),
            _ => 0.0,
        })
        .collect())
}

/// Something the builder had to compromise on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BuildWarning {
    /// Fewer candidates with the pole's sign than requested.
    PoleTruncated {
        pole: String,
        requested: usize,
        available: usize,
    },
    /// A pole size of zero was requested; the lexicon has seeds only there.
    SinglePole { empty_pole: String },
    /// Seeds without an embedding vector, left out of the lexicon.
    DroppedSeeds { words: Vec<String> },
}

/// Audit record attached to a built lexicon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub embedding_id: String,
    pub filter_digest: Option<String>,
    pub seed_digest: String,
    pub aggregation: PoleAggregation,
    pub candidates: usize,
    pub requested_positive: usize,
    pub requested_negative: usize,
    pub expanded_positive: usize,
    pub expanded_negative: usize,
    pub dropped_seeds: Vec<String>,
    pub warnings: Vec<BuildWarning>,
}

/// Configurable front end to [`build_lexicon`].
#[derive(Debug, Clone, Default)]
pub struct LexiconBuilder {
    pub aggregation: PoleAggregation,
    /// Recorded in provenance; usually a digest of the embedding file.
    pub embedding_id: Option<String>,
    pub filter_digest: Option<String>,
}

impl LexiconBuilder {
    /// Raw scores of every candidate that is not a seed word, in candidate
    /// order. Candidates listed twice are scored once.
    pub fn score_candidates(
        &self,
        resolved: &ResolvedSeeds,
        seeds: &SeedSet,
        candidates: &CandidateVocab,
        table: &EmbeddingTable,
    ) -> Vec<(usize, f64)> {
        let direction = resolved.direction(table, self.aggregation);
        let mut seen = HashSet::with_capacity(candidates.len());
        let positions: Vec<usize> = candidates
            .positions()
            .iter()
            .copied()
            .filter(|&p| seen.insert(p) && !seeds.contains(table.word(p)))
            .collect();
        positions
            .par_iter()
            .map(|&p| (p, dot(table.vector(p), &direction)))
            .collect()
    }

    pub fn build(
        &self,
        seeds: &SeedSet,
        candidates: &CandidateVocab,
        table: &EmbeddingTable,
        positive_size: usize,
        negative_size: usize,
    ) -> Result<Lexicon> {
        let resolved = ResolvedSeeds::resolve(seeds, table)?;
        let scored = self.score_candidates(&resolved, seeds, candidates, table);

        let by_word = |a: &(usize, f64), b: &(usize, f64)| table.word(a.0).cmp(table.word(b.0));
        let mut positive: Vec<(usize, f64)> =
            scored.iter().copied().filter(|&(_, s)| s > 0.0).collect();
        positive.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| by_word(a, b)));
        let mut negative: Vec<(usize, f64)> =
            scored.iter().copied().filter(|&(_, s)| s < 0.0).collect();
        negative.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| by_word(a, b)));

        let mut warnings = Vec::new();
        for (pole, selected, requested) in [
            (Pole::Positive, &mut positive, positive_size),
            (Pole::Negative, &mut negative, negative_size),
        ] {
            let label = seeds.label(pole).to_string();
            if requested == 0 {
                warnings.push(BuildWarning::SinglePole { empty_pole: label });
            } else if selected.len() < requested {
                warn!(
                    "{}: only {} candidates for pole {label:?}, {requested} requested",
                    seeds.concept(),
                    selected.len()
                );
                warnings.push(BuildWarning::PoleTruncated {
                    pole: label,
                    requested,
                    available: selected.len(),
                });
            }
            selected.truncate(requested);
        }
        if !resolved.dropped.is_empty() {
            warnings.push(BuildWarning::DroppedSeeds {
                words: resolved.dropped.clone(),
            });
        }

        let raw: Vec<RawPolarityScore> = positive
            .iter()
            .chain(&negative)
            .map(|&(p, score)| RawPolarityScore {
                word: table.word(p).to_string(),
                score,
            })
            .collect();
        let valences = if raw.is_empty() {
            Vec::new()
        } else {
            normalize_valences(&raw)?
        };

        let mut entries: Vec<LexiconEntry> = raw
            .into_iter()
            .zip(valences)
            .map(|(r, valence)| LexiconEntry {
                pole: seeds.label(if valence > 0.0 { Pole::Positive } else { Pole::Negative }).to_string(),
                word: r.word,
                valence,
                seed: false,
            })
            .collect();
        for (pole, positions) in [
            (Pole::Positive, &resolved.positive),
            (Pole::Negative, &resolved.negative),
        ] {
            entries.extend(positions.iter().map(|&p| LexiconEntry {
                word: table.word(p).to_string(),
                valence: pole.sign(),
                seed: true,
                pole: seeds.label(pole).to_string(),
            }));
        }

        let provenance = Provenance {
            embedding_id: self.embedding_id.clone().unwrap_or_default(),
            filter_digest: self.filter_digest.clone(),
            seed_digest: seeds.digest(),
            aggregation: self.aggregation,
            candidates: candidates.len(),
            requested_positive: positive_size,
            requested_negative: negative_size,
            expanded_positive: positive.len(),
            expanded_negative: negative.len(),
            dropped_seeds: resolved.dropped,
            warnings,
        };
        Ok(Lexicon::new(
            seeds.concept(),
            seeds.positive_label(),
            seeds.negative_label(),
            entries,
        )?
        .with_provenance(provenance))
    }
}

/// Expand `seeds` into a lexicon of `positive_size` + `negative_size` words
/// taken from `candidates`, plus the resolvable seeds themselves.
pub fn build_lexicon(
    seeds: &SeedSet,
    candidates: &CandidateVocab,
    table: &EmbeddingTable,
    positive_size: usize,
    negative_size: usize,
) -> Result<Lexicon> {
    LexiconBuilder::default().build(seeds, candidates, table, positive_size, negative_size)
}
