//! Pretrained word embeddings: loading, the normalized vector table,
//! candidate-vocabulary filtering and similarity primitives.
//!
//! All vectors are scaled to unit length when the table is built, so a
//! cosine similarity is a plain dot product and a sum of cosines against a
//! set of words equals one dot product against the sum of their vectors.

mod frequency;
mod load;
mod vocab;

use std::collections::HashMap;

pub use self::frequency::{estimate_frequency, Mandelbrot};
pub use self::load::{load_embeddings, read_embeddings, EmbeddingFormat, LoadStats};
pub use self::vocab::{filter_vocabulary, read_word_list, CandidateVocab, VocabFilterConfig};

use crate::error::{Error, Result};

/// Tolerance on the unit-norm invariant of stored vectors.
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Borrowed view of one row of an [`EmbeddingTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WordVector<'a> {
    pub word: &'a str,
    pub vector: &'a [f64],
    /// 1-based position of the word in the source file.
    pub rank: usize,
}

impl WordVector<'_> {
    pub fn cosine(&self, other: &WordVector<'_>) -> Result<f64> {
        cosine(self.vector, other.vector)
    }
}

/// Cosine similarity of two unit vectors, clamped to `[-1, 1]`.
///
/// Both arguments must already be unit-normalized (as every vector held by
/// an [`EmbeddingTable`] is). The expression is evaluated in component order,
/// so `cosine(a, b) == cosine(b, a)` bit for bit.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(dot(a, b).clamp(-1.0, 1.0))
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Immutable word to unit-vector map that keeps source (frequency-rank) order.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dimension: usize,
    words: Vec<String>,
    ranks: Vec<usize>,
    data: Vec<f64>,
    index: HashMap<String, usize>,
}

impl EmbeddingTable {
    /// Build a table from `(word, raw vector)` rows given in rank order.
    ///
    /// Words are lowercased and vectors normalized. Unlike the file loader
    /// this is strict: a ragged, non-finite or zero vector is an error.
    /// Duplicate words keep their first occurrence.
    pub fn from_rows<I, S>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: AsRef<str>,
    {
        let mut builder = TableBuilder::default();
        for (position, (word, raw)) in rows.into_iter().enumerate() {
            let word = word.as_ref();
            match builder.push(word, &raw, position + 1) {
                Ok(_) => {}
                Err(RowRejection::Dimension { expected, found }) => {
                    return Err(Error::DimensionMismatch {
                        left: expected,
                        right: found,
                    })
                }
                Err(RowRejection::Degenerate) => {
                    return Err(Error::InvalidArgument(format!(
                        "vector for {word:?} is zero or not finite"
                    )))
                }
            }
        }
        builder
            .finish()
            .ok_or_else(|| Error::InvalidArgument("no embedding rows".into()))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn get(&self, word: &str) -> Option<WordVector<'_>> {
        self.position(word).map(|i| self.entry(i))
    }

    /// Row `i` in table order. Panics when out of bounds.
    pub fn entry(&self, i: usize) -> WordVector<'_> {
        WordVector {
            word: &self.words[i],
            vector: self.vector(i),
            rank: self.ranks[i],
        }
    }

    pub fn word(&self, i: usize) -> &str {
        &self.words[i]
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.data[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn iter(&self) -> impl Iterator<Item = WordVector<'_>> + '_ {
        (0..self.len()).map(move |i| self.entry(i))
    }

    /// Cosine similarity between two words of the table.
    pub fn similarity(&self, a: &str, b: &str) -> Result<f64> {
        let a = self.get(a).ok_or_else(|| Error::UnknownWord(a.into()))?;
        let b = self.get(b).ok_or_else(|| Error::UnknownWord(b.into()))?;
        a.cosine(&b)
    }
}

pub(crate) enum RowRejection {
    Dimension { expected: usize, found: usize },
    Degenerate,
}

/// Accumulates normalized rows; shared by `from_rows` and the file loader.
#[derive(Default)]
pub(crate) struct TableBuilder {
    dimension: Option<usize>,
    words: Vec<String>,
    ranks: Vec<usize>,
    data: Vec<f64>,
    index: HashMap<String, usize>,
}

impl TableBuilder {
    pub(crate) fn dimension(&self) -> Option<usize> {
        self.dimension
    }

    /// Returns `Ok(false)` when the word is a duplicate and was ignored.
    pub(crate) fn push(
        &mut self,
        word: &str,
        raw: &[f64],
        rank: usize,
    ) -> Result<bool, RowRejection> {
        let dimension = *self.dimension.get_or_insert(raw.len());
        if raw.len() != dimension || dimension == 0 {
            return Err(RowRejection::Dimension {
                expected: dimension,
                found: raw.len(),
            });
        }
        if raw.iter().any(|v| !v.is_finite()) {
            return Err(RowRejection::Degenerate);
        }
        let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(RowRejection::Degenerate);
        }
        let word = word.to_lowercase();
        if self.index.contains_key(&word) {
            return Ok(false);
        }
        self.index.insert(word.clone(), self.words.len());
        self.words.push(word);
        self.ranks.push(rank);
        self.data.extend(raw.iter().map(|v| v / norm));
        Ok(true)
    }

    pub(crate) fn finish(self) -> Option<EmbeddingTable> {
        let dimension = self.dimension?;
        if self.words.is_empty() {
            return None;
        }
        Some(EmbeddingTable {
            dimension,
            words: self.words,
            ranks: self.ranks,
            data: self.data,
            index: self.index,
        })
    }
}
