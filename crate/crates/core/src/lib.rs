//! Seed-word lexicon induction over pretrained word embeddings.
//!
//! A handful of seed words for each of two opposing poles is expanded into a
//! full lexicon by ranking the embedding vocabulary on its summed cosine
//! similarity to one pole minus the other. Lexicons score documents as
//! bags of words (polarity or valence mode), predict moral frames, and the
//! [`eval`] module measures the results against labelled data.
//!
//! ```
//! use seedlex::embedding::{CandidateVocab, EmbeddingTable};
//! use seedlex::lexicon::{build_lexicon, SeedSet};
//! use seedlex::scorer::{score_document, ScoreMode, TokenizedDoc};
//!
//! let table = EmbeddingTable::from_rows(vec![
//!     ("good", vec![1.0, 0.1]),
//!     ("bad", vec![0.1, 1.0]),
//!     ("great", vec![0.9, 0.2]),
//!     ("awful", vec![0.2, 0.9]),
//! ])?;
//! let seeds = SeedSet::new("sentiment", "Positive", "Negative", ["good"], ["bad"])?;
//! let lexicon = build_lexicon(&seeds, &CandidateVocab::all(&table), &table, 1, 1)?;
//!
//! let doc = TokenizedDoc::new("d1", "A great day, not an awful one. Great!");
//! let score = score_document(&doc, &lexicon, ScoreMode::Polarity);
//! assert_eq!(score.matched_total, 3);
//! assert!((score.score - 1.0 / 3.0).abs() < 1e-12);
//! # Ok::<(), seedlex::Error>(())
//! ```

pub mod digest;
pub mod embedding;
mod error;
pub mod eval;
pub mod lexicon;
pub mod scorer;

pub use error::{Error, Result};
