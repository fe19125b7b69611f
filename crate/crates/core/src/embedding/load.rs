use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use log::warn;
use serde::{Deserialize, Serialize};

use super::{EmbeddingTable, RowRejection, TableBuilder};
use crate::error::{Error, Result};

/// Text embedding formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingFormat {
    /// `word v1 ... vD` rows, no header.
    GloveText,
    /// A `vocab_count D` header line followed by GloVe-style rows.
    FasttextVec,
}

impl FromStr for EmbeddingFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "glove-text" | "glove" => Ok(EmbeddingFormat::GloveText),
            "fasttext-vec" | "fasttext" | "vec" => Ok(EmbeddingFormat::FasttextVec),
            other => Err(Error::InvalidArgument(format!(
                "unknown embedding format {other:?} (expected glove-text or fasttext-vec)"
            ))),
        }
    }
}

/// Bookkeeping from one pass over an embedding file.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadStats {
    /// Non-blank data rows seen (header excluded).
    pub rows_read: usize,
    /// Rows dropped for a wrong dimension, unparsable or non-finite
    /// components, or a zero vector.
    pub rows_skipped: usize,
    /// Rows whose (lowercased) word was already present.
    pub duplicates: usize,
    /// `(vocab_count, dimension)` declared by a fastText header.
    pub header: Option<(usize, usize)>,
    /// The header disagreed with the body; the body was trusted.
    pub header_mismatch: bool,
}

/// Load an embedding file. See [`read_embeddings`].
pub fn load_embeddings(
    path: impl AsRef<Path>,
    format: EmbeddingFormat,
) -> Result<(EmbeddingTable, LoadStats)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_embeddings(BufReader::new(file), format, path)
}

/// Parse embeddings from a reader.
///
/// The dimension is taken from the first row that parses as a word followed
/// by numbers. Rows that disagree with it are skipped and counted; more than
/// 1% skipped rows aborts the load. `source` is only used in messages.
pub fn read_embeddings<R: BufRead>(
    reader: R,
    format: EmbeddingFormat,
    source: impl Into<PathBuf>,
) -> Result<(EmbeddingTable, LoadStats)> {
    let source = source.into();
    let mut stats = LoadStats::default();
    let mut builder = TableBuilder::default();
    let mut expect_header = format == EmbeddingFormat::FasttextVec;
    let mut raw = Vec::new();

    for line in reader.lines() {
        let line = line.map_err(|e| Error::io(&source, e))?;
        if line.trim().is_empty() {
            continue;
        }
        if expect_header {
            expect_header = false;
            stats.header = Some(parse_header(&line).ok_or_else(|| Error::BadHeader {
                path: source.clone(),
                line: line.clone(),
            })?);
            continue;
        }

        stats.rows_read += 1;
        let mut fields = line.split_ascii_whitespace();
        let Some(word) = fields.next() else {
            stats.rows_skipped += 1;
            continue;
        };
        raw.clear();
        let parsed: std::result::Result<(), _> = fields.try_for_each(|f| {
            f.parse::<f64>().map(|v| raw.push(v))
        });
        if parsed.is_err() || raw.is_empty() {
            stats.rows_skipped += 1;
            continue;
        }
        match builder.push(word, &raw, stats.rows_read) {
            Ok(true) => {}
            Ok(false) => stats.duplicates += 1,
            Err(RowRejection::Dimension { .. }) | Err(RowRejection::Degenerate) => {
                stats.rows_skipped += 1
            }
        }
    }

    if stats.rows_skipped * 100 > stats.rows_read {
        return Err(Error::TooManyMalformedRows {
            path: source,
            skipped: stats.rows_skipped,
            total: stats.rows_read,
        });
    }
    if stats.rows_skipped > 0 {
        warn!(
            "{}: skipped {} malformed rows",
            source.display(),
            stats.rows_skipped
        );
    }
    if stats.duplicates > 0 {
        warn!(
            "{}: ignored {} duplicate words",
            source.display(),
            stats.duplicates
        );
    }

    if let Some((count, dim)) = stats.header {
        let body_dim = builder.dimension().unwrap_or(0);
        if count != stats.rows_read || dim != body_dim {
            stats.header_mismatch = true;
            warn!(
                "{}: header declares {count} x {dim} but body has {} rows of dimension {body_dim}",
                source.display(),
                stats.rows_read
            );
        }
    }

    let table = builder
        .finish()
        .ok_or(Error::EmptyEmbeddings { path: source })?;
    Ok((table, stats))
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut fields = line.split_ascii_whitespace();
    let count = fields.next()?.parse().ok()?;
    let dim = fields.next()?.parse().ok()?;
    fields.next().is_none().then_some((count, dim))
}
