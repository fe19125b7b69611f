use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DocumentScore, FramePrediction, MatchAttribution, TokenizedDoc};
use crate::error::{Error, Result};

pub const SCORE_HEADER: [&str; 8] = [
    "doc_id",
    "concept",
    "mode",
    "score",
    "matched_pos",
    "matched_neg",
    "matched_total",
    "no_match",
];

/// How a corpus file is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    /// CSV with `doc_id` and `text` columns.
    Csv,
    /// One document per line; the 1-based line number is the id.
    Lines,
}

impl CorpusFormat {
    /// `.csv` files are CSV, anything else is one document per line.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => CorpusFormat::Csv,
            _ => CorpusFormat::Lines,
        }
    }
}

/// Read and tokenize a corpus.
pub fn read_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Vec<TokenizedDoc>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    match format {
        CorpusFormat::Lines => BufReader::new(file)
            .lines()
            .enumerate()
            .map(|(i, line)| {
                let line = line.map_err(|e| Error::io(path, e))?;
                Ok(TokenizedDoc::new((i + 1).to_string(), &line))
            })
            .collect(),
        CorpusFormat::Csv => {
            let mut csv = csv::ReaderBuilder::new()
                .flexible(true)
                .from_reader(BufReader::new(file));
            let headers = csv.headers()?.clone();
            let column = |name: &str| {
                headers
                    .iter()
                    .position(|h| h.trim() == name)
                    .ok_or_else(|| Error::Parse {
                        path: path.into(),
                        line: 1,
                        message: format!("missing column {name:?}"),
                    })
            };
            let (id_col, text_col) = (column("doc_id")?, column("text")?);
            let mut docs = Vec::new();
            for record in csv.records() {
                let record = record?;
                let line = record.position().map_or(0, |p| p.line());
                if record.len() != headers.len() {
                    return Err(Error::Parse {
                        path: path.into(),
                        line,
                        message: format!(
                            "expected {} fields, found {}",
                            headers.len(),
                            record.len()
                        ),
                    });
                }
                let id = record[id_col].trim();
                if id.is_empty() {
                    return Err(Error::Parse {
                        path: path.into(),
                        line,
                        message: "empty doc_id".into(),
                    });
                }
                docs.push(TokenizedDoc::new(id, &record[text_col]));
            }
            Ok(docs)
        }
    }
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn write_scores<W: Write>(scores: &[DocumentScore], w: W) -> Result<()> {
    let mut out = writer(w);
    out.write_record(SCORE_HEADER)?;
    for s in scores {
        out.write_record([
            s.doc_id.clone(),
            s.concept.clone(),
            s.mode.to_string(),
            s.score.to_string(),
            s.matched_positive.to_string(),
            s.matched_negative.to_string(),
            s.matched_total.to_string(),
            u8::from(s.no_match).to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Rows `doc_id,word,valence,occurrences,contribution`.
pub fn write_attributions<'a, W: Write>(
    rows: impl IntoIterator<Item = (&'a str, &'a [MatchAttribution])>,
    w: W,
) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["doc_id", "word", "valence", "occurrences", "contribution"])?;
    for (doc_id, attributions) in rows {
        for a in attributions {
            out.write_record([
                doc_id.to_string(),
                a.word.clone(),
                a.valence.to_string(),
                a.occurrences.to_string(),
                a.contribution.to_string(),
            ])?;
        }
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Rows `doc_id,predicted_frame,tie,<frame>...` with one count column per frame.
pub fn write_frame_predictions<W: Write>(predictions: &[FramePrediction], w: W) -> Result<()> {
    let mut out = writer(w);
    let mut header = vec!["doc_id".to_string(), "predicted_frame".into(), "tie".into()];
    if let Some(first) = predictions.first() {
        header.extend(first.frame_sums.iter().map(|(name, _)| name.clone()));
    }
    out.write_record(&header)?;
    for p in predictions {
        let mut row = vec![
            p.doc_id.clone(),
            p.predicted_frame.clone(),
            u8::from(p.tie).to_string(),
        ];
        row.extend(p.frame_sums.iter().map(|(_, s)| s.to_string()));
        out.write_record(&row)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}
