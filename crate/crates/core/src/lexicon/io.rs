//! Lexicon CSV (`word,valence,seed,sentiment`) and seed-file readers.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::{Lexicon, LexiconEntry, SeedSet};
use crate::embedding::read_word_list;
use crate::error::{Error, Result};

pub const LEXICON_HEADER: [&str; 4] = ["word", "valence", "seed", "sentiment"];

/// Write `lexicon` as CSV, one entry per row in lexicon order, LF endings.
///
/// Valences use the shortest representation that parses back to the same
/// `f64`, so export followed by import is lossless.
pub fn export_csv<W: Write>(lexicon: &Lexicon, writer: W) -> Result<()> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    out.write_record(LEXICON_HEADER)?;
    for e in lexicon.entries() {
        out.write_record([
            e.word.as_str(),
            &e.valence.to_string(),
            if e.seed { "1" } else { "0" },
            e.pole.as_str(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_lexicon(lexicon: &Lexicon, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    export_csv(lexicon, BufWriter::new(file))
}

/// Parse a lexicon CSV. `source` names the input in error messages.
///
/// A leading unnamed index column (as written by R's `write.csv`) is
/// accepted and ignored. Pole labels are taken from the rows; when a pole
/// has no rows it gets the label `Positive` / `Negative`.
pub fn import_csv<R: Read>(
    reader: R,
    concept: impl Into<String>,
    source: impl Into<PathBuf>,
) -> Result<Lexicon> {
    let source = source.into();
    let mut csv = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let header = csv.headers()?.clone();
    let columns: Vec<&str> = header.iter().map(str::trim).collect();
    let offset = if columns == LEXICON_HEADER {
        0
    } else if columns.len() == 5 && columns[1..] == LEXICON_HEADER {
        1
    } else {
        return Err(Error::Parse {
            path: source,
            line: 1,
            message: format!("expected header {:?}, found {:?}", LEXICON_HEADER.join(","), columns.join(",")),
        });
    };

    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    let mut positive_label: Option<String> = None;
    let mut negative_label: Option<String> = None;
    for record in csv.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let fail = |message: String| Error::Parse {
            path: source.clone(),
            line,
            message,
        };
        if record.len() != LEXICON_HEADER.len() + offset {
            return Err(fail(format!("expected {} fields, found {}", LEXICON_HEADER.len() + offset, record.len())));
        }
        let field = |i: usize| record[i + offset].trim();

        let word = field(0).to_string();
        if word.is_empty() {
            return Err(fail("empty word".into()));
        }
        let valence: f64 = field(1)
            .parse()
            .map_err(|_| fail(format!("invalid valence {:?}", field(1))))?;
        if !valence.is_finite() || valence.abs() > 1.0 {
            return Err(fail(format!("valence {valence} outside [-1, 1]")));
        }
        if valence == 0.0 {
            return Err(fail(format!("{word:?} has zero valence")));
        }
        let seed = match field(2) {
            "1" => true,
            "0" => false,
            other => return Err(fail(format!("seed flag must be 0 or 1, found {other:?}"))),
        };
        let pole = field(3).to_string();
        let slot = if valence > 0.0 {
            &mut positive_label
        } else {
            &mut negative_label
        };
        match slot {
            Some(label) if *label != pole => {
                return Err(fail(format!(
                    "pole label {pole:?} conflicts with earlier {label:?}"
                )))
            }
            Some(_) => {}
            None => *slot = Some(pole.clone()),
        }
        if !seen.insert(word.clone()) {
            return Err(fail(format!("duplicate word {word:?}")));
        }
        entries.push(LexiconEntry {
            word,
            valence,
            seed,
            pole,
        });
    }
    if entries.is_empty() {
        return Err(Error::Parse {
            path: source,
            line: 1,
            message: "lexicon has no entries".into(),
        });
    }
    Lexicon::new(
        concept,
        positive_label.unwrap_or_else(|| "Positive".into()),
        negative_label.unwrap_or_else(|| "Negative".into()),
        entries,
    )
}

/// Read a lexicon CSV; the concept name is the file stem.
pub fn read_lexicon(path: impl AsRef<Path>) -> Result<Lexicon> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let concept = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    import_csv(BufReader::new(file), concept, path)
}

impl SeedSet {
    /// Read seeds from a CSV with a `word,pole` header; `pole` values must be
    /// one of the two labels.
    pub fn from_csv(
        path: impl AsRef<Path>,
        concept: &str,
        positive_label: &str,
        negative_label: &str,
    ) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut csv = csv::Reader::from_reader(BufReader::new(file));
        let header: Vec<String> = csv.headers()?.iter().map(|h| h.trim().to_string()).collect();
        if header != ["word", "pole"] {
            return Err(Error::Parse {
                path: path.into(),
                line: 1,
                message: format!("expected header \"word,pole\", found {:?}", header.join(",")),
            });
        }
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for record in csv.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            let (word, pole) = (record[0].trim(), record[1].trim());
            if pole == positive_label {
                positive.push(word.to_string());
            } else if pole == negative_label {
                negative.push(word.to_string());
            } else {
                return Err(Error::Parse {
                    path: path.into(),
                    line,
                    message: format!(
                        "pole {pole:?} is neither {positive_label:?} nor {negative_label:?}"
                    ),
                });
            }
        }
        SeedSet::new(concept, positive_label, negative_label, positive, negative)
    }

    /// Read seeds from two one-word-per-line files (`#` comments allowed).
    /// Words are sorted so the result does not depend on line order.
    pub fn from_word_lists(
        positive_path: impl AsRef<Path>,
        negative_path: impl AsRef<Path>,
        concept: &str,
        positive_label: &str,
        negative_label: &str,
    ) -> Result<Self> {
        let mut positive: Vec<String> = read_word_list(positive_path.as_ref())?.into_iter().collect();
        let mut negative: Vec<String> = read_word_list(negative_path.as_ref())?.into_iter().collect();
        positive.sort();
        negative.sort();
        SeedSet::new(concept, positive_label, negative_label, positive, negative)
    }
}
