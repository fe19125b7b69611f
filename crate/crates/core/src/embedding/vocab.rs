use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::EmbeddingTable;
use crate::error::{Error, Result};

/// Rules that turn an embedding vocabulary into lexicon candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VocabFilterConfig {
    /// Number of most frequent words (by rank) to drop.
    pub drop_top_ranks: usize,
    /// Minimum length in characters.
    pub min_word_length: usize,
    /// Accepted spellings; when set, words not listed are dropped.
    pub allowlist_path: Option<PathBuf>,
    /// Words to exclude outright (proper nouns and the like).
    pub blocklist_path: Option<PathBuf>,
    /// Keep only letters with internal apostrophes or hyphens.
    pub alpha_only: bool,
}

impl Default for VocabFilterConfig {
    fn default() -> Self {
        VocabFilterConfig {
            drop_top_ranks: 50,
            min_word_length: 2,
            allowlist_path: None,
            blocklist_path: None,
            alpha_only: true,
        }
    }
}

/// Ordered subset of an embedding table's rows.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CandidateVocab {
    positions: Vec<usize>,
}

impl CandidateVocab {
    /// Every row of the table.
    pub fn all(table: &EmbeddingTable) -> Self {
        CandidateVocab {
            positions: (0..table.len()).collect(),
        }
    }

    /// Candidates from explicit words, which must all be in the table.
    pub fn from_words<S: AsRef<str>>(
        table: &EmbeddingTable,
        words: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let positions = words
            .into_iter()
            .map(|w| {
                let w = w.as_ref();
                table
                    .position(w)
                    .ok_or_else(|| Error::UnknownWord(w.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok(CandidateVocab { positions })
    }

    /// Row positions in the owning table.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn words<'t>(&'t self, table: &'t EmbeddingTable) -> impl Iterator<Item = &'t str> + 't {
        self.positions.iter().map(move |&i| table.word(i))
    }
}

/// Apply `config` to `table`, preserving rank order.
pub fn filter_vocabulary(
    table: &EmbeddingTable,
    config: &VocabFilterConfig,
) -> Result<CandidateVocab> {
    if config.min_word_length == 0 {
        return Err(Error::InvalidArgument(
            "min_word_length must be at least 1".into(),
        ));
    }
    let allow = config
        .allowlist_path
        .as_deref()
        .map(read_word_list)
        .transpose()?;
    let block = config
        .blocklist_path
        .as_deref()
        .map(read_word_list)
        .transpose()?
        .unwrap_or_default();

    let positions = table
        .iter()
        .enumerate()
        .filter(|(_, v)| v.rank > config.drop_top_ranks)
        .filter(|(_, v)| v.word.chars().count() >= config.min_word_length)
        .filter(|(_, v)| !config.alpha_only || is_alpha_word(v.word))
        .filter(|(_, v)| !block.contains(v.word))
        .filter(|(_, v)| allow.as_ref().map_or(true, |a| a.contains(v.word)))
        .map(|(i, _)| i)
        .collect();
    Ok(CandidateVocab { positions })
}

/// Letters, optionally joined by single apostrophes or hyphens.
fn is_alpha_word(word: &str) -> bool {
    let chars: Vec<char> = word.chars().collect();
    !chars.is_empty()
        && chars.iter().enumerate().all(|(i, &c)| {
            c.is_alphabetic()
                || (matches!(c, '\'' | '-')
                    && i > 0
                    && i + 1 < chars.len()
                    && chars[i - 1].is_alphabetic()
                    && chars[i + 1].is_alphabetic())
        })
}

/// Read a one-word-per-line list. Blank lines and `#` comments are ignored;
/// words are lowercased.
pub fn read_word_list(path: &Path) -> Result<HashSet<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_lowercase)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn table(words: &[&str]) -> EmbeddingTable {
        EmbeddingTable::from_rows(
            words
                .iter()
                .enumerate()
                .map(|(i, w)| (*w, vec![1.0, i as f64])),
        )
        .unwrap()
    }

    fn permissive() -> VocabFilterConfig {
        VocabFilterConfig {
            drop_top_ranks: 0,
            min_word_length: 1,
            alpha_only: false,
            ..Default::default()
        }
    }

    fn words(t: &EmbeddingTable, c: &CandidateVocab) -> Vec<String> {
        c.words(t).map(String::from).collect()
    }

    #[test]
    fn drops_top_ranks() {
        let t = table(&["the", "good", "bad"]);
        let config = VocabFilterConfig {
            drop_top_ranks: 1,
            ..permissive()
        };
        assert_eq!(words(&t, &filter_vocabulary(&t, &config).unwrap()), ["good", "bad"]);
    }

    #[test]
    fn alpha_only_keeps_internal_hyphens() {
        let t = table(&["good", "3rd", "semi-good", "-ish", "it's", "a--b"]);
        let config = VocabFilterConfig {
            alpha_only: true,
            ..permissive()
        };
        assert_eq!(
            words(&t, &filter_vocabulary(&t, &config).unwrap()),
            ["good", "semi-good", "it's"]
        );
    }

    #[test]
    fn min_length() {
        let t = table(&["a", "an", "and"]);
        let config = VocabFilterConfig {
            min_word_length: 2,
            ..permissive()
        };
        assert_eq!(words(&t, &filter_vocabulary(&t, &config).unwrap()), ["an", "and"]);
    }

    #[test]
    fn allowlist_and_blocklist() {
        let mut allow = tempfile::NamedTempFile::new().unwrap();
        writeln!(allow, "# accepted spellings\nGood\nbad  # trailing comment\nugly").unwrap();
        let mut block = tempfile::NamedTempFile::new().unwrap();
        writeln!(block, "ugly").unwrap();

        let t = table(&["good", "bad", "ugly", "gud"]);
        let only_allow = VocabFilterConfig {
            allowlist_path: Some(allow.path().into()),
            ..permissive()
        };
        assert_eq!(
            words(&t, &filter_vocabulary(&t, &only_allow).unwrap()),
            ["good", "bad", "ugly"]
        );
        let both = VocabFilterConfig {
            blocklist_path: Some(block.path().into()),
            ..only_allow
        };
        assert_eq!(words(&t, &filter_vocabulary(&t, &both).unwrap()), ["good", "bad"]);
    }

    #[test]
    fn missing_list_file_is_an_error() {
        let t = table(&["good"]);
        let config = VocabFilterConfig {
            blocklist_path: Some("/no/such/blocklist.txt".into()),
            ..permissive()
        };
        assert!(matches!(filter_vocabulary(&t, &config), Err(Error::Io { .. })));
    }

    #[test]
    fn zero_min_length_is_rejected() {
        let t = table(&["good"]);
        let config = VocabFilterConfig {
            min_word_length: 0,
            ..permissive()
        };
        assert!(filter_vocabulary(&t, &config).is_err());
    }

    #[test]
    fn from_words_rejects_unknown() {
        let t = table(&["good"]);
        assert!(CandidateVocab::from_words(&t, ["good"]).is_ok());
        assert!(matches!(
            CandidateVocab::from_words(&t, ["bad"]),
            Err(Error::UnknownWord(_))
        ));
    }
}
