//! Declarative run configuration (TOML).
//!
//! Relative paths inside a config file are resolved against the file's
//! directory. Every section is optional; each command checks that the parts
//! it needs are present.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use seedlex::embedding::{EmbeddingFormat, VocabFilterConfig};
use seedlex::eval::Holdout;
use seedlex::lexicon::{PoleAggregation, SeedSet};
use seedlex::scorer::{Denominator, ScoreMode};

use crate::UsageError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub output_dir: Option<PathBuf>,
    /// Master seed for every random draw.
    pub seed: u64,
    pub embeddings: Option<EmbeddingsConfig>,
    pub filter: VocabFilterConfig,
    pub seeds: Option<SeedsConfig>,
    pub sizes: SizesConfig,
    pub scoring: ScoringConfig,
    pub eval: EvalConfig,
    pub experiment: ExperimentConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingsConfig {
    pub path: PathBuf,
    pub format: EmbeddingFormat,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedsConfig {
    pub concept: String,
    #[serde(default = "default_positive")]
    pub positive_label: String,
    #[serde(default = "default_negative")]
    pub negative_label: String,
    /// CSV with a `word,pole` header.
    pub path: Option<PathBuf>,
    /// Alternatively, one word per line for each pole.
    pub positive_path: Option<PathBuf>,
    pub negative_path: Option<PathBuf>,
}

fn default_positive() -> String {
    "Positive".into()
}

fn default_negative() -> String {
    "Negative".into()
}

impl SeedsConfig {
    pub fn load(&self) -> anyhow::Result<SeedSet> {
        let seeds = match (&self.path, &self.positive_path, &self.negative_path) {
            (Some(path), None, None) => {
                SeedSet::from_csv(path, &self.concept, &self.positive_label, &self.negative_label)?
            }
            (None, Some(pos), Some(neg)) => SeedSet::from_word_lists(
                pos,
                neg,
                &self.concept,
                &self.positive_label,
                &self.negative_label,
            )?,
            _ => {
                return Err(UsageError::new(
                    "[seeds] needs either `path` or both `positive_path` and `negative_path`",
                )
                .into())
            }
        };
        Ok(seeds)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SizesConfig {
    pub positive: usize,
    pub negative: usize,
    pub aggregation: PoleAggregation,
}

impl Default for SizesConfig {
    fn default() -> Self {
        SizesConfig {
            positive: 1000,
            negative: 1000,
            aggregation: PoleAggregation::Sum,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoringConfig {
    pub mode: ScoreMode,
    pub denominator: Denominator,
    pub corpus: Option<PathBuf>,
    /// Lexicon to score with; defaults to the built `<concept>.csv`.
    pub lexicon: Option<PathBuf>,
    /// Frame lexicons; when given, frame predictions are written too.
    pub frames: Vec<PathBuf>,
    /// Write the top matched words per document when non-zero.
    pub top_words: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PredictionKind {
    /// Numeric score; classification goes through a logistic model.
    #[default]
    Score,
    /// Categorical label compared directly with the truth.
    Label,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// `regression`, `classification` or `frames`.
    pub task: Option<String>,
    /// CSV with the id and truth columns (and the prediction column unless
    /// `predictions` is given).
    pub input: Option<PathBuf>,
    /// CSV joined to `input` by id, supplying the prediction column.
    pub predictions: Option<PathBuf>,
    pub id_column: String,
    pub truth_column: String,
    pub prediction_column: Option<String>,
    pub prediction: PredictionKind,
    /// Leave out documents flagged `no_match` in the predictions.
    pub exclude_no_match: bool,
    pub lexicon_name: Option<String>,
    pub test_name: Option<String>,
    pub max_iterations: usize,
    pub learning_rate: f64,
    pub holdout: Option<Holdout>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            task: None,
            input: None,
            predictions: None,
            id_column: "doc_id".into(),
            truth_column: "truth".into(),
            prediction_column: None,
            prediction: PredictionKind::Score,
            exclude_no_match: false,
            lexicon_name: None,
            test_name: None,
            max_iterations: 100_000,
            learning_rate: 1.0,
            holdout: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub ks: Vec<usize>,
    pub runs_per_k: usize,
    /// Labelled corpus: CSV with `doc_id`, `text` and the truth column.
    pub corpus: Option<PathBuf>,
    pub truth_column: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            ks: vec![5, 10, 25, 50, 75],
            runs_per_k: 6,
            corpus: None,
            truth_column: "truth".into(),
        }
    }
}

impl RunConfig {
    /// Parse a config file and resolve its relative paths.
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| UsageError::new(format!("cannot read config {}: {e}", path.display())))?;
        let mut config: RunConfig = toml::from_str(&text)
            .map_err(|e| UsageError::new(format!("invalid config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        config.resolve(base);
        Ok(config)
    }

    fn resolve(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        let fix_opt = |p: &mut Option<PathBuf>| {
            if let Some(p) = p {
                fix(p)
            }
        };
        fix_opt(&mut self.output_dir);
        if let Some(e) = &mut self.embeddings {
            fix(&mut e.path);
        }
        fix_opt(&mut self.filter.allowlist_path);
        fix_opt(&mut self.filter.blocklist_path);
        if let Some(s) = &mut self.seeds {
            fix_opt(&mut s.path);
            fix_opt(&mut s.positive_path);
            fix_opt(&mut s.negative_path);
        }
        fix_opt(&mut self.scoring.corpus);
        fix_opt(&mut self.scoring.lexicon);
        self.scoring.frames.iter_mut().for_each(fix);
        fix_opt(&mut self.eval.input);
        fix_opt(&mut self.eval.predictions);
        fix_opt(&mut self.experiment.corpus);
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn embeddings(&self) -> anyhow::Result<&EmbeddingsConfig> {
        let e = self
            .embeddings
            .as_ref()
            .ok_or_else(|| UsageError::new("config has no [embeddings] section"))?;
        require_file(&e.path, "embeddings")?;
        Ok(e)
    }

    pub fn seeds(&self) -> anyhow::Result<&SeedsConfig> {
        let s = self
            .seeds
            .as_ref()
            .ok_or_else(|| UsageError::new("config has no [seeds] section"))?;
        for p in [&s.path, &s.positive_path, &s.negative_path].into_iter().flatten() {
            require_file(p, "seeds")?;
        }
        Ok(s)
    }

    pub fn check_filter_files(&self) -> anyhow::Result<()> {
        if let Some(p) = &self.filter.allowlist_path {
            require_file(p, "allowlist")?;
        }
        if let Some(p) = &self.filter.blocklist_path {
            require_file(p, "blocklist")?;
        }
        Ok(())
    }

    pub fn score_mode(&self) -> ScoreMode {
        self.scoring.mode
    }
}

/// Usage error naming `what` and the missing path.
pub fn require_file(path: &Path, what: &str) -> anyhow::Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(UsageError::new(format!("{what} file not found: {}", path.display())).into())
    }
}
