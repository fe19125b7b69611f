mod build;
mod compare;
mod eval;
mod experiment;
mod inspect;
mod score;

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Args;
use serde_json::{json, Value};

use seedlex::digest::{file_sha256, json_sha256};
use seedlex::embedding::{filter_vocabulary, load_embeddings, CandidateVocab, EmbeddingTable, LoadStats};

use crate::config::{RunConfig, SizesConfig};
use crate::output::file_name;

pub use self::build::build;
pub use self::compare::compare;
pub use self::eval::eval;
pub use self::experiment::seed_experiment;
pub use self::inspect::inspect;
pub use self::score::score;

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Expanded words for the positive pole.
    #[arg(long)]
    pub positive_size: Option<usize>,
    /// Expanded words for the negative pole.
    #[arg(long)]
    pub negative_size: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// `polarity` or `valence`.
    #[arg(long)]
    pub mode: Option<String>,
    /// Frame lexicon; repeat for each frame.
    #[arg(long = "frame")]
    pub frames: Vec<PathBuf>,
    /// Write the N strongest matched words per document.
    #[arg(long)]
    pub top_words: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// `regression`, `classification` or `frames`.
    #[arg(long)]
    pub task: Option<String>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub predictions: Option<PathBuf>,
    #[arg(long)]
    pub truth_column: Option<String>,
    /// `score` (numeric) or `label` (categorical) predictions.
    #[arg(long)]
    pub prediction: Option<String>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Keep seed words in the comparison.
    #[arg(long)]
    pub include_seeds: bool,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Seed counts, e.g. `5,10,25`.
    #[arg(long, value_delimiter = ',')]
    pub ks: Option<Vec<usize>>,
    #[arg(long)]
    pub runs_per_k: Option<usize>,
    /// Labelled corpus (`doc_id`, `text` and the truth column).
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    pub lexicon: PathBuf,
    /// Rows from each end.
    #[arg(short, default_value_t = 10)]
    pub k: usize,
    /// Include seed words.
    #[arg(long)]
    pub with_seeds: bool,
}

/// `{file, sha256}` for provenance records.
fn file_record(path: &Path) -> anyhow::Result<Value> {
    Ok(json!({
        "file": file_name(path),
        "sha256": file_sha256(path)?,
    }))
}

/// Embedding table plus everything the provenance record needs about it.
struct LoadedEmbeddings {
    table: EmbeddingTable,
    candidates: CandidateVocab,
    record: Value,
    embedding_id: String,
    filter_digest: String,
}

fn load_vocabulary(config: &RunConfig) -> anyhow::Result<LoadedEmbeddings> {
    let emb = config.embeddings()?;
    config.check_filter_files()?;
    let embedding_id = file_sha256(&emb.path)?;
    let (table, stats): (EmbeddingTable, LoadStats) = load_embeddings(&emb.path, emb.format)
        .with_context(|| format!("loading embeddings {}", emb.path.display()))?;
    log::info!(
        "loaded {} vectors of dimension {} ({} rows skipped)",
        table.len(),
        table.dimension(),
        stats.rows_skipped
    );
    let filter = &config.filter;
    let list = |p: &Option<PathBuf>| p.as_deref().map(file_record).transpose();
    let filter_record = json!({
        "drop_top_ranks": filter.drop_top_ranks,
        "min_word_length": filter.min_word_length,
        "alpha_only": filter.alpha_only,
        "allowlist": list(&filter.allowlist_path)?,
        "blocklist": list(&filter.blocklist_path)?,
    });
    let filter_digest = json_sha256(&filter_record);
    let candidates = filter_vocabulary(&table, filter)?;
    log::info!("{} candidate words after filtering", candidates.len());
    let record = json!({
        "embeddings": {
            "file": file_name(&emb.path),
            "format": emb.format,
            "sha256": embedding_id,
            "dimension": table.dimension(),
            "vectors": table.len(),
            "load": stats,
        },
        "filter": {
            "settings": filter_record,
            "digest": filter_digest,
            "candidates": candidates.len(),
        },
    });
    Ok(LoadedEmbeddings {
        table,
        candidates,
        record,
        embedding_id,
        filter_digest,
    })
}

fn sizes(config: &RunConfig, args: Option<&BuildArgs>) -> SizesConfig {
    let mut sizes = config.sizes.clone();
    if let Some(args) = args {
        if let Some(p) = args.positive_size {
            sizes.positive = p;
        }
        if let Some(n) = args.negative_size {
            sizes.negative = n;
        }
    }
    sizes
}
