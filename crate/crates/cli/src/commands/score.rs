use std::path::PathBuf;

use anyhow::Context;
use rayon::prelude::*;
use serde_json::{json, Value};

use seedlex::lexicon::read_lexicon;
use seedlex::scorer::{
    attribute_matches, predict_frame, read_corpus, score_corpus, write_attributions,
    write_frame_predictions, write_scores, CorpusFormat, FrameSet, ScoreMode, ScoreOptions,
};

use super::{file_record, ScoreArgs};
use crate::config::{require_file, RunConfig};
use crate::output::{ensure_dir, write_file, write_json};
use crate::UsageError;

/// The lexicon to score with: flag, then config, then the lexicon `build`
/// writes for the configured seeds. `None` when only frames are scored.
fn lexicon_path(config: &RunConfig, args: &ScoreArgs) -> Option<PathBuf> {
    args.lexicon
        .clone()
        .or_else(|| config.scoring.lexicon.clone())
        .or_else(|| {
            config
                .seeds
                .as_ref()
                .map(|s| config.output_dir().join(format!("{}.csv", s.concept)))
        })
}

pub fn score(config: &RunConfig, args: &ScoreArgs) -> anyhow::Result<()> {
    let mode: ScoreMode = match &args.mode {
        Some(m) => m.parse().map_err(|e| UsageError::new(format!("{e}")))?,
        None => config.score_mode(),
    };
    let options = ScoreOptions {
        mode,
        denominator: config.scoring.denominator,
    };
    let top_words = args.top_words.unwrap_or(config.scoring.top_words);
    let frames: Vec<PathBuf> = if args.frames.is_empty() {
        config.scoring.frames.clone()
    } else {
        args.frames.clone()
    };
    let corpus_path = args
        .corpus
        .clone()
        .or_else(|| config.scoring.corpus.clone())
        .ok_or_else(|| UsageError::new("no corpus given (--corpus or [scoring] corpus)"))?;
    require_file(&corpus_path, "corpus")?;
    let lexicon_path = lexicon_path(config, args);
    if lexicon_path.is_none() && frames.is_empty() {
        return Err(UsageError::new("nothing to score with: give --lexicon or --frame").into());
    }
    if let Some(p) = &lexicon_path {
        require_file(p, "lexicon")?;
    }
    for p in &frames {
        require_file(p, "frame lexicon")?;
    }

    let docs = read_corpus(&corpus_path, CorpusFormat::from_path(&corpus_path))
        .with_context(|| format!("reading corpus {}", corpus_path.display()))?;
    let dir = ensure_dir(&config.output_dir())?;
    let mut record = json!({
        "tool": { "name": "seedlex", "version": env!("CARGO_PKG_VERSION") },
        "corpus": file_record(&corpus_path)?,
        "documents": docs.len(),
        "mode": mode,
        "denominator": options.denominator,
    });

    if let Some(path) = &lexicon_path {
        let lexicon = read_lexicon(path).with_context(|| format!("reading lexicon {}", path.display()))?;
        let scores = score_corpus(&docs, &lexicon, options, true);
        write_file(&dir.join("scores.csv"), |w| Ok(write_scores(&scores, w)?))?;
        let no_match = scores.iter().filter(|s| s.no_match).count();
        if no_match > 0 {
            log::warn!("{no_match} of {} documents matched no lexicon word", docs.len());
        }
        record["lexicon"] = file_record(path)?;
        record["no_match"] = json!(no_match);
        if top_words > 0 {
            let attributions = docs
                .par_iter()
                .map(|d| attribute_matches(d, &lexicon, mode, top_words))
                .collect::<Result<Vec<_>, _>>()?;
            write_file(&dir.join("attributions.csv"), |w| {
                Ok(write_attributions(
                    docs.iter().zip(&attributions).map(|(d, a)| (d.doc_id.as_str(), a.as_slice())),
                    w,
                )?)
            })?;
            record["top_words"] = json!(top_words);
        }
        println!("scored {} documents -> {}", docs.len(), dir.join("scores.csv").display());
    }

    if !frames.is_empty() {
        let lexicons = frames
            .iter()
            .map(|p| read_lexicon(p).with_context(|| format!("reading frame lexicon {}", p.display())))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let set = FrameSet::from_lexicons(lexicons).map_err(|e| UsageError::new(e.to_string()))?;
        let predictions: Vec<_> = docs.par_iter().map(|d| predict_frame(d, &set)).collect();
        write_file(&dir.join("frames.csv"), |w| Ok(write_frame_predictions(&predictions, w)?))?;
        let files = frames.iter().map(|p| file_record(p)).collect::<anyhow::Result<Vec<Value>>>()?;
        record["frames"] = json!({
            "order": set.names().collect::<Vec<_>>(),
            "files": files,
            "ties": predictions.iter().filter(|p| p.tie).count(),
        });
        println!("predicted frames for {} documents -> {}", docs.len(), dir.join("frames.csv").display());
    }

    write_json(&dir.join("scores.provenance.json"), &record)
}
