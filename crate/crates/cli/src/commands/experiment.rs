use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::Context;

use seedlex::eval::{logistic_fit_accuracy, write_report, LogisticOptions};
use seedlex::lexicon::LexiconBuilder;
use seedlex::scorer::{score_corpus, TokenizedDoc};
use seedlex::eval::seed_sensitivity;

use super::{load_vocabulary, sizes, ExperimentArgs};
use crate::config::{require_file, RunConfig};
use crate::output::{ensure_dir, file_stem, write_file};
use crate::UsageError;

/// Read `doc_id`, `text` and `truth_column` from a CSV.
fn read_labelled(path: &Path, truth_column: &str) -> anyhow::Result<(Vec<TokenizedDoc>, Vec<String>)> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut reader = csv::Reader::from_reader(BufReader::new(file));
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| UsageError::new(format!("{} has no column {name:?}", path.display())))
    };
    let (id, text, truth) = (column("doc_id")?, column("text")?, column(truth_column)?);
    let mut docs = Vec::new();
    let mut labels = Vec::new();
    for record in reader.records() {
        let record = record.with_context(|| format!("reading {}", path.display()))?;
        docs.push(TokenizedDoc::new(record[id].trim(), &record[text]));
        labels.push(record[truth].trim().to_string());
    }
    Ok((docs, labels))
}

pub fn seed_experiment(config: &RunConfig, args: &ExperimentArgs) -> anyhow::Result<()> {
    let seeds_config = config.seeds()?;
    let exp = &config.experiment;
    let corpus = args
        .corpus
        .clone()
        .or_else(|| exp.corpus.clone())
        .ok_or_else(|| UsageError::new("no labelled corpus given (--corpus or [experiment] corpus)"))?;
    require_file(&corpus, "corpus")?;
    let ks = args.ks.clone().unwrap_or_else(|| exp.ks.clone());
    let runs_per_k = args.runs_per_k.unwrap_or(exp.runs_per_k);
    let master_seed = args.seed.unwrap_or(config.seed);

    let loaded = load_vocabulary(config)?;
    let seeds = seeds_config.load()?;
    let (docs, truth) = read_labelled(&corpus, &exp.truth_column)?;
    let sizes = sizes(config, None);
    let mode = config.score_mode();
    let options = LogisticOptions {
        max_iterations: config.eval.max_iterations,
        learning_rate: config.eval.learning_rate,
        holdout: config.eval.holdout,
        ..Default::default()
    };
    let builder = LexiconBuilder {
        aggregation: sizes.aggregation,
        embedding_id: Some(loaded.embedding_id.clone()),
        filter_digest: Some(loaded.filter_digest.clone()),
    };

    let report = seed_sensitivity(
        &seeds,
        &ks,
        runs_per_k,
        master_seed,
        |sample| builder.build(sample, &loaded.candidates, &loaded.table, sizes.positive, sizes.negative),
        |lexicon| {
            let x: Vec<f64> = score_corpus(&docs, lexicon, mode, false)
                .iter()
                .map(|s| s.score)
                .collect();
            Ok(logistic_fit_accuracy(&x, &truth, &options)?.accuracy)
        },
    )
    .map_err(|e| UsageError::new(e.to_string()))?;

    let rows = report.rows(seeds.concept(), &file_stem(&corpus));
    let dir = ensure_dir(&config.output_dir())?;
    write_file(&dir.join("seed_experiment.csv"), |w| Ok(write_report(&rows, w)?))?;
    write_file(&dir.join("seed_experiment_runs.csv"), |w| {
        let mut out = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        out.write_record(["k", "run", "rng_seed", "accuracy", "error"])?;
        for r in &report.runs {
            out.write_record([
                r.k.to_string(),
                r.run.to_string(),
                r.rng_seed.to_string(),
                r.accuracy.map(|a| a.to_string()).unwrap_or_default(),
                r.error.clone().unwrap_or_default(),
            ])?;
        }
        out.flush()?;
        Ok(())
    })?;

    for s in &report.summaries {
        let fmt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |v| format!("{v:.4}"));
        println!(
            "k={:<4} mean={} sd={} failures={}",
            s.k,
            fmt(s.mean),
            fmt(s.sd),
            s.failures
        );
    }
    Ok(())
}
