use std::collections::HashMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::Context;
use serde_json::json;

use seedlex::eval::{
    classification_metrics, confusion, logistic_fit_accuracy, ols_fit, write_confusion,
    write_report, ConfusionMatrix, LogisticOptions, ReportRow,
};
use seedlex::scorer::{CANONICAL_FRAMES, NON_MORAL};

use super::{file_record, EvalArgs};
use crate::config::{require_file, PredictionKind, RunConfig};
use crate::output::{ensure_dir, file_stem, write_file, write_json};
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Task {
    Regression,
    Classification,
    Frames,
}

impl Task {
    fn parse(s: &str) -> Result<Self, UsageError> {
        match s {
            "regression" => Ok(Task::Regression),
            "classification" => Ok(Task::Classification),
            "frames" => Ok(Task::Frames),
            other => Err(UsageError::new(format!(
                "unknown task {other:?} (expected regression, classification or frames)"
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Task::Regression => "regression",
            Task::Classification => "classification",
            Task::Frames => "frames",
        }
    }
}

/// A CSV file held in memory with named columns.
struct Table {
    path: String,
    headers: Vec<String>,
    rows: Vec<csv::StringRecord>,
}

impl Table {
    fn read(path: &Path) -> anyhow::Result<Self> {
        let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        let mut reader = csv::Reader::from_reader(BufReader::new(file));
        let headers = reader.headers()?.iter().map(|h| h.trim().to_string()).collect();
        let rows = reader
            .records()
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("reading {}", path.display()))?;
        Ok(Table {
            path: path.display().to_string(),
            headers,
            rows,
        })
    }

    fn column(&self, name: &str) -> Result<usize, UsageError> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| UsageError::new(format!("{} has no column {name:?}", self.path)))
    }
}

/// One evaluated document.
struct Pair {
    truth: String,
    prediction: String,
    no_match: bool,
}

fn join(config: &RunConfig, task: Task, input: &Path, predictions: Option<&Path>) -> anyhow::Result<Vec<Pair>> {
    let ev = &config.eval;
    let prediction_column = ev.prediction_column.clone().unwrap_or_else(|| {
        match (task, ev.prediction) {
            (Task::Frames, _) => "predicted_frame",
            (_, PredictionKind::Label) => "prediction",
            (_, PredictionKind::Score) => "score",
        }
        .to_string()
    });
    let input = Table::read(input)?;
    let truth_col = input.column(&ev.truth_column)?;

    let Some(pred_path) = predictions else {
        let pred_col = input.column(&prediction_column)?;
        let no_match_col = input.column("no_match").ok();
        return Ok(input
            .rows
            .iter()
            .map(|r| Pair {
                truth: r[truth_col].trim().to_string(),
                prediction: r[pred_col].trim().to_string(),
                no_match: no_match_col.is_some_and(|c| r[c].trim() == "1"),
            })
            .collect());
    };

    let id_col = input.column(&ev.id_column)?;
    let preds = Table::read(pred_path)?;
    let pred_id = preds.column(&ev.id_column)?;
    let pred_col = preds.column(&prediction_column)?;
    let no_match_col = preds.column("no_match").ok();
    let mut by_id: HashMap<&str, (&str, bool)> = HashMap::with_capacity(preds.rows.len());
    for r in &preds.rows {
        let no_match = no_match_col.is_some_and(|c| r[c].trim() == "1");
        if by_id.insert(r[pred_id].trim(), (r[pred_col].trim(), no_match)).is_some() {
            anyhow::bail!("{}: duplicate id {:?}", preds.path, r[pred_id].trim());
        }
    }
    let mut pairs = Vec::with_capacity(input.rows.len());
    let mut missing = 0;
    for r in &input.rows {
        match by_id.get(r[id_col].trim()) {
            Some(&(prediction, no_match)) => pairs.push(Pair {
                truth: r[truth_col].trim().to_string(),
                prediction: prediction.to_string(),
                no_match,
            }),
            None => missing += 1,
        }
    }
    if missing > 0 {
        log::warn!("{missing} documents in {} have no prediction", input.path);
    }
    Ok(pairs)
}

fn parse_numbers(values: impl Iterator<Item = String>, what: &str) -> anyhow::Result<Vec<f64>> {
    values
        .map(|v| {
            v.parse::<f64>()
                .with_context(|| format!("{what} value {v:?} is not a number"))
        })
        .collect()
}

/// Canonical frames first, then other labels by name, `Non-moral` last.
fn frame_labels(pairs: &[Pair]) -> Vec<String> {
    let mut labels: Vec<String> = pairs
        .iter()
        .flat_map(|p| [p.truth.clone(), p.prediction.clone()])
        .collect();
    labels.sort();
    labels.dedup();
    let rank = |l: &str| {
        if l == NON_MORAL {
            return CANONICAL_FRAMES.len() + 1;
        }
        let lower = l.to_lowercase();
        CANONICAL_FRAMES
            .iter()
            .position(|c| lower.starts_with(c))
            .unwrap_or(CANONICAL_FRAMES.len())
    };
    labels.sort_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| a.cmp(b)));
    labels
}

pub fn eval(config: &RunConfig, args: &EvalArgs) -> anyhow::Result<()> {
    let mut config = config.clone();
    if let Some(c) = &args.truth_column {
        config.eval.truth_column = c.clone();
    }
    if let Some(p) = &args.prediction {
        config.eval.prediction = match p.as_str() {
            "score" => PredictionKind::Score,
            "label" => PredictionKind::Label,
            other => {
                return Err(UsageError::new(format!(
                    "unknown prediction kind {other:?} (expected score or label)"
                ))
                .into())
            }
        };
    }
    let config = &config;
    let ev = &config.eval;
    let task = args
        .task
        .as_deref()
        .or(ev.task.as_deref())
        .ok_or_else(|| UsageError::new("no task given (--task or [eval] task)"))?;
    let task = Task::parse(task)?;
    let input = args
        .input
        .clone()
        .or_else(|| ev.input.clone())
        .ok_or_else(|| UsageError::new("no input given (--input or [eval] input)"))?;
    require_file(&input, "input")?;
    let predictions = args.predictions.clone().or_else(|| ev.predictions.clone());
    if let Some(p) = &predictions {
        require_file(p, "predictions")?;
    }

    let mut pairs = join(config, task, &input, predictions.as_deref())?;
    if ev.exclude_no_match {
        let before = pairs.len();
        pairs.retain(|p| !p.no_match);
        log::info!("excluded {} documents without lexicon matches", before - pairs.len());
    }
    if pairs.is_empty() {
        anyhow::bail!("no documents to evaluate");
    }

    let lexicon = ev
        .lexicon_name
        .clone()
        .unwrap_or_else(|| file_stem(predictions.as_deref().unwrap_or(&input)));
    let test = ev.test_name.clone().unwrap_or_else(|| file_stem(&input));
    let rows: Vec<ReportRow>;
    let mut matrix: Option<ConfusionMatrix> = None;

    match task {
        Task::Regression => {
            let x = parse_numbers(pairs.iter().map(|p| p.prediction.clone()), "prediction")?;
            let y = parse_numbers(pairs.iter().map(|p| p.truth.clone()), "truth")?;
            rows = ols_fit(&x, &y)?.rows(&lexicon, &test);
        }
        Task::Classification if ev.prediction == PredictionKind::Score => {
            let x = parse_numbers(pairs.iter().map(|p| p.prediction.clone()), "prediction")?;
            let y: Vec<&str> = pairs.iter().map(|p| p.truth.as_str()).collect();
            let options = LogisticOptions {
                max_iterations: ev.max_iterations,
                learning_rate: ev.learning_rate,
                holdout: ev.holdout,
                ..Default::default()
            };
            let report = logistic_fit_accuracy(&x, &y, &options)?;
            if !report.converged {
                log::warn!(
                    "logistic fit stopped after {} iterations without converging",
                    report.iterations
                );
            }
            rows = report.rows(&lexicon, &test);
        }
        Task::Classification => {
            let truth: Vec<&str> = pairs.iter().map(|p| p.truth.as_str()).collect();
            let pred: Vec<&str> = pairs.iter().map(|p| p.prediction.as_str()).collect();
            let cm = confusion(&truth, &pred)?;
            rows = classification_metrics(&cm).rows(&lexicon, &test);
            matrix = Some(cm);
        }
        Task::Frames => {
            let labels = frame_labels(&pairs);
            let truth: Vec<&str> = pairs.iter().map(|p| p.truth.as_str()).collect();
            let pred: Vec<&str> = pairs.iter().map(|p| p.prediction.as_str()).collect();
            let cm = ConfusionMatrix::with_labels(&labels, &truth, &pred)?;
            let report = classification_metrics(&cm);
            let mut frame_rows = report.rows(&lexicon, &test);
            let moral: Vec<&String> = labels.iter().filter(|l| *l != NON_MORAL).collect();
            frame_rows.insert(
                3,
                ReportRow::new(&lexicon, "macro_f1_moral", report.macro_f1_over(&moral), &test),
            );
            rows = frame_rows;
            matrix = Some(cm);
        }
    }

    let dir = ensure_dir(&config.output_dir())?;
    write_file(&dir.join("report.csv"), |w| Ok(write_report(&rows, w)?))?;
    if let Some(cm) = &matrix {
        write_file(&dir.join("confusion.csv"), |w| Ok(write_confusion(cm, w)?))?;
    }
    let mut record = json!({
        "tool": { "name": "seedlex", "version": env!("CARGO_PKG_VERSION") },
        "task": task.name(),
        "input": file_record(&input)?,
        "documents": pairs.len(),
    });
    if let Some(p) = &predictions {
        record["predictions"] = file_record(p)?;
    }
    write_json(&dir.join("report.provenance.json"), &record)?;

    for r in &rows {
        println!("{},{},{},{}", r.lexicon, r.metric, r.value, r.test);
    }
    Ok(())
}
