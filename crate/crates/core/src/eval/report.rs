use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{
    ClassificationReport, ConfusionMatrix, LogisticReport, RegressionReport, SeedSensitivityReport,
};
use crate::error::Result;

pub const REPORT_HEADER: [&str; 4] = ["lexicon", "metric", "value", "test"];

/// One `lexicon,metric,value,test` line of an evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub lexicon: String,
    pub metric: String,
    pub value: f64,
    pub test: String,
}

impl ReportRow {
    pub fn new(lexicon: &str, metric: impl Into<String>, value: f64, test: &str) -> Self {
        ReportRow {
            lexicon: lexicon.to_string(),
            metric: metric.into(),
            value,
            test: test.to_string(),
        }
    }
}

impl RegressionReport {
    pub fn rows(&self, lexicon: &str, test: &str) -> Vec<ReportRow> {
        [
            ("slope", self.slope),
            ("intercept", self.intercept),
            ("r_squared", self.r_squared),
            ("adj_r_squared", self.adj_r_squared),
            ("rmse", self.rmse),
            ("n", self.n_valid as f64),
            ("n_dropped", self.n_dropped as f64),
        ]
        .into_iter()
        .map(|(m, v)| ReportRow::new(lexicon, m, v, test))
        .collect()
    }
}

impl ClassificationReport {
    pub fn rows(&self, lexicon: &str, test: &str) -> Vec<ReportRow> {
        let mut rows = vec![
            ReportRow::new(lexicon, "accuracy", self.accuracy, test),
            ReportRow::new(lexicon, "macro_f1", self.macro_f1, test),
            ReportRow::new(lexicon, "micro_f1", self.micro_f1, test),
        ];
        for c in &self.per_class {
            rows.push(ReportRow::new(lexicon, format!("precision:{}", c.label), c.precision, test));
            rows.push(ReportRow::new(lexicon, format!("recall:{}", c.label), c.recall, test));
            rows.push(ReportRow::new(lexicon, format!("f1:{}", c.label), c.f1, test));
        }
        rows
    }
}

impl LogisticReport {
    pub fn rows(&self, lexicon: &str, test: &str) -> Vec<ReportRow> {
        vec![
            ReportRow::new(lexicon, "accuracy", self.accuracy, test),
            ReportRow::new(lexicon, "n", self.evaluated as f64, test),
            ReportRow::new(lexicon, "converged", f64::from(u8::from(self.converged)), test),
            ReportRow::new(lexicon, "iterations", self.iterations as f64, test),
        ]
    }
}

impl SeedSensitivityReport {
    /// Per seed count: `mean_accuracy:k`, `sd_accuracy:k`, `failures:k`.
    pub fn rows(&self, lexicon: &str, test: &str) -> Vec<ReportRow> {
        let mut rows = Vec::new();
        for s in &self.summaries {
            if let Some(mean) = s.mean {
                rows.push(ReportRow::new(lexicon, format!("mean_accuracy:{}", s.k), mean, test));
            }
            if let Some(sd) = s.sd {
                rows.push(ReportRow::new(lexicon, format!("sd_accuracy:{}", s.k), sd, test));
            }
            rows.push(ReportRow::new(lexicon, format!("failures:{}", s.k), s.failures as f64, test));
        }
        rows
    }
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn write_report<W: Write>(rows: &[ReportRow], w: W) -> Result<()> {
    let mut out = writer(w);
    out.write_record(REPORT_HEADER)?;
    for r in rows {
        out.write_record([r.lexicon.as_str(), &r.metric, &r.value.to_string(), &r.test])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Matrix layout: a `truth` column followed by one column per predicted label.
pub fn write_confusion<W: Write>(cm: &ConfusionMatrix, w: W) -> Result<()> {
    let mut out = writer(w);
    let mut header = vec!["truth".to_string()];
    header.extend(cm.labels().iter().cloned());
    out.write_record(&header)?;
    for (label, row) in cm.labels().iter().zip(cm.counts()) {
        let mut record = vec![label.clone()];
        record.extend(row.iter().map(u64::to_string));
        out.write_record(&record)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}
