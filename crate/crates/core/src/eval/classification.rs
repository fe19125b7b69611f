use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counts of (truth, predicted) label pairs; rows are truth, columns predictions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    counts: Vec<Vec<u64>>,
    n: u64,
}

impl ConfusionMatrix {
    /// Tally pairs over a fixed label order. Labels seen in the data but not
    /// listed are appended in sorted order.
    pub fn with_labels<L, T, P>(labels: &[L], truth: &[T], predicted: &[P]) -> Result<Self>
    where
        L: AsRef<str>,
        T: AsRef<str>,
        P: AsRef<str>,
    {
        if truth.len() != predicted.len() {
            return Err(Error::LengthMismatch {
                left: truth.len(),
                right: predicted.len(),
            });
        }
        if truth.is_empty() {
            return Err(Error::InsufficientData("no labels to compare".into()));
        }
        let mut order: Vec<String> = Vec::new();
        for l in labels {
            let l = l.as_ref();
            if !order.iter().any(|o| o == l) {
                order.push(l.to_string());
            }
        }
        let extra: BTreeSet<&str> = truth
            .iter()
            .map(AsRef::as_ref)
            .chain(predicted.iter().map(AsRef::as_ref))
            .filter(|l| !order.iter().any(|o| o == l))
            .collect();
        order.extend(extra.into_iter().map(String::from));

        let index: HashMap<&str, usize> = order.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut counts = vec![vec![0u64; order.len()]; order.len()];
        for (t, p) in truth.iter().zip(predicted) {
            counts[index[t.as_ref()]][index[p.as_ref()]] += 1;
        }
        Ok(ConfusionMatrix {
            labels: order,
            counts,
            n: truth.len() as u64,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn count(&self, truth: &str, predicted: &str) -> u64 {
        let t = self.labels.iter().position(|l| l == truth);
        let p = self.labels.iter().position(|l| l == predicted);
        match (t, p) {
            (Some(t), Some(p)) => self.counts[t][p],
            _ => 0,
        }
    }

    pub fn trace(&self) -> u64 {
        (0..self.labels.len()).map(|i| self.counts[i][i]).sum()
    }
}

/// Confusion matrix over the sorted union of truth and predicted labels.
pub fn confusion<T: AsRef<str>, P: AsRef<str>>(truth: &[T], predicted: &[P]) -> Result<ConfusionMatrix> {
    ConfusionMatrix::with_labels::<&str, _, _>(&[], truth, predicted)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub label: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Number of items whose truth is this class.
    pub support: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub accuracy: f64,
    pub per_class: Vec<ClassMetrics>,
    /// Unweighted mean of per-class F1.
    pub macro_f1: f64,
    /// F1 from pooled counts; equals accuracy for single-label data.
    pub micro_f1: f64,
}

impl ClassificationReport {
    /// Macro F1 restricted to `labels`; unknown labels contribute 0.
    pub fn macro_f1_over<S: AsRef<str>>(&self, labels: &[S]) -> f64 {
        if labels.is_empty() {
            return 0.0;
        }
        let total: f64 = labels
            .iter()
            .map(|l| {
                self.per_class
                    .iter()
                    .find(|c| c.label == l.as_ref())
                    .map_or(0.0, |c| c.f1)
            })
            .sum();
        total / labels.len() as f64
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall, from counts: 2TP / (2TP + FP + FN).
fn f1(tp: u64, predicted: u64, actual: u64) -> f64 {
    ratio(2 * tp, predicted + actual)
}

/// Accuracy and per-class precision, recall and F1. Zero denominators give 0.
pub fn classification_metrics(cm: &ConfusionMatrix) -> ClassificationReport {
    let k = cm.labels.len();
    let per_class: Vec<ClassMetrics> = (0..k)
        .map(|c| {
            let tp = cm.counts[c][c];
            let predicted: u64 = (0..k).map(|t| cm.counts[t][c]).sum();
            let actual: u64 = cm.counts[c].iter().sum();
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, actual);
            ClassMetrics {
                label: cm.labels[c].clone(),
                precision,
                recall,
                f1: f1(tp, predicted, actual),
                support: actual,
            }
        })
        .collect();
    let macro_f1 = if k == 0 {
        0.0
    } else {
        per_class.iter().map(|c| c.f1).sum::<f64>() / k as f64
    };
    let accuracy = ratio(cm.trace(), cm.n);
    // pooled FP and FN both equal n - trace
    let micro_f1 = f1(cm.trace(), cm.n, cm.n);
    ClassificationReport {
        accuracy,
        per_class,
        macro_f1,
        micro_f1,
    }
}
