//! Single-feature multinomial logistic regression.
//!
//! The predictor is standardized, then per-class intercepts and slopes are
//! fitted by full-batch gradient descent on the mean negative
//! log-likelihood. The first class (in sorted label order) is the reference
//! and keeps zero parameters.

use std::collections::BTreeSet;

use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Holdout {
    /// Share of rows held out for scoring, in `(0, 1)`.
    pub fraction: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LogisticOptions {
    pub max_iterations: usize,
    pub learning_rate: f64,
    /// Stop once the gradient's largest component is below this.
    pub tolerance: f64,
    /// Fit on a random subset and report accuracy on the rest. Off by
    /// default: accuracy is in-sample.
    pub holdout: Option<Holdout>,
}

impl Default for LogisticOptions {
    fn default() -> Self {
        LogisticOptions {
            max_iterations: 100_000,
            learning_rate: 1.0,
            tolerance: 1e-8,
            holdout: None,
        }
    }
}

/// Mean negative log-likelihood of a standardized single-feature softmax
/// model. Parameters are laid out `[b_1, w_1, b_2, w_2, ...]` for classes
/// `1..k`; class 0 is pinned at zero.
#[derive(Debug, Clone)]
pub struct LogisticProblem {
    z: Vec<f64>,
    y: Vec<usize>,
    classes: usize,
}

impl LogisticProblem {
    pub fn new(z: Vec<f64>, y: Vec<usize>, classes: usize) -> Result<Self> {
        if z.len() != y.len() {
            return Err(Error::LengthMismatch {
                left: y.len(),
                right: z.len(),
            });
        }
        if classes < 2 || y.iter().any(|&c| c >= classes) {
            return Err(Error::InvalidArgument("class indices out of range".into()));
        }
        Ok(LogisticProblem { z, y, classes })
    }

    pub fn parameter_count(&self) -> usize {
        2 * (self.classes - 1)
    }

    fn logits(&self, params: &[f64], z: f64, out: &mut [f64]) {
        out[0] = 0.0;
        for c in 1..self.classes {
            out[c] = params[2 * (c - 1)] + params[2 * (c - 1) + 1] * z;
        }
    }

    /// Softmax of the logits in place; returns log-sum-exp.
    fn softmax(logits: &mut [f64]) -> f64 {
        let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = logits.iter().map(|l| (l - max).exp()).sum();
        let lse = max + sum.ln();
        for l in logits.iter_mut() {
            *l = (*l - lse).exp();
        }
        lse
    }

    pub fn negative_log_likelihood(&self, params: &[f64]) -> f64 {
        let mut buf = vec![0.0; self.classes];
        let total: f64 = self
            .z
            .iter()
            .zip(&self.y)
            .map(|(&z, &y)| {
                self.logits(params, z, &mut buf);
                let logit_y = buf[y];
                Self::softmax(&mut buf) - logit_y
            })
            .sum();
        total / self.z.len() as f64
    }

    pub fn gradient(&self, params: &[f64]) -> Vec<f64> {
        let mut grad = vec![0.0; self.parameter_count()];
        let mut buf = vec![0.0; self.classes];
        for (&z, &y) in self.z.iter().zip(&self.y) {
            self.logits(params, z, &mut buf);
            Self::softmax(&mut buf);
            for c in 1..self.classes {
                let residual = buf[c] - if c == y { 1.0 } else { 0.0 };
                grad[2 * (c - 1)] += residual;
                grad[2 * (c - 1) + 1] += residual * z;
            }
        }
        let n = self.z.len() as f64;
        grad.iter_mut().for_each(|g| *g /= n);
        grad
    }

    /// Class with the highest probability at `z`; ties go to the lower index.
    pub fn predict(&self, params: &[f64], z: f64) -> usize {
        let mut buf = vec![0.0; self.classes];
        self.logits(params, z, &mut buf);
        let mut best = 0;
        for c in 1..self.classes {
            if buf[c] > buf[best] {
                best = c;
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticReport {
    /// Sorted class labels; the first is the reference class.
    pub classes: Vec<String>,
    pub accuracy: f64,
    /// Rows the accuracy was measured on.
    pub evaluated: usize,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_max_norm: f64,
    /// Fitted parameters on the standardized predictor.
    pub parameters: Vec<f64>,
    /// Predictor mean and scale used for standardization.
    pub center: f64,
    pub scale: f64,
    /// Per-class intercepts and slopes on the original predictor scale.
    pub intercepts: Vec<f64>,
    pub slopes: Vec<f64>,
}

impl LogisticReport {
    /// The optimization problem on the training rows, for diagnostics.
    pub fn problem<S: AsRef<str>>(&self, x: &[f64], y: &[S]) -> Result<LogisticProblem> {
        let z = x.iter().map(|v| (v - self.center) / self.scale).collect();
        let labels = y
            .iter()
            .map(|l| {
                self.classes
                    .iter()
                    .position(|c| c == l.as_ref())
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown class {:?}", l.as_ref())))
            })
            .collect::<Result<_>>()?;
        LogisticProblem::new(z, labels, self.classes.len())
    }
}

/// Fit `y ~ x` and report classification accuracy of the argmax class.
pub fn logistic_fit_accuracy<S: AsRef<str>>(
    x: &[f64],
    y: &[S],
    options: &LogisticOptions,
) -> Result<LogisticReport> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("predictor values must be finite".into()));
    }
    if !(options.learning_rate > 0.0) {
        return Err(Error::InvalidArgument("learning rate must be positive".into()));
    }
    let classes: Vec<String> = y
        .iter()
        .map(|l| l.as_ref().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if classes.len() < 2 {
        return Err(Error::InsufficientData(
            "logistic regression needs at least two classes".into(),
        ));
    }
    if x.len() < 3 * classes.len() {
        return Err(Error::InsufficientData(format!(
            "{} rows is too few for {} classes",
            x.len(),
            classes.len()
        )));
    }
    let labels: Vec<usize> = y
        .iter()
        .map(|l| classes.binary_search_by(|c| c.as_str().cmp(l.as_ref())).unwrap())
        .collect();

    let (train, test) = split(x.len(), options.holdout)?;
    let train_x: Vec<f64> = train.iter().map(|&i| x[i]).collect();
    let n = train_x.len() as f64;
    let (center, scale) = if train_x.iter().all(|&v| v == train_x[0]) {
        (train_x[0], 1.0)
    } else {
        let mean = train_x.iter().sum::<f64>() / n;
        let variance = train_x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        (mean, variance.sqrt())
    };

    let standardize = |v: f64| (v - center) / scale;
    let problem = LogisticProblem::new(
        train_x.iter().map(|&v| standardize(v)).collect(),
        train.iter().map(|&i| labels[i]).collect(),
        classes.len(),
    )?;

    let mut params = vec![0.0; problem.parameter_count()];
    let mut converged = false;
    let mut iterations = 0;
    let mut gradient_max_norm = f64::INFINITY;
    while iterations < options.max_iterations {
        let grad = problem.gradient(&params);
        gradient_max_norm = grad.iter().fold(0.0, |m: f64, g| m.max(g.abs()));
        if gradient_max_norm < options.tolerance {
            converged = true;
            break;
        }
        for (p, g) in params.iter_mut().zip(&grad) {
            *p -= options.learning_rate * g;
        }
        iterations += 1;
    }
    if !converged {
        gradient_max_norm = problem
            .gradient(&params)
            .iter()
            .fold(0.0, |m: f64, g| m.max(g.abs()));
        converged = gradient_max_norm < options.tolerance;
        if !converged {
            warn!(
                "logistic regression stopped after {iterations} iterations with gradient {gradient_max_norm:e}"
            );
        }
    }

    let rows = if test.is_empty() { &train } else { &test };
    let correct = rows
        .iter()
        .filter(|&&i| problem.predict(&params, standardize(x[i])) == labels[i])
        .count();

    let mut intercepts = vec![0.0; classes.len()];
    let mut slopes = vec![0.0; classes.len()];
    for c in 1..classes.len() {
        let (b, w) = (params[2 * (c - 1)], params[2 * (c - 1) + 1]);
        slopes[c] = w / scale;
        intercepts[c] = b - w * center / scale;
    }

    Ok(LogisticReport {
        classes,
        accuracy: correct as f64 / rows.len() as f64,
        evaluated: rows.len(),
        converged,
        iterations,
        gradient_max_norm,
        parameters: params,
        center,
        scale,
        intercepts,
        slopes,
    })
}

/// Row indices for fitting and for scoring; scoring is empty without a holdout.
fn split(n: usize, holdout: Option<Holdout>) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut all: Vec<usize> = (0..n).collect();
    let Some(h) = holdout else {
        return Ok((all, Vec::new()));
    };
    if !(h.fraction > 0.0 && h.fraction < 1.0) {
        return Err(Error::InvalidArgument("holdout fraction must be in (0, 1)".into()));
    }
    let held = ((n as f64) * h.fraction).round() as usize;
    if held == 0 || held == n {
        return Err(Error::InsufficientData("holdout leaves an empty split".into()));
    }
    all.shuffle(&mut ChaCha8Rng::seed_from_u64(h.seed));
    let test = all.split_off(n - held);
    all.sort_unstable();
    Ok((all, test))
}
