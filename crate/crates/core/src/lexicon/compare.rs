use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Lexicon, LexiconEntry};
use crate::error::{Error, Result};
use crate::eval::ols_fit;

/// Residual thresholds reported by [`compare_lexicons`].
pub const RESIDUAL_THRESHOLDS: [f64; 2] = [0.5, 0.6];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub word: String,
    pub valence_a: f64,
    pub valence_b: f64,
    pub residual: f64,
}

/// Least-squares fit of `a`'s valences on `b`'s over the shared words.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Sorted by absolute residual, largest first; ties by word.
    pub residuals: Vec<Residual>,
}

impl ResidualFit {
    /// Residuals strictly larger than `threshold` in magnitude.
    pub fn beyond(&self, threshold: f64) -> impl Iterator<Item = &Residual> {
        self.residuals
            .iter()
            .take_while(move |r| r.residual.abs() > threshold)
    }

    pub fn count_beyond(&self, threshold: f64) -> usize {
        self.beyond(threshold).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub exclude_seeds: bool,
    pub words_a: usize,
    pub words_b: usize,
    pub shared: usize,
    /// `shared / words_a`.
    pub overlap: f64,
    /// Fraction of shared words whose valences have the same sign; `None`
    /// when nothing is shared.
    pub agreement: Option<f64>,
    /// `None` with fewer than three shared words or constant `b` valences.
    pub fit: Option<ResidualFit>,
}

/// Compare two lexicons over their common words.
pub fn compare_lexicons(a: &Lexicon, b: &Lexicon, exclude_seeds: bool) -> Result<OverlapReport> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("cannot compare an empty lexicon".into()));
    }
    let keep = |e: &&LexiconEntry| !(exclude_seeds && e.seed);
    let words_a: Vec<&LexiconEntry> = a.entries().iter().filter(keep).collect();
    let words_b: HashMap<&str, &LexiconEntry> = b
        .entries()
        .iter()
        .filter(keep)
        .map(|e| (e.word.as_str(), e))
        .collect();
    if words_a.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "lexicon {:?} has no expanded words",
            a.concept()
        )));
    }

    // pairs in `a`'s order
    let pairs: Vec<(&LexiconEntry, &LexiconEntry)> = words_a
        .iter()
        .filter_map(|ea| words_b.get(ea.word.as_str()).map(|eb| (*ea, *eb)))
        .collect();
    let shared = pairs.len();
    let agreement = (shared > 0).then(|| {
        let same = pairs
            .iter()
            .filter(|(ea, eb)| (ea.valence > 0.0) == (eb.valence > 0.0))
            .count();
        same as f64 / shared as f64
    });

    let fit = if shared >= 3 {
        let x: Vec<f64> = pairs.iter().map(|(_, eb)| eb.valence).collect();
        let y: Vec<f64> = pairs.iter().map(|(ea, _)| ea.valence).collect();
        match ols_fit(&x, &y) {
            Ok(report) => {
                let mut residuals: Vec<Residual> = pairs
                    .iter()
                    .map(|(ea, eb)| Residual {
                        word: ea.word.clone(),
                        valence_a: ea.valence,
                        valence_b: eb.valence,
                        residual: ea.valence - report.predict(eb.valence),
                    })
                    .collect();
                residuals.sort_by(|p, q| {
                    q.residual
                        .abs()
                        .total_cmp(&p.residual.abs())
                        .then_with(|| p.word.cmp(&q.word))
                });
                Some(ResidualFit {
                    slope: report.slope,
                    intercept: report.intercept,
                    r_squared: report.r_squared,
                    residuals,
                })
            }
            Err(Error::ZeroVariance) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    Ok(OverlapReport {
        exclude_seeds,
        words_a: words_a.len(),
        words_b: words_b.len(),
        shared,
        overlap: shared as f64 / words_a.len() as f64,
        agreement,
        fit,
    })
}
