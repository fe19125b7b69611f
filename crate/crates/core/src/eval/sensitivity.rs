use std::collections::HashSet;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::{sample_seeds, Lexicon, SeedSet};

/// One build-and-evaluate run on a seed subsample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityRun {
    pub k: usize,
    pub run: usize,
    pub rng_seed: u64,
    pub accuracy: Option<f64>,
    pub error: Option<String>,
}

/// Accuracy summary for one seed count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedCountSummary {
    pub k: usize,
    pub accuracies: Vec<f64>,
    pub mean: Option<f64>,
    /// Sample standard deviation (n - 1 denominator); needs two runs.
    pub sd: Option<f64>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSensitivityReport {
    pub master_seed: u64,
    pub runs_per_k: usize,
    pub runs: Vec<SensitivityRun>,
    pub summaries: Vec<SeedCountSummary>,
}

/// Mean and sample standard deviation. Identical values give an SD of
/// exactly zero.
pub fn mean_sd(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (Some(mean), None);
    }
    if values.iter().all(|&v| v == values[0]) {
        return (Some(values[0]), Some(0.0));
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (Some(mean), Some((ss / (n - 1.0)).sqrt()))
}

/// For each `k`, draw `runs_per_k` seed subsamples of size `k` per pole,
/// build a lexicon from each with `build` and score it with `evaluate`.
///
/// Run seeds are drawn up front from a ChaCha stream keyed by
/// `master_seed` (all distinct), so runs can execute in parallel and the
/// report is reproducible. A failed run is recorded, not fatal.
pub fn seed_sensitivity<B, E>(
    full: &SeedSet,
    ks: &[usize],
    runs_per_k: usize,
    master_seed: u64,
    build: B,
    evaluate: E,
) -> Result<SeedSensitivityReport>
where
    B: Fn(&SeedSet) -> Result<Lexicon> + Sync,
    E: Fn(&Lexicon) -> Result<f64> + Sync,
{
    if runs_per_k < 2 {
        return Err(Error::InvalidArgument("runs_per_k must be at least 2".into()));
    }
    if ks.is_empty() {
        return Err(Error::InvalidArgument("no seed counts given".into()));
    }
    let max_k = full.positive_seeds().len().min(full.negative_seeds().len());
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > max_k) {
        return Err(Error::InvalidArgument(format!(
            "seed count {k} must be between 1 and {max_k}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    let mut used = HashSet::new();
    let plan: Vec<(usize, usize, u64)> = ks
        .iter()
        .flat_map(|&k| (0..runs_per_k).map(move |run| (k, run)))
        .map(|(k, run)| {
            let seed = loop {
                let s = rng.next_u64();
                if used.insert(s) {
                    break s;
                }
            };
            (k, run, seed)
        })
        .collect();

    let runs: Vec<SensitivityRun> = plan
        .par_iter()
        .map(|&(k, run, rng_seed)| {
            let outcome = sample_seeds(full, k, rng_seed)
                .and_then(|seeds| build(&seeds))
                .and_then(|lexicon| evaluate(&lexicon));
            let (accuracy, error) = match outcome {
                Ok(a) => (Some(a), None),
                Err(e) => (None, Some(e.to_string())),
            };
            SensitivityRun {
                k,
                run,
                rng_seed,
                accuracy,
                error,
            }
        })
        .collect();

    let summaries = ks
        .iter()
        .map(|&k| {
            let of_k: Vec<&SensitivityRun> = runs.iter().filter(|r| r.k == k).collect();
            let accuracies: Vec<f64> = of_k.iter().filter_map(|r| r.accuracy).collect();
            let (mean, sd) = mean_sd(&accuracies);
            SeedCountSummary {
                k,
                failures: of_k.len() - accuracies.len(),
                accuracies,
                mean,
                sd,
            }
        })
        .collect();

    Ok(SeedSensitivityReport {
        master_seed,
        runs_per_k,
        runs,
        summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::LexiconEntry;

    fn full() -> SeedSet {
        SeedSet::new(
            "c",
            "P",
            "N",
            (0..10).map(|i| format!("p{i}")),
            (0..10).map(|i| format!("n{i}")),
        )
        .unwrap()
    }

    fn seeds_only(seeds: &SeedSet) -> Result<Lexicon> {
        let entries = seeds
            .positive_seeds()
            .iter()
            .map(|w| (w, 1.0, "P"))
            .chain(seeds.negative_seeds().iter().map(|w| (w, -1.0, "N")))
            .map(|(w, v, p)| LexiconEntry {
                word: w.clone(),
                valence: v,
                seed: true,
                pole: p.into(),
            })
            .collect();
        Lexicon::new(seeds.concept(), "P", "N", entries)
    }

    #[test]
    fn mean_and_sample_sd() {
        let (m, s) = mean_sd(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, Some(2.5));
        assert!((s.unwrap() - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_sd(&[0.1; 6]), (Some(0.1), Some(0.0)));
        assert_eq!(mean_sd(&[0.3]), (Some(0.3), None));
    }

    #[test]
    fn constant_evaluation_has_zero_spread() {
        let r = seed_sensitivity(&full(), &[2, 5], 4, 11, seeds_only, |_| Ok(0.7)).unwrap();
        assert_eq!(r.runs.len(), 8);
        for s in &r.summaries {
            assert_eq!(s.sd, Some(0.0));
            assert_eq!(s.mean, Some(0.7));
        }
        let seeds: HashSet<u64> = r.runs.iter().map(|x| x.rng_seed).collect();
        assert_eq!(seeds.len(), 8);
    }

    #[test]
    fn full_size_runs_are_identical() {
        // evaluate = first positive seed index, which varies with the sample
        let eval = |l: &Lexicon| {
            let first = l.seeds().find(|e| e.valence > 0.0).unwrap();
            Ok(first.word[1..].parse::<f64>().unwrap())
        };
        let r = seed_sensitivity(&full(), &[10, 1], 6, 3, seeds_only, eval).unwrap();
        assert_eq!(r.summaries[0].sd, Some(0.0));
        assert!(r.summaries[1].sd.unwrap() > 0.0);
    }

    #[test]
    fn reproducible_and_failures_recorded() {
        let eval = |l: &Lexicon| {
            if l.seeds().any(|e| e.word == "p0") {
                Err(Error::InvalidArgument("p0 is cursed".into()))
            } else {
                Ok(l.len() as f64)
            }
        };
        let a = seed_sensitivity(&full(), &[3], 10, 5, seeds_only, eval).unwrap();
        let b = seed_sensitivity(&full(), &[3], 10, 5, seeds_only, eval).unwrap();
        assert_eq!(a, b);
        let failed = a.runs.iter().filter(|r| r.error.is_some()).count();
        assert_eq!(a.summaries[0].failures, failed);
    }

    #[test]
    fn argument_checks() {
        assert!(seed_sensitivity(&full(), &[2], 1, 0, seeds_only, |_| Ok(1.0)).is_err());
        assert!(seed_sensitivity(&full(), &[11], 2, 0, seeds_only, |_| Ok(1.0)).is_err());
        assert!(seed_sensitivity(&full(), &[], 2, 0, seeds_only, |_| Ok(1.0)).is_err());
    }
}
