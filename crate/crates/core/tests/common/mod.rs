//! Independent reference implementations used by the integration and
//! acceptance tests. Nothing here calls into the library's numeric code.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `v` random words (`w0000`, ...) with `d` components drawn from [-1, 1).
pub fn random_rows(seed: u64, v: usize, d: usize) -> Vec<(String, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..v)
        .map(|i| {
            let vector = loop {
                let x: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                if x.iter().map(|c| c * c).sum::<f64>() > 1e-6 {
                    break x;
                }
            };
            (format!("w{i:04}"), vector)
        })
        .collect()
}

/// Cosine from raw (unnormalized) vectors.
pub fn raw_cosine(a: &[f64], b: &[f64]) -> f64 {
    let mut ab = 0.0;
    let mut aa = 0.0;
    let mut bb = 0.0;
    for (x, y) in a.iter().zip(b) {
        ab += x * y;
        aa += x * x;
        bb += y * y;
    }
    ab / (aa.sqrt() * bb.sqrt())
}

/// Summed pairwise cosine to the positive seeds minus the negative seeds.
pub fn raw_score(vector: &[f64], positive: &[&[f64]], negative: &[&[f64]]) -> f64 {
    let p: f64 = positive.iter().map(|s| raw_cosine(vector, s)).sum();
    let n: f64 = negative.iter().map(|s| raw_cosine(vector, s)).sum();
    p - n
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleWord {
    pub word: String,
    pub raw: f64,
    pub valence: f64,
}

/// Expected expansion, each pole from most to least extreme.
#[derive(Debug, Clone)]
pub struct OracleLexicon {
    pub positive: Vec<OracleWord>,
    pub negative: Vec<OracleWord>,
}

/// Score every non-seed row, sort each pole, keep the requested sizes and
/// divide by each pole's largest magnitude.
pub fn oracle_lexicon(
    rows: &[(String, Vec<f64>)],
    positive_seeds: &[&str],
    negative_seeds: &[&str],
    positive_size: usize,
    negative_size: usize,
) -> OracleLexicon {
    let lookup: HashMap<&str, &[f64]> = rows.iter().map(|(w, v)| (w.as_str(), v.as_slice())).collect();
    let pos: Vec<&[f64]> = positive_seeds.iter().filter_map(|s| lookup.get(s).copied()).collect();
    let neg: Vec<&[f64]> = negative_seeds.iter().filter_map(|s| lookup.get(s).copied()).collect();
    let mut scored: Vec<(String, f64)> = Vec::new();
    for (w, v) in rows {
        if positive_seeds.contains(&w.as_str()) || negative_seeds.contains(&w.as_str()) {
            continue;
        }
        if scored.iter().any(|(x, _)| x == w) {
            continue;
        }
        scored.push((w.clone(), raw_score(v, &pos, &neg)));
    }
    let mut positive: Vec<(String, f64)> = scored.iter().filter(|s| s.1 > 0.0).cloned().collect();
    let mut negative: Vec<(String, f64)> = scored.iter().filter(|s| s.1 < 0.0).cloned().collect();
    // insertion sort keeps this independent of the library's comparator
    insertion_sort(&mut positive, |a, b| a.1 > b.1 || (a.1 == b.1 && a.0 < b.0));
    insertion_sort(&mut negative, |a, b| a.1 < b.1 || (a.1 == b.1 && a.0 < b.0));
    positive.truncate(positive_size);
    negative.truncate(negative_size);
    let max_pos = positive.first().map_or(1.0, |p| p.1);
    let max_neg = negative.first().map_or(1.0, |n| n.1.abs());
    OracleLexicon {
        positive: positive
            .into_iter()
            .map(|(word, raw)| OracleWord { word, raw, valence: raw / max_pos })
            .collect(),
        negative: negative
            .into_iter()
            .map(|(word, raw)| OracleWord { word, raw, valence: raw / max_neg })
            .collect(),
    }
}

fn insertion_sort<T, F: Fn(&T, &T) -> bool>(v: &mut [T], before: F) {
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && before(&v[j], &v[j - 1]) {
            v.swap(j, j - 1);
            j -= 1;
        }
    }
}

/// Simple regression through the normal equations
/// `[n, Sx; Sx, Sxx] [a; b] = [Sy; Sxy]`, solved by Cramer's rule.
#[derive(Debug, Clone, Copy)]
pub struct OlsOracle {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub rmse: f64,
}

pub fn ols_oracle(x: &[f64], y: &[f64]) -> OlsOracle {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * sxx - sx * sx;
    let intercept = (sy * sxx - sx * sxy) / det;
    let slope = (n * sxy - sx * sy) / det;
    let mean_y = sy / n;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let tss: f64 = y.iter().map(|b| (b - mean_y).powi(2)).sum();
    let r_squared = 1.0 - rss / tss;
    OlsOracle {
        intercept,
        slope,
        r_squared,
        adj_r_squared: 1.0 - (1.0 - r_squared) * (n - 1.0) / (n - 2.0),
        rmse: (rss / n).sqrt(),
    }
}

/// Multinomial logistic regression on one raw predictor fitted by damped
/// Newton steps. Classes are `0..k`, class 0 is the reference. Returns
/// in-sample argmax predictions.
pub fn newton_logistic_predictions(x: &[f64], y: &[usize], k: usize) -> Vec<usize> {
    let m = 2 * (k - 1);
    let mut theta = vec![0.0; m];
    let nll = |t: &[f64]| -> f64 {
        x.iter()
            .zip(y)
            .map(|(&xi, &yi)| {
                let logits = logits(t, xi, k);
                let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let lse = max + logits.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
                lse - logits[yi]
            })
            .sum()
    };
    for _ in 0..200 {
        let mut grad = vec![0.0; m];
        let mut hess = vec![vec![0.0; m]; m];
        for (&xi, &yi) in x.iter().zip(y) {
            let p = softmax(&logits(&theta, xi, k));
            let feat = [1.0, xi];
            for c in 1..k {
                let r = p[c] - f64::from(u8::from(yi == c));
                for a in 0..2 {
                    grad[2 * (c - 1) + a] += r * feat[a];
                }
                for d in 1..k {
                    let w = p[c] * (f64::from(u8::from(c == d)) - p[d]);
                    for a in 0..2 {
                        for b in 0..2 {
                            hess[2 * (c - 1) + a][2 * (d - 1) + b] += w * feat[a] * feat[b];
                        }
                    }
                }
            }
        }
        if grad.iter().all(|g| g.abs() < 1e-10) {
            break;
        }
        for (i, row) in hess.iter_mut().enumerate() {
            row[i] += 1e-9;
        }
        let step = solve(hess, grad.clone());
        let current = nll(&theta);
        let mut t = 1.0;
        loop {
            let candidate: Vec<f64> = theta.iter().zip(&step).map(|(a, s)| a - t * s).collect();
            if nll(&candidate) <= current || t < 1e-8 {
                theta = candidate;
                break;
            }
            t *= 0.5;
        }
    }
    x.iter()
        .map(|&xi| {
            let l = logits(&theta, xi, k);
            (0..k).fold(0, |best, c| if l[c] > l[best] { c } else { best })
        })
        .collect()
}

fn logits(theta: &[f64], x: f64, k: usize) -> Vec<f64> {
    let mut l = vec![0.0; k];
    for c in 1..k {
        l[c] = theta[2 * (c - 1)] + theta[2 * (c - 1) + 1] * x;
    }
    l
}

fn softmax(l: &[f64]) -> Vec<f64> {
    let max = l.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = l.iter().map(|v| (v - max).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Central finite-difference gradient of `f` at `p`.
pub fn numeric_gradient(f: impl Fn(&[f64]) -> f64, p: &[f64], h: f64) -> Vec<f64> {
    (0..p.len())
        .map(|i| {
            let mut up = p.to_vec();
            let mut down = p.to_vec();
            up[i] += h;
            down[i] -= h;
            (f(&up) - f(&down)) / (2.0 * h)
        })
        .collect()
}

/// Document score by direct counting over a `word -> valence` map.
/// Returns `(score, matched)`.
pub fn oracle_document_score(tokens: &[String], valences: &HashMap<String, f64>, valence_mode: bool) -> (f64, usize) {
    let mut num = 0.0;
    let mut matched = 0;
    for t in tokens {
        if let Some(&v) = valences.get(t) {
            matched += 1;
            num += if valence_mode { v } else { v.signum() };
        }
    }
    if matched == 0 {
        (0.0, 0)
    } else {
        (num / matched as f64, matched)
    }
}

/// Path to a file under `crates/cli/tests/fixtures`.
pub fn fixture(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../cli/tests/fixtures")
        .join(rel)
}
