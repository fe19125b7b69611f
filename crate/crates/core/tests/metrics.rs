mod common;

use common::{newton_logistic_predictions, numeric_gradient, ols_oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seedlex::eval::{
    classification_metrics, confusion, logistic_fit_accuracy, ols_fit, ConfusionMatrix, LogisticOptions,
};

#[test]
fn four_item_hand_example() {
    let cm = confusion(&["A", "A", "B", "B"], &["A", "B", "B", "B"]).unwrap();
    let r = classification_metrics(&cm);
    assert!((r.accuracy - 0.75).abs() < 1e-12);
    let f1_a = 2.0 * (1.0 * 0.5) / 1.5;
    let f1_b = 2.0 * (2.0 / 3.0 * 1.0) / (2.0 / 3.0 + 1.0);
    assert!((r.per_class[0].f1 - f1_a).abs() < 1e-12);
    assert!((r.per_class[1].f1 - f1_b).abs() < 1e-12);
    assert!((r.macro_f1 - 11.0 / 15.0).abs() < 1e-12);
    assert!((r.micro_f1 - 0.75).abs() < 1e-12);
}

#[test]
fn six_item_three_class_tally() {
    let truth = ["pos", "pos", "neg", "neu", "neu", "neg"];
    let pred = ["pos", "neu", "neg", "neu", "pos", "pos"];
    let cm = confusion(&truth, &pred).unwrap();
    // labels sorted: neg, neu, pos; rows are truth
    assert_eq!(cm.labels(), ["neg", "neu", "pos"]);
    assert_eq!(cm.counts(), [vec![1, 0, 1], vec![0, 1, 1], vec![0, 1, 1]]);
    assert_eq!(cm.trace(), 3);
}

#[test]
fn majority_class_degenerate_case() {
    let cm = confusion(&["A", "A", "B", "B"], &["A", "A", "A", "A"]).unwrap();
    let r = classification_metrics(&cm);
    assert_eq!(r.accuracy, 0.5);
    assert_eq!(r.per_class[1].precision, 0.0);
}

#[test]
fn labels_absent_from_the_data_get_zero_rows() {
    let cm = ConfusionMatrix::with_labels(&["A", "B", "C"], &["A", "B"], &["A", "A"]).unwrap();
    assert_eq!(cm.counts()[2], vec![0, 0, 0]);
    let r = classification_metrics(&cm);
    assert_eq!(r.per_class[2].f1, 0.0);
}

#[test]
fn ols_perfect_line() {
    let x: Vec<f64> = (0..10).map(f64::from).collect();
    let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
    let r = ols_fit(&x, &y).unwrap();
    assert!((r.slope - 2.0).abs() < 1e-12);
    assert!((r.intercept - 1.0).abs() < 1e-12);
    assert!(r.rmse.abs() < 1e-12);
    assert!((r.adj_r_squared - 1.0).abs() < 1e-12);
}

#[test]
fn ols_orthogonal_outcome() {
    let x = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let y = [1.0, -1.0, -2.0, -1.0, 1.0];
    let r = ols_fit(&x, &y).unwrap();
    assert!(r.slope.abs() < 1e-15);
    assert!(r.r_squared.abs() < 1e-15);
    assert!((r.adj_r_squared - (1.0 - 4.0 / 3.0)).abs() < 1e-15);
}

#[test]
fn ols_matches_normal_equations_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let x: Vec<f64> = (0..10).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let y: Vec<f64> = x.iter().map(|v| 0.7 * v - 3.0 + rng.gen_range(-2.0..2.0)).collect();
        let r = ols_fit(&x, &y).unwrap();
        let o = ols_oracle(&x, &y);
        assert!((r.slope - o.slope).abs() < 1e-9);
        assert!((r.intercept - o.intercept).abs() < 1e-9);
        assert!((r.rmse - o.rmse).abs() < 1e-9);
        assert!((r.adj_r_squared - o.adj_r_squared).abs() < 1e-9);
        // residuals are orthogonal to x and sum to zero
        let res: Vec<f64> = x.iter().zip(&y).map(|(a, b)| b - r.predict(*a)).collect();
        assert!(res.iter().sum::<f64>().abs() < 1e-9);
        assert!(res.iter().zip(&x).map(|(e, a)| e * a).sum::<f64>().abs() < 1e-9);
    }
}

#[test]
fn ols_drops_non_finite_pairs() {
    let x = [0.0, 1.0, f64::NAN, 2.0, 3.0];
    let y = [1.0, 3.0, 4.0, 5.0, f64::INFINITY];
    let r = ols_fit(&x, &y).unwrap();
    assert_eq!((r.n_valid, r.n_dropped), (3, 2));
    assert!((r.slope - 2.0).abs() < 1e-12);
}

/// Three overlapping classes along one predictor.
fn three_class_fixture(seed: u64, n: usize) -> (Vec<f64>, Vec<&'static str>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["negative", "neutral", "positive"];
    let mut x = Vec::new();
    let mut y = Vec::new();
    for i in 0..n {
        let c = i % 3;
        x.push(c as f64 * 0.8 + rng.gen_range(-1.0..1.0));
        y.push(names[c]);
    }
    (x, y)
}

#[test]
fn logistic_agrees_with_newton_oracle() {
    for seed in 0..8 {
        let (x, y) = three_class_fixture(seed, 90);
        let r = logistic_fit_accuracy(&x, &y, &LogisticOptions::default()).unwrap();
        assert!(r.converged, "seed {seed}");
        let labels: Vec<usize> = y.iter().map(|l| r.classes.iter().position(|c| c == l).unwrap()).collect();
        let pred = newton_logistic_predictions(&x, &labels, 3);
        let correct = pred.iter().zip(&labels).filter(|(a, b)| a == b).count();
        let lib_correct = (r.accuracy * 90.0).round() as i64;
        assert!((lib_correct - correct as i64).abs() <= 1, "seed {seed}: {lib_correct} vs {correct}");
    }
}

#[test]
fn logistic_separable_and_constant() {
    let x = [-3.0, -2.0, -1.0, 1.0, 2.0, 3.0];
    let y = ["a", "a", "a", "b", "b", "b"];
    let r = logistic_fit_accuracy(&x, &y, &LogisticOptions { max_iterations: 2000, ..Default::default() }).unwrap();
    assert_eq!(r.accuracy, 1.0);

    let x = [4.0; 10];
    let y = ["a", "b", "b", "c", "b", "b", "a", "b", "c", "b"];
    let r = logistic_fit_accuracy(&x, &y, &LogisticOptions::default()).unwrap();
    assert!((r.accuracy - 0.6).abs() < 1e-12);
}

/// |a - b| / max(|a|, |b|, floor)
fn relative_error(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

#[test]
fn gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for seed in 0..10 {
        let (x, y) = three_class_fixture(100 + seed, 60);
        let r = logistic_fit_accuracy(&x, &y, &LogisticOptions::default()).unwrap();
        let problem = r.problem(&x, &y).unwrap();
        let f = |p: &[f64]| problem.negative_log_likelihood(p);

        // at the returned optimum
        let analytic = problem.gradient(&r.parameters);
        let numeric = numeric_gradient(f, &r.parameters, 1e-5);
        for (a, n) in analytic.iter().zip(&numeric) {
            assert!(relative_error(*a, *n, 1e-3) < 1e-4, "optimum: {a} vs {n}");
        }

        // and away from it, where the gradient is far from zero
        let p: Vec<f64> = (0..problem.parameter_count()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let analytic = problem.gradient(&p);
        let numeric = numeric_gradient(f, &p, 1e-5);
        for (a, n) in analytic.iter().zip(&numeric) {
            assert!(relative_error(*a, *n, 1e-3) < 1e-4, "random point: {a} vs {n}");
        }
    }
}
