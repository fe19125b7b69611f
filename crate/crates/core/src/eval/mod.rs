//! Metrics over predictions: confusion matrices, classification scores,
//! simple OLS, single-feature logistic accuracy and the seed-count
//! sensitivity experiment.

mod classification;
mod logistic;
mod regression;
mod report;
mod sensitivity;

pub use self::classification::{
    classification_metrics, confusion, ClassMetrics, ClassificationReport, ConfusionMatrix,
};
pub use self::logistic::{
    logistic_fit_accuracy, Holdout, LogisticOptions, LogisticProblem, LogisticReport,
};
pub use self::regression::{ols_fit, RegressionReport};
pub use self::report::{write_confusion, write_report, ReportRow, REPORT_HEADER};
pub use self::sensitivity::{
    mean_sd, seed_sensitivity, SeedCountSummary, SeedSensitivityReport, SensitivityRun,
};
