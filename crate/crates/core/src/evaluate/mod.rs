//! Cost-sensitive evaluation: metrics, stratified folds, cross-validation,
//! attribute sweeps and paired significance tests.

mod cv;
mod folds;
mod metrics;
mod ttest;

pub use cv::{
    cross_validate, fold_attributes, sweep_attributes, train_fold, AggregateResult,
    AttributeRange, ClassifierConfig, FoldModel, FoldOutcome, TrainedFold,
};
pub use folds::{make_stratified_folds, FoldPlan, DEFAULT_FOLDS};
pub use metrics::{
    accuracy, baseline_metrics, confusion_counts, spam_recall_precision, total_cost_ratio,
    weighted_accuracy, ConfusionCounts, Metrics,
};
pub use ttest::{critical_value_05, paired_t_test, TestResult};
