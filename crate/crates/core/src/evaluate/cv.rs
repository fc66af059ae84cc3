//! Cross-validation and attribute-count sweeps.
//!
//! Attribute selection and model training only ever see the nine training
//! parts of a fold. Fold results are aggregated the same way the original
//! protocol does: WAcc is averaged over folds and TCR is the baseline WErr
//! over the mean WErr.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::folds::FoldPlan;
use super::metrics::{
    baseline_metrics, spam_recall_precision, weighted_accuracy, ConfusionCounts,
};
use crate::bayes::{train_naive_bayes, DecisionPolicy, NaiveBayesModel, Smoothing};
use crate::corpus::{Corpus, Label};
use crate::error::{Error, Result};
use crate::features::{select_attributes, vectorize, AttributeSet, BinaryVector, TokenStats};
use crate::memory_based::{build_instance_base, InstanceBase};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierConfig {
    NaiveBayes { smoothing: Smoothing },
    MemoryBased { k: usize },
    /// Lets everything through.
    AlwaysLegitimate,
    /// Predicts the gold label. Test plumbing only.
    Oracle,
}

impl ClassifierConfig {
    pub fn naive_bayes() -> Self {
        ClassifierConfig::NaiveBayes {
            smoothing: Smoothing::Laplace,
        }
    }

    pub fn memory_based(k: usize) -> Self {
        ClassifierConfig::MemoryBased { k }
    }

    pub fn id(&self) -> &'static str {
        match self {
            ClassifierConfig::NaiveBayes { .. } => "nb",
            ClassifierConfig::MemoryBased { .. } => "mb",
            ClassifierConfig::AlwaysLegitimate => "legit",
            ClassifierConfig::Oracle => "oracle",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            ClassifierConfig::MemoryBased { k } => Some(*k),
            _ => None,
        }
    }

    fn uses_attributes(&self) -> bool {
        matches!(
            self,
            ClassifierConfig::NaiveBayes { .. } | ClassifierConfig::MemoryBased { .. }
        )
    }

    fn check(&self) -> Result<()> {
        match self {
            ClassifierConfig::MemoryBased { k: 0 } => Err(Error::InvalidK),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ClassifierConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifierConfig::MemoryBased { k } => write!(f, "mb(k={k})"),
            other => f.write_str(other.id()),
        }
    }
}

/// Inclusive attribute-count range `from..=to` by `step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttributeRange {
    pub from: usize,
    pub to: usize,
    pub step: usize,
}

impl Default for AttributeRange {
    fn default() -> Self {
        AttributeRange {
            from: 50,
            to: 700,
            step: 50,
        }
    }
}

impl AttributeRange {
    pub fn new(from: usize, to: usize, step: usize) -> Result<Self> {
        if from == 0 || step == 0 || from > to {
            return Err(Error::InvalidRange { from, to, step });
        }
        Ok(AttributeRange { from, to, step })
    }

    pub fn single(m: usize) -> Result<Self> {
        AttributeRange::new(m, m, 1)
    }

    pub fn values(&self) -> Vec<usize> {
        (self.from..=self.to).step_by(self.step).collect()
    }
}

impl fmt::Display for AttributeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.from, self.to, self.step)
    }
}

impl FromStr for AttributeRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let parse = |p: &str| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad attribute range `{s}` (expected FROM:TO:STEP)")))
        };
        match parts[..] {
            [from, to, step] => AttributeRange::new(parse(from)?, parse(to)?, parse(step)?),
            [from, to] => AttributeRange::new(parse(from)?, parse(to)?, 1),
            _ => Err(Error::Parse(format!(
                "bad attribute range `{s}` (expected FROM:TO:STEP)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FoldModel {
    NaiveBayes(NaiveBayesModel),
    MemoryBased(InstanceBase),
    AlwaysLegitimate,
    Oracle,
}

/// What one fold learned from its training parts.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedFold {
    pub attributes: Option<AttributeSet>,
    pub model: FoldModel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldOutcome {
    pub counts: ConfusionCounts,
    pub wacc: f64,
    pub werr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateResult {
    pub classifier: ClassifierConfig,
    pub lambda: f64,
    pub m: usize,
    pub seed: u64,
    pub folds: Vec<FoldOutcome>,
    pub mean_wacc: f64,
    pub mean_werr: f64,
    pub baseline_wacc: f64,
    pub baseline_werr: f64,
    /// `baseline_werr / mean_werr`; infinite when `mean_werr` is zero.
    pub tcr: f64,
    pub pooled: ConfusionCounts,
    pub spam_recall: f64,
    pub spam_precision: Option<f64>,
}

impl AggregateResult {
    pub fn fold_waccs(&self) -> Vec<f64> {
        self.folds.iter().map(|f| f.wacc).collect()
    }

    fn from_folds(
        classifier: ClassifierConfig,
        policy: &DecisionPolicy,
        m: usize,
        seed: u64,
        corpus: &Corpus,
        folds: Vec<FoldOutcome>,
    ) -> Result<Self> {
        let lambda = policy.lambda();
        let n = folds.len() as f64;
        let mean_wacc = folds.iter().map(|f| f.wacc).sum::<f64>() / n;
        let mean_werr = 1.0 - mean_wacc;
        let (baseline_wacc, baseline_werr) = baseline_metrics(corpus.n_legit(), corpus.n_spam(), lambda)?;
        let tcr = if mean_werr > 0.0 {
            baseline_werr / mean_werr
        } else {
            f64::INFINITY
        };
        let pooled: ConfusionCounts = folds.iter().map(|f| f.counts).sum();
        let (spam_recall, spam_precision) = spam_recall_precision(&pooled);
        Ok(AggregateResult {
            classifier,
            lambda,
            m,
            seed,
            folds,
            mean_wacc,
            mean_werr,
            baseline_wacc,
            baseline_werr,
            tcr,
            pooled,
            spam_recall,
            spam_precision,
        })
    }
}

/// Ranks the attributes of one fold's training parts, keeping the top `m`.
pub fn fold_attributes(corpus: &Corpus, plan: &FoldPlan, fold: usize, m: usize) -> Result<AttributeSet> {
    let training = plan.train_indices(fold);
    let stats = TokenStats::from_documents(training.iter().map(|&i| &corpus.documents()[i]));
    select_attributes(&stats, m)
}

fn train_model(
    config: &ClassifierConfig,
    vectors: &[BinaryVector],
    labels: &[Label],
) -> Result<FoldModel> {
    Ok(match config {
        ClassifierConfig::NaiveBayes { smoothing } => FoldModel::NaiveBayes(train_naive_bayes(
            vectors.iter().zip(labels.iter().copied()),
            *smoothing,
        )?),
        ClassifierConfig::MemoryBased { .. } => FoldModel::MemoryBased(build_instance_base(
            vectors.iter().cloned().zip(labels.iter().copied()),
        )?),
        ClassifierConfig::AlwaysLegitimate => FoldModel::AlwaysLegitimate,
        ClassifierConfig::Oracle => FoldModel::Oracle,
    })
}

/// Selects attributes and trains the classifier on one fold's training parts.
pub fn train_fold(
    corpus: &Corpus,
    plan: &FoldPlan,
    fold: usize,
    config: &ClassifierConfig,
    m: usize,
) -> Result<TrainedFold> {
    plan.check(corpus)?;
    config.check()?;
    let training = plan.train_indices(fold);
    let docs = corpus.documents();
    let labels: Vec<Label> = training.iter().map(|&i| docs[i].label).collect();
    if !config.uses_attributes() {
        return Ok(TrainedFold {
            attributes: None,
            model: train_model(config, &[], &labels)?,
        });
    }
    let attributes = fold_attributes(corpus, plan, fold, m)?;
    let vectors: Vec<BinaryVector> = training.iter().map(|&i| vectorize(&docs[i], &attributes)).collect();
    Ok(TrainedFold {
        model: train_model(config, &vectors, &labels)?,
        attributes: Some(attributes),
    })
}

impl FoldModel {
    fn predict(
        &self,
        config: &ClassifierConfig,
        policy: &DecisionPolicy,
        vector: Option<&BinaryVector>,
        gold: Label,
    ) -> Result<Label> {
        match (self, vector) {
            (FoldModel::NaiveBayes(model), Some(v)) => model.classify(v, policy),
            (FoldModel::MemoryBased(base), Some(v)) => {
                base.classify(v, config.k().unwrap_or(1), policy)
            }
            (FoldModel::AlwaysLegitimate, _) => Ok(Label::Legitimate),
            (FoldModel::Oracle, _) => Ok(gold),
            _ => unreachable!("attribute-based model without a vector"),
        }
    }
}

/// Runs one fold for several attribute counts, ranking attributes once.
fn run_fold(
    corpus: &Corpus,
    plan: &FoldPlan,
    fold: usize,
    config: &ClassifierConfig,
    policy: &DecisionPolicy,
    ms: &[usize],
) -> Result<Vec<FoldOutcome>> {
    let docs = corpus.documents();
    let training = plan.train_indices(fold);
    let testing = plan.test_indices(fold);
    let train_labels: Vec<Label> = training.iter().map(|&i| docs[i].label).collect();
    let test_labels: Vec<Label> = testing.iter().map(|&i| docs[i].label).collect();

    let score = |model: &FoldModel, test_vectors: Option<&[BinaryVector]>| -> Result<FoldOutcome> {
        let mut counts = ConfusionCounts::default();
        for (j, &gold) in test_labels.iter().enumerate() {
            let v = test_vectors.map(|vs| &vs[j]);
            counts.record(gold, model.predict(config, policy, v, gold)?);
        }
        let (wacc, werr) = weighted_accuracy(&counts, policy.lambda())?;
        Ok(FoldOutcome { counts, wacc, werr })
    };

    if !config.uses_attributes() {
        let model = train_model(config, &[], &train_labels)?;
        let outcome = score(&model, None)?;
        return Ok(vec![outcome; ms.len()]);
    }

    let m_max = ms.iter().copied().max().unwrap_or(0);
    let ranking = fold_attributes(corpus, plan, fold, m_max)?;
    let train_full: Vec<BinaryVector> = training.iter().map(|&i| vectorize(&docs[i], &ranking)).collect();
    let test_full: Vec<BinaryVector> = testing.iter().map(|&i| vectorize(&docs[i], &ranking)).collect();

    ms.iter()
        .map(|&m| {
            let train: Vec<BinaryVector> = train_full.iter().map(|v| v.prefix(m)).collect();
            let test: Vec<BinaryVector> = test_full.iter().map(|v| v.prefix(m)).collect();
            let model = train_model(config, &train, &train_labels)?;
            score(&model, Some(&test))
        })
        .collect()
}

fn evaluate_range(
    corpus: &Corpus,
    config: &ClassifierConfig,
    lambda: f64,
    ms: &[usize],
    plan: &FoldPlan,
) -> Result<Vec<AggregateResult>> {
    plan.check(corpus)?;
    config.check()?;
    let policy = DecisionPolicy::new(lambda)?;
    let per_fold: Vec<Vec<FoldOutcome>> = (0..plan.k_folds())
        .into_par_iter()
        .map(|fold| run_fold(corpus, plan, fold, config, &policy, ms))
        .collect::<Result<_>>()?;
    ms.iter()
        .enumerate()
        .map(|(j, &m)| {
            let folds = per_fold.iter().map(|outcomes| outcomes[j]).collect();
            AggregateResult::from_folds(*config, &policy, m, plan.seed(), corpus, folds)
        })
        .collect()
}

/// 10-fold (or `plan.k_folds()`) cross-validation at a fixed attribute count.
pub fn cross_validate(
    corpus: &Corpus,
    config: &ClassifierConfig,
    lambda: f64,
    m: usize,
    plan: &FoldPlan,
) -> Result<AggregateResult> {
    if m == 0 && config.uses_attributes() {
        return Err(Error::ZeroAttributes);
    }
    let mut results = evaluate_range(corpus, config, lambda, &[m], plan)?;
    Ok(results.remove(0))
}

/// One cross-validation per attribute count, all on the same fold plan.
pub fn sweep_attributes(
    corpus: &Corpus,
    config: &ClassifierConfig,
    lambda: f64,
    range: AttributeRange,
    plan: &FoldPlan,
) -> Result<Vec<AggregateResult>> {
    let range = AttributeRange::new(range.from, range.to, range.step)?;
    evaluate_range(corpus, config, lambda, &range.values(), plan)
}
