//! Cost-sensitive measures: weighted accuracy, total cost ratio, spam
//! recall and precision.

use std::ops::{Add, AddAssign};

use crate::corpus::Label;
use crate::error::{Error, Result};

/// `n_{Y -> Z}` for `Y, Z` in {legit, spam}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub legit_legit: usize,
    pub legit_spam: usize,
    pub spam_spam: usize,
    pub spam_legit: usize,
}

impl ConfusionCounts {
    pub fn n_legit(&self) -> usize {
        self.legit_legit + self.legit_spam
    }

    pub fn n_spam(&self) -> usize {
        self.spam_spam + self.spam_legit
    }

    pub fn total(&self) -> usize {
        self.n_legit() + self.n_spam()
    }

    pub fn record(&mut self, gold: Label, predicted: Label) {
        match (gold, predicted) {
            (Label::Legitimate, Label::Legitimate) => self.legit_legit += 1,
            (Label::Legitimate, Label::Spam) => self.legit_spam += 1,
            (Label::Spam, Label::Spam) => self.spam_spam += 1,
            (Label::Spam, Label::Legitimate) => self.spam_legit += 1,
        }
    }

    /// Counts of the no-filter policy: everything passes.
    pub fn baseline(n_legit: usize, n_spam: usize) -> Self {
        ConfusionCounts {
            legit_legit: n_legit,
            spam_legit: n_spam,
            ..Self::default()
        }
    }
}

impl Add for ConfusionCounts {
    type Output = ConfusionCounts;

    fn add(self, rhs: ConfusionCounts) -> ConfusionCounts {
        ConfusionCounts {
            legit_legit: self.legit_legit + rhs.legit_legit,
            legit_spam: self.legit_spam + rhs.legit_spam,
            spam_spam: self.spam_spam + rhs.spam_spam,
            spam_legit: self.spam_legit + rhs.spam_legit,
        }
    }
}

impl AddAssign for ConfusionCounts {
    fn add_assign(&mut self, rhs: ConfusionCounts) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for ConfusionCounts {
    fn sum<I: Iterator<Item = ConfusionCounts>>(iter: I) -> Self {
        iter.fold(ConfusionCounts::default(), Add::add)
    }
}

pub fn confusion_counts(gold: &[Label], predicted: &[Label]) -> Result<ConfusionCounts> {
    if gold.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            expected: gold.len(),
            found: predicted.len(),
        });
    }
    let mut counts = ConfusionCounts::default();
    for (&g, &p) in gold.iter().zip(predicted) {
        counts.record(g, p);
    }
    Ok(counts)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidLambda(lambda))
    }
}

/// `(wacc, werr)`: each legitimate message counts as `lambda` messages.
pub fn weighted_accuracy(counts: &ConfusionCounts, lambda: f64) -> Result<(f64, f64)> {
    check_lambda(lambda)?;
    if counts.total() == 0 {
        return Err(Error::EmptyCounts);
    }
    let num = lambda * counts.legit_legit as f64 + counts.spam_spam as f64;
    let den = lambda * counts.n_legit() as f64 + counts.n_spam() as f64;
    let wacc = num / den;
    Ok((wacc, 1.0 - wacc))
}

pub fn accuracy(counts: &ConfusionCounts) -> Result<(f64, f64)> {
    weighted_accuracy(counts, 1.0)
}

/// `(wacc_b, werr_b)` of the no-filter baseline.
pub fn baseline_metrics(n_legit: usize, n_spam: usize, lambda: f64) -> Result<(f64, f64)> {
    check_lambda(lambda)?;
    if n_legit + n_spam == 0 {
        return Err(Error::EmptyCounts);
    }
    let legit = lambda * n_legit as f64;
    let den = legit + n_spam as f64;
    Ok((legit / den, n_spam as f64 / den))
}

/// `N_spam / (lambda * n_legit->spam + n_spam->legit)`; infinite when the
/// filter makes no errors.
pub fn total_cost_ratio(counts: &ConfusionCounts, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let den = lambda * counts.legit_spam as f64 + counts.spam_legit as f64;
    if den == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(counts.n_spam() as f64 / den)
}

/// Spam recall and precision. Precision is `None` when nothing was blocked.
pub fn spam_recall_precision(counts: &ConfusionCounts) -> (f64, Option<f64>) {
    let recall = if counts.n_spam() == 0 {
        0.0
    } else {
        counts.spam_spam as f64 / counts.n_spam() as f64
    };
    let blocked = counts.spam_spam + counts.legit_spam;
    let precision = (blocked > 0).then(|| counts.spam_spam as f64 / blocked as f64);
    (recall, precision)
}

/// All measures for one set of counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub acc: f64,
    pub err: f64,
    pub wacc: f64,
    pub werr: f64,
    pub baseline_wacc: f64,
    pub baseline_werr: f64,
    /// `f64::INFINITY` for a perfect filter.
    pub tcr: f64,
    pub spam_recall: f64,
    pub spam_precision: Option<f64>,
}

impl Metrics {
    pub fn compute(counts: &ConfusionCounts, lambda: f64) -> Result<Self> {
        let (acc, err) = accuracy(counts)?;
        let (wacc, werr) = weighted_accuracy(counts, lambda)?;
        let (baseline_wacc, baseline_werr) = baseline_metrics(counts.n_legit(), counts.n_spam(), lambda)?;
        let (spam_recall, spam_precision) = spam_recall_precision(counts);
        Ok(Metrics {
            acc,
            err,
            wacc,
            werr,
            baseline_wacc,
            baseline_werr,
            tcr: total_cost_ratio(counts, lambda)?,
            spam_recall,
            spam_precision,
        })
    }
}
