//! Naive Bayes over binary attributes with a cost-derived decision threshold.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::features::BinaryVector;

/// Estimator for `P(X_i = 1 | C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Smoothing {
    /// Add-one: `(count + 1) / (n_c + 2)`.
    #[default]
    Laplace,
    /// Raw frequency ratio `count / n_c`.
    None,
}

impl FromStr for Smoothing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplace" => Ok(Smoothing::Laplace),
            "none" => Ok(Smoothing::None),
            other => Err(Error::Parse(format!("unknown smoothing `{other}`"))),
        }
    }
}

/// Cost ratio `lambda` and its posterior threshold `t = lambda / (1 + lambda)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionPolicy {
    lambda: f64,
    threshold: f64,
}

impl DecisionPolicy {
    pub fn new(lambda: f64) -> Result<Self> {
        Ok(DecisionPolicy {
            lambda,
            threshold: lambda_to_threshold(lambda)?,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

pub fn lambda_to_threshold(lambda: f64) -> Result<f64> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok(lambda / (1.0 + lambda))
}

/// Inverse of [`lambda_to_threshold`], for `t` in `(0, 1)`.
pub fn threshold_to_lambda(threshold: f64) -> f64 {
    threshold / (1.0 - threshold)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayesModel {
    prior_spam: f64,
    prior_legit: f64,
    /// `P(X_i = 1 | spam)`
    cond_spam: Vec<f64>,
    /// `P(X_i = 1 | legit)`
    cond_legit: Vec<f64>,
}

/// Trains on labeled vectors; priors are unsmoothed frequency ratios.
pub fn train_naive_bayes<'a, I>(examples: I, smoothing: Smoothing) -> Result<NaiveBayesModel>
where
    I: IntoIterator<Item = (&'a BinaryVector, Label)>,
{
    let mut m = None;
    let mut n_spam = 0usize;
    let mut n_legit = 0usize;
    let mut ones_spam: Vec<usize> = Vec::new();
    let mut ones_legit: Vec<usize> = Vec::new();
    for (v, label) in examples {
        let expected = *m.get_or_insert_with(|| {
            ones_spam = vec![0; v.len()];
            ones_legit = vec![0; v.len()];
            v.len()
        });
        if v.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: v.len(),
            });
        }
        let (count, ones) = match label {
            Label::Spam => (&mut n_spam, &mut ones_spam),
            Label::Legitimate => (&mut n_legit, &mut ones_legit),
        };
        *count += 1;
        for (i, bit) in v.iter().enumerate() {
            ones[i] += bit as usize;
        }
    }
    if n_spam == 0 || n_legit == 0 {
        return Err(Error::DegenerateTrainingSet);
    }

    let estimate = |count: usize, n: usize| match smoothing {
        Smoothing::Laplace => (count as f64 + 1.0) / (n as f64 + 2.0),
        Smoothing::None => count as f64 / n as f64,
    };
    let n = (n_spam + n_legit) as f64;
    Ok(NaiveBayesModel {
        prior_spam: n_spam as f64 / n,
        prior_legit: n_legit as f64 / n,
        cond_spam: ones_spam.iter().map(|&c| estimate(c, n_spam)).collect(),
        cond_legit: ones_legit.iter().map(|&c| estimate(c, n_legit)).collect(),
    })
}

impl NaiveBayesModel {
    pub fn from_parts(
        prior_spam: f64,
        cond_spam: Vec<f64>,
        cond_legit: Vec<f64>,
    ) -> Result<Self> {
        if cond_spam.len() != cond_legit.len() {
            return Err(Error::LengthMismatch {
                expected: cond_spam.len(),
                found: cond_legit.len(),
            });
        }
        let valid = |p: f64| (0.0..=1.0).contains(&p);
        if !valid(prior_spam) || !cond_spam.iter().chain(&cond_legit).all(|&p| valid(p)) {
            return Err(Error::Parse("probabilities must lie in [0, 1]".into()));
        }
        Ok(NaiveBayesModel {
            prior_spam,
            prior_legit: 1.0 - prior_spam,
            cond_spam,
            cond_legit,
        })
    }

    pub fn m(&self) -> usize {
        self.cond_spam.len()
    }

    pub fn prior_spam(&self) -> f64 {
        self.prior_spam
    }

    pub fn prior_legit(&self) -> f64 {
        self.prior_legit
    }

    /// `P(X_i = 1 | class)`.
    pub fn conditional(&self, i: usize, label: Label) -> f64 {
        match label {
            Label::Spam => self.cond_spam[i],
            Label::Legitimate => self.cond_legit[i],
        }
    }

    fn check_len(&self, v: &BinaryVector) -> Result<()> {
        if v.len() != self.m() {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `ln P(C = c) + sum_i ln P(X_i = x_i | C = c)` for both classes.
    fn log_joint(&self, v: &BinaryVector) -> (f64, f64) {
        let mut spam = self.prior_spam.ln();
        let mut legit = self.prior_legit.ln();
        for (i, bit) in v.iter().enumerate() {
            let (ps, pl) = (self.cond_spam[i], self.cond_legit[i]);
            if bit {
                spam += ps.ln();
                legit += pl.ln();
            } else {
                spam += (1.0 - ps).ln();
                legit += (1.0 - pl).ln();
            }
        }
        (spam, legit)
    }

    /// `P(C = spam | X = v)`, evaluated in log space.
    pub fn posterior_spam(&self, v: &BinaryVector) -> Result<f64> {
        self.check_len(v)?;
        let (spam, legit) = self.log_joint(v);
        Ok(two_class_posterior(spam, legit))
    }

    pub fn posterior_legit(&self, v: &BinaryVector) -> Result<f64> {
        self.check_len(v)?;
        let (spam, legit) = self.log_joint(v);
        Ok(two_class_posterior(legit, spam))
    }

    /// Spam iff the posterior strictly exceeds the policy threshold.
    pub fn classify(&self, v: &BinaryVector, policy: &DecisionPolicy) -> Result<Label> {
        let p = self.posterior_spam(v)?;
        Ok(if p > policy.threshold() {
            Label::Spam
        } else {
            Label::Legitimate
        })
    }

    /// Plain-text form: `nb m=<m>`, a priors line, then
    /// `P(1|spam) P(0|spam) P(1|legit) P(0|legit)` per attribute.
    pub fn to_text(&self) -> String {
        let mut out = format!("nb m={}\n", self.m());
        let _ = writeln!(out, "priors {} {}", self.prior_spam, self.prior_legit);
        for (ps, pl) in self.cond_spam.iter().zip(&self.cond_legit) {
            let _ = writeln!(out, "{} {} {} {}", ps, 1.0 - ps, pl, 1.0 - pl);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("nb model: {what}"));
        let mut lines = text.lines();
        let m: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("nb m="))
            .and_then(|m| m.trim().parse().ok())
            .ok_or_else(|| bad("missing `nb m=<m>` header"))?;
        let priors: Vec<f64> = lines
            .next()
            .and_then(|l| l.strip_prefix("priors "))
            .ok_or_else(|| bad("missing priors line"))?
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("unparsable prior"))?;
        let [prior_spam, prior_legit] = priors[..] else {
            return Err(bad("priors line needs two values"));
        };
        let mut cond_spam = Vec::with_capacity(m);
        let mut cond_legit = Vec::with_capacity(m);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let row: Vec<f64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("unparsable conditional"))?;
            let [p1s, _, p1l, _] = row[..] else {
                return Err(bad("conditional rows need four values"));
            };
            cond_spam.push(p1s);
            cond_legit.push(p1l);
        }
        if cond_spam.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                found: cond_spam.len(),
            });
        }
        let mut model = NaiveBayesModel::from_parts(prior_spam, cond_spam, cond_legit)?;
        model.prior_legit = prior_legit;
        Ok(model)
    }
}

/// `exp(a) / (exp(a) + exp(b))` without leaving log space.
fn two_class_posterior(a: f64, b: f64) -> f64 {
    match (a == f64::NEG_INFINITY, b == f64::NEG_INFINITY) {
        // No evidence for either class (only possible without smoothing).
        (true, true) => 0.5,
        (true, false) => 0.0,
        (false, true) => 1.0,
        (false, false) => 1.0 / (1.0 + (b - a).exp()),
    }
}

pub fn posterior_spam(model: &NaiveBayesModel, v: &BinaryVector) -> Result<f64> {
    model.posterior_spam(v)
}

pub fn classify_nb(
    model: &NaiveBayesModel,
    v: &BinaryVector,
    policy: &DecisionPolicy,
) -> Result<Label> {
    model.classify(v, policy)
}
