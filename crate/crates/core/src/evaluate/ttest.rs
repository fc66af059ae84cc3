//! One-tailed paired t-test on per-fold scores.

use crate::error::{Error, Result};

/// One-tailed critical values of Student's t at alpha = 0.05, df 1..=30.
const T_CRITICAL_05: [f64; 30] = [
    6.314, 2.920, 2.353, 2.132, 2.015, 1.943, 1.895, 1.860, 1.833, 1.812, //
    1.796, 1.782, 1.771, 1.761, 1.753, 1.746, 1.740, 1.734, 1.729, 1.725, //
    1.721, 1.717, 1.714, 1.711, 1.708, 1.706, 1.703, 1.701, 1.699, 1.697,
];

/// Normal quantile used beyond the table.
const Z_CRITICAL_05: f64 = 1.645;

pub fn critical_value_05(df: usize) -> f64 {
    match df {
        0 => f64::INFINITY,
        1..=30 => T_CRITICAL_05[df - 1],
        _ => Z_CRITICAL_05,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    /// `+inf` when every difference is the same positive value.
    pub t_statistic: f64,
    pub degrees_of_freedom: usize,
    pub significant_at_05: bool,
}

impl TestResult {
    pub fn verdict(&self) -> &'static str {
        if self.significant_at_05 {
            "significant"
        } else {
            "not significant"
        }
    }
}

/// Tests whether `a` exceeds `b` on average, pairing entries by position.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TestResult> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = diffs.iter().sum::<f64>() / n as f64;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sd = var.sqrt();
    let df = n - 1;

    // Differences equal up to rounding count as zero variance.
    let scale = diffs.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    let t_statistic = if sd <= 1e-12 * scale {
        if mean > 0.0 {
            f64::INFINITY
        } else if mean < 0.0 {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    } else {
        mean / (sd / (n as f64).sqrt())
    };
    Ok(TestResult {
        t_statistic,
        degrees_of_freedom: df,
        significant_at_05: t_statistic > critical_value_05(df),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_scores() {
        let a = [0.9, 0.95, 0.97, 0.91];
        let r = paired_t_test(&a, &a).unwrap();
        assert_eq!(r.t_statistic, 0.0);
        assert_eq!(r.degrees_of_freedom, 3);
        assert!(!r.significant_at_05);
    }

    #[test]
    fn constant_positive_difference() {
        let b = [0.90, 0.91, 0.95, 0.97, 0.93, 0.92, 0.96, 0.94, 0.90, 0.91];
        let a: Vec<f64> = b.iter().map(|x| x + 0.01).collect();
        let r = paired_t_test(&a, &b).unwrap();
        assert_eq!(r.t_statistic, f64::INFINITY);
        assert!(r.significant_at_05);
        assert_eq!(paired_t_test(&b, &a).unwrap().t_statistic, f64::NEG_INFINITY);
    }

    #[test]
    fn reference_difference_vector() {
        let d = [0.02, 0.00, 0.01, 0.03, 0.00, 0.02, 0.01, 0.00, 0.02, 0.01];
        let zeros = [0.0; 10];
        let r = paired_t_test(&d, &zeros).unwrap();
        // mean 0.012, sample sd sqrt(9.6e-4 / 9)
        let expected = 0.012 / ((9.6e-4f64 / 9.0).sqrt() / 10f64.sqrt());
        assert!((r.t_statistic - expected).abs() < 1e-9);
        assert!((r.t_statistic - 3.674_234_614).abs() < 1e-6);
        assert_eq!(r.degrees_of_freedom, 9);
        assert!(r.significant_at_05);
    }

    #[test]
    fn errors() {
        assert!(matches!(paired_t_test(&[1.0], &[0.0]), Err(Error::TooFewSamples(1))));
        assert!(paired_t_test(&[1.0, 2.0], &[0.0]).is_err());
    }

    #[test]
    fn critical_values() {
        assert_eq!(critical_value_05(9), 1.833);
        assert_eq!(critical_value_05(30), 1.697);
        assert_eq!(critical_value_05(31), 1.645);
    }
}
