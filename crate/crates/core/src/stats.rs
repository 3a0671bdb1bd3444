//! Sample statistics for box plots and threshold classifiers.

use serde::{Deserialize, Serialize};

use crate::error::{HdcError, Result};

/// Box-plot summary with Tukey hinges and 1.5·IQR whiskers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    pub count: usize,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    /// Smallest sample at or above `q1 - 1.5 * IQR`.
    pub lo_whisker: f64,
    /// Largest sample at or below `q3 + 1.5 * IQR`.
    pub hi_whisker: f64,
}

impl BoxStats {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(HdcError::EmptyInput("box statistics need at least one sample"));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self::from_sorted(&sorted))
    }

    fn from_sorted(sorted: &[f64]) -> Self {
        let n = sorted.len();
        // Median-inclusive halves for odd n.
        let (lower, upper) =
            if n % 2 == 1 { (&sorted[..=n / 2], &sorted[n / 2..]) } else { (&sorted[..n / 2], &sorted[n / 2..]) };
        let q1 = sorted_median(lower);
        let q3 = sorted_median(upper);
        let fence = 1.5 * (q3 - q1);
        let lo_whisker = sorted.iter().copied().find(|&x| x >= q1 - fence).unwrap_or(q1);
        let hi_whisker = sorted.iter().rev().copied().find(|&x| x <= q3 + fence).unwrap_or(q3);
        Self { count: n, q1, median: sorted_median(sorted), q3, lo_whisker, hi_whisker }
    }
}

fn sorted_median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Median; the mean of the two central order statistics for even lengths.
pub fn median(samples: &[f64]) -> Option<f64> {
    if samples.is_empty() {
        return None;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(sorted_median(&sorted))
}

pub fn mean(samples: &[f64]) -> Option<f64> {
    if samples.is_empty() {
        None
    } else {
        Some(samples.iter().sum::<f64>() / samples.len() as f64)
    }
}

/// Sample standard deviation (n - 1 denominator).
pub fn std_dev(samples: &[f64]) -> Option<f64> {
    if samples.len() < 2 {
        return None;
    }
    let m = mean(samples)?;
    let ss: f64 = samples.iter().map(|x| (x - m).powi(2)).sum();
    Some((ss / (samples.len() - 1) as f64).sqrt())
}

pub fn fraction_below(samples: &[f64], threshold: f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    samples.iter().filter(|&&x| x < threshold).count() as f64 / samples.len() as f64
}

/// Mean of true-positive and true-negative rates for the rule
/// "member iff similarity > threshold".
pub fn balanced_accuracy(members: &[f64], nonmembers: &[f64], threshold: f64) -> f64 {
    let tpr = 1.0 - fraction_below_or_equal(members, threshold);
    let tnr = fraction_below_or_equal(nonmembers, threshold);
    (tpr + tnr) / 2.0
}

fn fraction_below_or_equal(samples: &[f64], threshold: f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    samples.iter().filter(|&&x| x <= threshold).count() as f64 / samples.len() as f64
}

/// Histogram overlap coefficient: `sum_i min(p_i, q_i)` over `bins`
/// equal-width bins spanning both samples. 1 for identical histograms, 0 for
/// disjoint supports.
pub fn overlap_coefficient(a: &[f64], b: &[f64], bins: usize) -> f64 {
    if a.is_empty() || b.is_empty() || bins == 0 {
        return 0.0;
    }
    let lo = a.iter().chain(b).copied().fold(f64::INFINITY, f64::min);
    let hi = a.iter().chain(b).copied().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return 1.0;
    }
    let width = (hi - lo) / bins as f64;
    let hist = |xs: &[f64]| {
        let mut h = vec![0.0; bins];
        for &x in xs {
            let i = (((x - lo) / width) as usize).min(bins - 1);
            h[i] += 1.0 / xs.len() as f64;
        }
        h
    };
    hist(a).iter().zip(hist(b)).map(|(p, q)| p.min(q)).sum()
}
