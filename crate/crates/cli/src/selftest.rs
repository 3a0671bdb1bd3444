//! Equivalence checks between the fast paths and the slow reference
//! implementations.

use std::fmt;

use hdc_core::partition::{partition_count, Partitions};
use hdc_core::reference;
use hdc_core::rng::{purpose, SeedTree};
use hdc_core::{HrrVector, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<28} {}", self.name, self.detail)
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn check(name: &'static str, worst: f64, tol: f64) -> Check {
    Check { name, passed: worst <= tol, detail: format!("max error {worst:.3e} (tolerance {tol:.0e})") }
}

/// Runs every check with streams derived from `seed`.
pub fn run_checks(seed: u64) -> Result<Vec<Check>> {
    let tree = SeedTree::new(seed);
    let mut checks = Vec::new();

    let mut worst = 0.0_f64;
    for dim in [4usize, 8, 64, 256] {
        let mut rng = tree.stream(&[purpose::SELFTEST, 1, dim as u64]);
        for _ in 0..20 {
            let a = HrrVector::random_unit(dim, &mut rng)?;
            let b = HrrVector::random_unit(dim, &mut rng)?;
            let direct = reference::circular_convolution(a.as_slice(), b.as_slice());
            worst = worst.max(max_abs_diff(a.bind(&b)?.as_slice(), &direct));
        }
    }
    checks.push(check("bind vs direct convolution", worst, 1e-10));

    let mut worst = 0.0_f64;
    for dim in [5usize, 16, 64] {
        let mut rng = tree.stream(&[purpose::SELFTEST, 2, dim as u64]);
        let v = HrrVector::random_unit(dim, &mut rng)?;
        let slow = reference::naive_dft(v.as_slice());
        let fast = v.spectrum();
        worst = worst.max(fast.coefficients().iter().zip(&slow).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
    }
    checks.push(check("FFT vs direct DFT", worst, 1e-10));

    let mut worst = 0.0_f64;
    let mut rng = tree.stream(&[purpose::SELFTEST, 3]);
    for dim in [16usize, 63, 64] {
        let u = HrrVector::random_unitary(dim, &mut rng)?;
        for p in [0.5, -1.7, 2.25, 3.0] {
            worst = worst.max(max_abs_diff(u.power(p)?.as_slice(), &reference::phase_power(u.as_slice(), p)));
        }
    }
    checks.push(check("power vs spectral phase", worst, 1e-9));

    let mut worst = 0.0_f64;
    let mut rng = tree.stream(&[purpose::SELFTEST, 4]);
    for _ in 0..20 {
        let u = HrrVector::random_unitary(256, &mut rng)?;
        let v = HrrVector::random_unit(256, &mut rng)?;
        worst = worst.max(max_abs_diff(u.bind(&v)?.bind(&u.involution())?.as_slice(), v.as_slice()));
    }
    checks.push(check("unitary unbinding", worst, 1e-9));

    let dp = reference::partition_counts(30);
    let mut mismatches = Vec::new();
    for (n, &expected) in dp.iter().enumerate().skip(1) {
        let listed = Partitions::new(n)?.count() as u64;
        if listed != expected || partition_count(n) != expected {
            mismatches.push(n);
        }
    }
    checks.push(Check {
        name: "partition counts n <= 30",
        passed: mismatches.is_empty(),
        detail: if mismatches.is_empty() {
            format!("p(30) = {}", dp[30])
        } else {
            format!("mismatch at n = {mismatches:?}")
        },
    });

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_pass() {
        let checks = run_checks(0).unwrap();
        assert_eq!(checks.len(), 5);
        for c in &checks {
            assert!(c.passed, "{c}");
        }
    }
}
