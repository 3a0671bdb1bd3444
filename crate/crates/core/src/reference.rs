//! Slow reference implementations.
//!
//! These share no code with the FFT path or the partition generator. They
//! back the `selftest` command and the equivalence tests.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

/// `O(D^2)` circular convolution, `out[k] = sum_j a[j] * b[(k - j) mod D]`.
pub fn circular_convolution(a: &[f64], b: &[f64]) -> Vec<f64> {
    assert_eq!(a.len(), b.len(), "circular_convolution needs equal lengths");
    let d = a.len();
    (0..d).map(|k| (0..d).map(|j| a[j] * b[(k + d - j) % d]).sum()).collect()
}

/// `O(D^2)` unnormalized forward DFT.
pub fn naive_dft(x: &[f64]) -> Vec<Complex64> {
    let d = x.len();
    (0..d)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, &v)| {
                    let angle = -2.0 * PI * ((k * j) % d) as f64 / d as f64;
                    Complex64::from_polar(v, angle)
                })
                .sum()
        })
        .collect()
}

/// `O(D^2)` inverse DFT with the `1/D` factor; returns the real part.
pub fn naive_idft_real(spectrum: &[Complex64]) -> Vec<f64> {
    let d = spectrum.len();
    (0..d)
        .map(|j| {
            let sum: Complex64 = spectrum
                .iter()
                .enumerate()
                .map(|(k, c)| c * Complex64::from_polar(1.0, 2.0 * PI * ((k * j) % d) as f64 / d as f64))
                .sum();
            sum.re / d as f64
        })
        .collect()
}

/// Fractional power of a unitary vector by scaling spectral phases.
///
/// Phases are read with `atan2` and folded into `(-pi, pi]`; magnitudes are
/// assumed to be one and dropped.
pub fn phase_power(x: &[f64], exponent: f64) -> Vec<f64> {
    let spectrum: Vec<Complex64> = naive_dft(x)
        .into_iter()
        .map(|c| {
            let mut phase = c.im.atan2(c.re);
            if phase <= -PI {
                phase += 2.0 * PI;
            }
            Complex64::from_polar(1.0, phase * exponent)
        })
        .collect();
    naive_idft_real(&spectrum)
}

/// Number of partitions of every `m <= n`, by the coin-change recurrence.
pub fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_by_hand() {
        assert_eq!(circular_convolution(&[1.0, 2.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]), vec![0.0, 1.0, 2.0, 0.0]);
        assert_eq!(circular_convolution(&[1.0, 2.0, 3.0], &[1.0, 0.0, 1.0]), vec![3.0, 5.0, 4.0]);
    }

    #[test]
    fn dft_round_trip() {
        let x = [0.5, -1.0, 2.0, 0.25, 3.0];
        let back = naive_idft_real(&naive_dft(&x));
        assert!(x.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn known_partition_numbers() {
        let p = partition_counts(30);
        assert_eq!(&p[..11], &[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(p[20], 627);
        assert_eq!(p[30], 5604);
    }
}
