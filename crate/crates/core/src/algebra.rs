//! Holographic reduced representation algebra.
//!
//! Vectors are real, `f64`, of a common dimension `D`. Binding is circular
//! convolution computed through the FFT, superposition is plain addition,
//! similarity is the dot product. The forward transform is unnormalized and
//! the inverse carries the `1/D` factor, so `bind` is exactly
//! `result[k] = sum_j v[j] * w[(k - j) mod D]`.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{HdcError, Result};

/// Spectral magnitude tolerance used when a fractional power checks that its
/// base is unitary. Products of a handful of unitary vectors stay well inside it.
pub const UNITARY_TOLERANCE: f64 = 1e-8;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub(crate) fn forward(data: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = data.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()));
    fft.process(&mut buf);
    buf
}

/// Inverse transform with the `1/D` factor, keeping the real part.
pub(crate) fn inverse_real(mut spectrum: Vec<Complex64>) -> Vec<f64> {
    let n = spectrum.len();
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n));
    fft.process(&mut spectrum);
    let scale = 1.0 / n as f64;
    spectrum.into_iter().map(|c| c.re * scale).collect()
}

/// A `D`-dimensional real vector.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct HrrVector {
    data: Vec<f64>,
}

impl fmt::Debug for HrrVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HrrVector(D={}, norm={:.6})", self.dim(), self.norm())
    }
}

impl TryFrom<Vec<f64>> for HrrVector {
    type Error = HdcError;
    fn try_from(data: Vec<f64>) -> Result<Self> {
        Self::new(data)
    }
}

impl From<HrrVector> for Vec<f64> {
    fn from(v: HrrVector) -> Self {
        v.data
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(HdcError::InvalidDimension(dim))
    } else {
        Ok(())
    }
}

impl HrrVector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        check_dim(data.len())?;
        if let Some(i) = data.iter().position(|x| !x.is_finite()) {
            return Err(HdcError::NonFinite(i));
        }
        Ok(Self { data })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { data: vec![0.0; dim] })
    }

    /// The binding identity `e0 = (1, 0, ..., 0)`.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut v = Self::zeros(dim)?;
        v.data[0] = 1.0;
        Ok(v)
    }

    /// Uniform draw from the unit sphere: i.i.d. standard normal components,
    /// then normalized.
    pub fn random_unit<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        check_dim(dim)?;
        loop {
            let data: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let norm = data.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 0.0 {
                return Ok(Self { data: data.into_iter().map(|x| x / norm).collect() });
            }
        }
    }

    /// Random unitary vector: every Fourier coefficient has magnitude one.
    ///
    /// Phases of the paired bins `k` and `D - k` are uniform and conjugate so
    /// the result is real. The self-conjugate bins (0, and `D/2` for even `D`)
    /// are fixed at `+1`: a `-1` there has no real fractional power, so
    /// `X^p` would lose unitarity.
    pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        check_dim(dim)?;
        let mut spectrum = vec![Complex64::new(0.0, 0.0); dim];
        spectrum[0] = Complex64::new(1.0, 0.0);
        for k in 1..dim {
            let mirror = dim - k;
            if k < mirror {
                let phase: f64 = rng.random_range(-PI..PI);
                spectrum[k] = Complex64::from_polar(1.0, phase);
                spectrum[mirror] = spectrum[k].conj();
            } else if k == mirror {
                spectrum[k] = Complex64::new(1.0, 0.0);
            }
        }
        Ok(Self { data: inverse_real(spectrum) })
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Unit-norm copy. The zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let norm = self.norm();
        if norm == 0.0 {
            return self.clone();
        }
        self.scaled(1.0 / norm)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { data: self.data.iter().map(|x| x * factor).collect() }
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(HdcError::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum { coefficients: forward(&self.data) }
    }

    /// True when every Fourier coefficient has magnitude `1 ± tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.spectrum().coefficients.iter().all(|c| (c.norm() - 1.0).abs() <= tol)
    }

    /// Circular convolution.
    pub fn bind(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let a = forward(&self.data);
        let b = forward(&other.data);
        Ok(Self { data: bind_spectra(&a, &b) })
    }

    /// Approximate inverse for binding: `result[0] = v[0]`, `result[k] = v[D - k]`.
    /// Exact inverse when `self` is unitary.
    pub fn involution(&self) -> Self {
        let d = self.dim();
        let data = (0..d).map(|k| self.data[(d - k) % d]).collect();
        Self { data }
    }

    /// Convolutive power: each Fourier coefficient raised to `exponent` on the
    /// principal branch, then the real part of the inverse transform.
    ///
    /// Integer exponents work for any vector whose spectrum has no zero (zeros
    /// are only a problem for negative exponents). Non-integer exponents are
    /// only accepted for unitary vectors.
    pub fn power(&self, exponent: f64) -> Result<Self> {
        if !exponent.is_finite() {
            return Err(HdcError::NonFinite(0));
        }
        let spectrum = forward(&self.data);
        let integral = exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64;
        let raised: Vec<Complex64> = if integral {
            let e = exponent as i32;
            if e < 0 {
                if let Some(bin) = spectrum.iter().position(|c| c.norm() == 0.0) {
                    return Err(HdcError::SingularSpectrum { exponent, bin });
                }
            }
            spectrum.iter().map(|c| c.powi(e)).collect()
        } else {
            if let Some(bin) = spectrum.iter().position(|c| c.norm() == 0.0) {
                return Err(HdcError::SingularSpectrum { exponent, bin });
            }
            if let Some((bin, c)) =
                spectrum.iter().enumerate().find(|(_, c)| (c.norm() - 1.0).abs() > UNITARY_TOLERANCE)
            {
                return Err(HdcError::NotUnitary { exponent, bin, magnitude: c.norm() });
            }
            spectrum.iter().map(|&c| principal_power(c, exponent)).collect()
        };
        Ok(Self { data: inverse_real(raised) })
    }

    /// Raw dot product.
    pub fn similarity(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        Ok(dot(&self.data, &other.data))
    }

    /// Dot product divided by both norms; 0 when either vector is zero.
    pub fn cosine(&self, other: &Self) -> Result<f64> {
        let dot = self.similarity(other)?;
        let denom = self.norm() * other.norm();
        Ok(if denom == 0.0 { 0.0 } else { dot / denom })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { data })
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// Persisted form: dimension as little-endian `u64`, then `D`
    /// little-endian `f64` components.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 8 * self.dim());
        out.extend_from_slice(&(self.dim() as u64).to_le_bytes());
        for x in &self.data {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }

    pub fn from_le_bytes(bytes: &[u8]) -> Result<Self> {
        let header: [u8; 8] = bytes
            .get(..8)
            .and_then(|h| h.try_into().ok())
            .ok_or_else(|| HdcError::Malformed("missing dimension header".into()))?;
        let dim = u64::from_le_bytes(header) as usize;
        let body = &bytes[8..];
        if body.len() != dim.saturating_mul(8) {
            return Err(HdcError::Malformed(format!(
                "expected {} bytes of components for D={dim}, found {}",
                dim.saturating_mul(8),
                body.len()
            )));
        }
        let data = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8"))).collect();
        Self::new(data)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn bind_spectra(a: &[Complex64], b: &[Complex64]) -> Vec<f64> {
    inverse_real(a.iter().zip(b).map(|(x, y)| x * y).collect())
}

/// `c^p = exp(p * Log c)` with the argument taken in `(-pi, pi]`.
fn principal_power(c: Complex64, p: f64) -> Complex64 {
    let mut arg = c.arg();
    if arg <= -PI {
        arg += 2.0 * PI;
    }
    Complex64::from_polar(c.norm().powf(p), arg * p)
}

/// Componentwise sum. Not normalized.
pub fn superpose(vectors: &[HrrVector]) -> Result<HrrVector> {
    let (first, rest) = vectors.split_first().ok_or(HdcError::EmptyInput("superpose needs at least one vector"))?;
    let mut acc = first.clone();
    for v in rest {
        first.same_dim(v)?;
        acc.add_assign(v);
    }
    Ok(acc)
}

/// Forward DFT of an [`HrrVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    coefficients: Vec<Complex64>,
}

impl Spectrum {
    pub fn from_coefficients(coefficients: Vec<Complex64>) -> Self {
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.norm()).collect()
    }

    /// `coefficient[k] == conj(coefficient[(D - k) mod D])` within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = self.coefficients.len();
        (0..d).all(|k| (self.coefficients[k] - self.coefficients[(d - k) % d].conj()).norm() <= tol)
    }

    /// Real part of the inverse transform.
    pub fn to_vector(&self) -> Result<HrrVector> {
        HrrVector::new(inverse_real(self.coefficients.clone()))
    }
}

/// Similarity levels two and three standard deviations above the
/// random-pair mean, with `sigma = 1/sqrt(D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityThresholds {
    pub weak: f64,
    pub strong: f64,
}

impl SimilarityThresholds {
    pub fn sigma(&self) -> f64 {
        self.weak / 2.0
    }

    /// `0 < weak < strong < 1`; fails for `D <= 9`.
    pub fn is_meaningful(&self) -> bool {
        0.0 < self.weak && self.weak < self.strong && self.strong < 1.0
    }
}

pub fn thresholds(dim: usize) -> SimilarityThresholds {
    let root = (dim as f64).sqrt();
    SimilarityThresholds { weak: 2.0 / root, strong: 3.0 / root }
}
