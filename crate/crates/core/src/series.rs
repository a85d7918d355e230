//! Truncated Taylor series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores exactly `N + 1` coefficients,
//! the coefficient of `zᵏ` at index `k`. Binary operations truncate to the
//! smaller order of their operands and never invent coefficients beyond the
//! known data.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::config::TOLERANCES;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a truncated series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// Real coefficients, padded with zeros (or truncated) to `order`.
    pub fn from_real(coeffs: &[f64], order: usize) -> Self {
        let mut out = Self::zero(order);
        for (slot, &c) in out.coeffs.iter_mut().zip(coeffs) {
            *slot = Complex64::new(c, 0.0);
        }
        out
    }

    /// Complex coefficients, padded with zeros (or truncated) to `order`.
    pub fn from_complex(coeffs: &[Complex64], order: usize) -> Self {
        let mut out = Self::zero(order);
        for (slot, &c) in out.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        out
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = value;
        out
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The identity map `z` (requires `order ≥ 1` to be non-zero).
    pub fn identity(order: usize) -> Self {
        let mut out = Self::zero(order);
        if order >= 1 {
            out.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `zᵏ`, or zero past the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Drops coefficients beyond `order`. Raising the order is not allowed
    /// since the missing coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product truncated to `min(order a, order b)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum())
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse at the same order.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() <= TOLERANCES.zero_constant {
            return Err(Error::ZeroConstantTerm { modulus: a0.norm() });
        }
        let inv0 = a0.inv();
        let mut out: Vec<Complex64> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0);
        for k in 1..=self.order() {
            let acc: Complex64 = (1..=k).map(|i| self.coeffs[i] * out[k - i]).sum();
            out.push(-acc * inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Term-wise derivative; the order drops by one (an order-0 series maps
    /// to the order-0 zero series).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Self { coeffs }
    }

    /// Term-wise antiderivative with zero constant term; the order rises by one.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / (k + 1) as f64));
        Self { coeffs }
    }

    /// Horner evaluation of the truncated polynomial at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Checks `f₀ = 0` and `f₁ = 1`.
    pub fn check_normalized(&self) -> Result<()> {
        let f0 = self.coeff(0);
        let f1 = self.coeff(1);
        let ok =
            self.order() >= 1 && f0.norm() <= TOLERANCES.normalization && (f1 - 1.0).norm() <= TOLERANCES.normalization;
        if ok {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                f0: f0.to_string(),
                f1: f1.to_string(),
            })
        }
    }

    /// `log(f(z)/z)` for a normalized `f` of order `N`, returned at order
    /// `N − 1` with zero constant term. Half of coefficient `n` is the
    /// logarithmic coefficient `γₙ`.
    ///
    /// Solved from `g'·q = q'` with `q = f/z`, i.e.
    /// `k gₖ = k qₖ − Σ_{j<k} j gⱼ q_{k−j}` (uses `q₀ = 1`).
    pub fn log_over_z(&self) -> Result<Self> {
        self.check_normalized()?;
        let q = &self.coeffs[1..];
        let order = q.len() - 1;
        let mut g = vec![Complex64::new(0.0, 0.0); order + 1];
        for k in 1..=order {
            let mut acc = q[k] * k as f64;
            for j in 1..k {
                acc -= g[j] * q[k - j] * j as f64;
            }
            g[k] = acc / k as f64;
        }
        Ok(Self { coeffs: g })
    }

    /// Series exponential, from `k hₖ = Σ_{j=1..k} j gⱼ h_{k−j}`.
    pub fn exp(&self) -> Self {
        let order = self.order();
        let mut h = Vec::with_capacity(order + 1);
        h.push(self.coeffs[0].exp());
        for k in 1..=order {
            let acc: Complex64 = (1..=k).map(|j| self.coeffs[j] * h[k - j] * j as f64).sum();
            h.push(acc / k as f64);
        }
        Self { coeffs: h }
    }

    /// Largest per-coefficient modulus of `self − other` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|k| op(self.coeffs[k], other.coeffs[k])).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.multiply(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
