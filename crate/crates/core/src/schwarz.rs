//! Schwarz functions: analytic self-maps of the unit disk fixing the origin.
//!
//! They appear in two forms. A [`SchwarzTriple`] holds the first three
//! Taylor coefficients, which is all the closed-form `γ₃` expressions need.
//! A [`BlaschkeProduct`] is a concrete witness whose self-map property holds
//! by construction, so anything computed from it is attained by a genuine
//! Schwarz function.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::TOLERANCES;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Taylor coefficients `(c₁, c₂, c₃)` of `w(z) = c₁z + c₂z² + c₃z³ + ⋯`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchwarzTriple {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl SchwarzTriple {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn real(c1: f64, c2: f64, c3: f64) -> Self {
        Self::new(c1.into(), c2.into(), c3.into())
    }

    /// Reads `c₁, c₂, c₃` off a series (missing terms count as zero).
    pub fn from_series(w: &TruncatedSeries) -> Self {
        Self::new(w.coeff(1), w.coeff(2), w.coeff(3))
    }

    pub fn carlson_slacks(&self) -> CarlsonSlacks {
        carlson_check(self)
    }
}

/// The three slacks of Carlson's coefficient inequalities. All of them are
/// non-negative (up to rounding) for every Schwarz function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarlsonSlacks {
    /// `1 − |c₁|`
    pub first: f64,
    /// `(1 − |c₁|²) − |c₂|`
    pub second: f64,
    /// `(1 − |c₁|² − |c₂|²/(1 + |c₁|)) − |c₃|`
    pub third: f64,
}

impl CarlsonSlacks {
    pub fn min(&self) -> f64 {
        self.first.min(self.second).min(self.third)
    }

    pub fn is_feasible(&self) -> bool {
        self.min() >= -TOLERANCES.feasibility
    }
}

pub fn carlson_check(c: &SchwarzTriple) -> CarlsonSlacks {
    let (x, y, z) = (c.c1.norm(), c.c2.norm(), c.c3.norm());
    CarlsonSlacks {
        first: 1.0 - x,
        second: (1.0 - x * x) - y,
        third: (1.0 - x * x - y * y / (1.0 + x)) - z,
    }
}

/// `w(z) = rotation · z · Π (z − αₖ)/(1 − ᾱₖ z)`.
///
/// The factor `z` is the zero pinned at the origin, so `w(0) = 0` holds
/// structurally and `degree = zeros.len() + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    rotation: Complex64,
}

impl BlaschkeProduct {
    /// Validates `|αₖ| < 1`; the rotation is projected onto the unit circle.
    pub fn new(zeros: Vec<Complex64>, rotation: Complex64) -> Result<Self> {
        if let Some((index, a)) = zeros.iter().enumerate().find(|(_, a)| a.norm() >= 1.0) {
            return Err(Error::ZeroOutsideDisk {
                index,
                modulus: a.norm(),
            });
        }
        let r = rotation.norm();
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rotation {rotation} cannot be normalized"
            )));
        }
        Ok(Self {
            zeros,
            rotation: rotation / r,
        })
    }

    pub fn with_angle(zeros: Vec<Complex64>, theta: f64) -> Result<Self> {
        Self::new(zeros, Complex64::from_polar(1.0, theta))
    }

    /// `w(z) = z`.
    pub fn identity() -> Self {
        Self {
            zeros: Vec::new(),
            rotation: Complex64::new(1.0, 0.0),
        }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len() + 1
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn rotation(&self) -> Complex64 {
        self.rotation
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.rotation * z, |acc, a| acc * (z - a) / (1.0 - a.conj() * z))
    }

    pub fn taylor(&self, order: usize) -> Result<TruncatedSeries> {
        taylor_of_blaschke(self, order)
    }

    /// First three Taylor coefficients, computed directly.
    pub fn triple(&self) -> SchwarzTriple {
        // w = rot·z·Π φₖ; only φ's coefficients up to z² matter for c₁..c₃.
        let mut p = [self.rotation, Complex64::default(), Complex64::default()];
        for a in &self.zeros {
            let s = 1.0 - a.norm_sqr();
            let phi = [-a, s.into(), a.conj() * s];
            p = [
                p[0] * phi[0],
                p[0] * phi[1] + p[1] * phi[0],
                p[0] * phi[2] + p[1] * phi[1] + p[2] * phi[0],
            ];
        }
        SchwarzTriple::new(p[0], p[1], p[2])
    }
}

/// Taylor expansion of a Blaschke product up to `order` (which must be ≥ 1).
/// Coefficient 0 is exactly zero.
pub fn taylor_of_blaschke(b: &BlaschkeProduct, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("Blaschke expansion needs order >= 1".into()));
    }
    if let Some((index, a)) = b.zeros.iter().enumerate().find(|(_, a)| a.norm() >= 1.0) {
        return Err(Error::ZeroOutsideDisk {
            index,
            modulus: a.norm(),
        });
    }
    let mut w = TruncatedSeries::identity(order).scale(b.rotation);
    for a in &b.zeros {
        let numerator = TruncatedSeries::from_complex(&[-a, Complex64::new(1.0, 0.0)], order);
        let denominator = TruncatedSeries::from_complex(&[Complex64::new(1.0, 0.0), -a.conj()], order);
        w = &w * &(&numerator * &denominator.reciprocal()?);
    }
    Ok(w)
}

/// Draws a Blaschke product of the given degree from `rng`.
///
/// Free zeros are area-uniform on the open disk (`r = √u`), the rotation is
/// uniform on the circle. With `real_only` the zeros are uniform on `(−1, 1)`
/// and the rotation is `±1`, which makes every Taylor coefficient real.
pub fn sample_with<R: Rng + ?Sized>(rng: &mut R, degree: usize, real_only: bool) -> BlaschkeProduct {
    let free = degree.saturating_sub(1);
    let (zeros, rotation) = if real_only {
        let zeros = (0..free)
            .map(|_| {
                let r: f64 = rng.gen();
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                Complex64::new(sign * r, 0.0)
            })
            .collect();
        let rotation = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        (zeros, Complex64::new(rotation, 0.0))
    } else {
        let zeros = (0..free)
            .map(|_| {
                let r = rng.gen::<f64>().sqrt();
                let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(r, theta)
            })
            .collect();
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        (zeros, Complex64::from_polar(1.0, theta))
    };
    BlaschkeProduct { zeros, rotation }
}

/// Deterministic sample: a pure function of `(seed, degree, real_only)`.
pub fn sample_schwarz(seed: u64, degree: usize, real_only: bool) -> Result<BlaschkeProduct> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_with(&mut rng, degree, real_only))
}
