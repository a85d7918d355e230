//! Real objectives on the region `E = {0 ≤ x ≤ 1, 0 ≤ y ≤ 1 − x²}`.
//!
//! With `x = |c₁|` and `y = |c₂|`, bounding `|c₃|` by Carlson's third
//! inequality turns `scale · |γ₃|` into one of
//!
//! ```text
//! f₁(x, y) = 3 + 2x + 4y + 12(1 − x² − y²/(1 + x)) + 8xy + 4x³
//! f₂(x, y) = x + 3(1 − x² − y²/(1 + x)) + 2xy + x³
//! f₃(x, y) = 5 + 2x + 4y + 12(1 − x² − y²/(1 + x)) + 8xy + 4x³
//! ```
//!
//! All three share the shape
//! `k₀ + kₓx + k_y y + k_c(1 − x² − y²/(1 + x)) + k_xy xy + k_x³ x³`,
//! which [`ObjectiveForm`] stores. Note `f₃ = f₁ + 2`.

use serde::Serialize;

use crate::config::TOLERANCES;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::polynomial::Polynomial;

/// `(x, y) = (|c₁|, |c₂|)`, validated to lie in `E` up to a `1e−12` slack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint {
    pub x: f64,
    pub y: f64,
}

impl RegionPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let slack = TOLERANCES.feasibility;
        let inside = x.is_finite()
            && y.is_finite()
            && x >= -slack
            && x <= 1.0 + slack
            && y >= -slack
            && y <= 1.0 - x * x + slack;
        if inside {
            Ok(Self { x, y })
        } else {
            Err(Error::OutsideRegion { x, y })
        }
    }

    /// Strictly inside `E`, away from all three edges.
    pub fn is_interior(&self) -> bool {
        self.x > 0.0 && self.x < 1.0 && self.y > 0.0 && self.y < 1.0 - self.x * self.x
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Coefficients of the shared objective shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveForm {
    pub constant: f64,
    pub x: f64,
    pub y: f64,
    /// multiplies `1 − x² − y²/(1 + x)`, the Carlson bound on `|c₃|`
    pub carlson: f64,
    pub xy: f64,
    pub x_cubed: f64,
}

impl ObjectiveForm {
    pub fn of(family: Family) -> Self {
        let (constant, x, y, carlson, xy, x_cubed) = match family {
            Family::F1 => (3.0, 2.0, 4.0, 12.0, 8.0, 4.0),
            Family::F2 => (0.0, 1.0, 0.0, 3.0, 2.0, 1.0),
            Family::F3 => (5.0, 2.0, 4.0, 12.0, 8.0, 4.0),
        };
        Self {
            constant,
            x,
            y,
            carlson,
            xy,
            x_cubed,
        }
    }

    /// Unchecked evaluation; defined for any `x > −1`.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.constant
            + self.x * x
            + self.y * y
            + self.carlson * (1.0 - x * x - y * y / (1.0 + x))
            + self.xy * x * y
            + self.x_cubed * x * x * x
    }

    /// `(∂/∂x, ∂/∂y)`, unchecked.
    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let r = y / (1.0 + x);
        let dx = self.x + self.carlson * (r * r - 2.0 * x) + self.xy * y + 3.0 * self.x_cubed * x * x;
        let dy = self.y - 2.0 * self.carlson * r + self.xy * x;
        (dx, dy)
    }

    /// The objective along a parametrised curve `(x(t), y(t))`, for
    /// polynomial `x(t)`, `y(t)` such that `1 + x(t)` divides `y(t)²`.
    /// Returns `None` when the division leaves a remainder.
    pub fn restrict(&self, x: &Polynomial, y: &Polynomial) -> Option<Polynomial> {
        let one = Polynomial::constant(1.0);
        let (y2_over, rem) = (y * y).div_rem(&(&one + x));
        if !rem.is_zero() {
            return None;
        }
        let carlson = &(&one - &(x * x)) - &y2_over;
        let terms = [
            Polynomial::constant(self.constant),
            x.scale(self.x),
            y.scale(self.y),
            carlson.scale(self.carlson),
            (x * y).scale(self.xy),
            (&(x * x) * x).scale(self.x_cubed),
        ];
        Some(terms.iter().fold(Polynomial::constant(0.0), |acc, t| &acc + t))
    }
}

pub fn objective_value(family: Family, p: &RegionPoint) -> f64 {
    ObjectiveForm::of(family).value(p.x, p.y)
}

/// Checked evaluation at raw coordinates.
pub fn objective_value_at(family: Family, x: f64, y: f64) -> Result<f64> {
    RegionPoint::new(x, y).map(|p| objective_value(family, &p))
}

pub fn objective_gradient(family: Family, p: &RegionPoint) -> (f64, f64) {
    ObjectiveForm::of(family).gradient(p.x, p.y)
}

pub fn objective_gradient_at(family: Family, x: f64, y: f64) -> Result<(f64, f64)> {
    RegionPoint::new(x, y).map(|p| objective_gradient(family, &p))
}

/// `|γ₃|` bound corresponding to an objective value.
pub fn bound_from_value(family: Family, value: f64) -> Result<f64> {
    if value.is_nan() || value < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "objective value must be non-negative, got {value}"
        )));
    }
    Ok(value / family.scale())
}

/// Closed-form interior critical point of each objective: `(1/4, 5/16)` for
/// `f₁` and `f₃`, `((4 − √7)/6, (47 − 14√7)/108)` for `f₂`.
pub fn known_interior_maximizer(family: Family) -> RegionPoint {
    match family {
        Family::F1 | Family::F3 => RegionPoint { x: 0.25, y: 0.3125 },
        Family::F2 => {
            let s7 = 7f64.sqrt();
            RegionPoint {
                x: (4.0 - s7) / 6.0,
                y: (47.0 - 14.0 * s7) / 108.0,
            }
        }
    }
}

/// Hessian by central differences of the analytic gradient.
pub fn hessian_fd(family: Family, x: f64, y: f64, step: f64) -> [[f64; 2]; 2] {
    let form = ObjectiveForm::of(family);
    let (gxp, gyp) = form.gradient(x + step, y);
    let (gxm, gym) = form.gradient(x - step, y);
    let (hxp, hyp) = form.gradient(x, y + step);
    let (hxm, hym) = form.gradient(x, y - step);
    let h = 2.0 * step;
    let hxx = (gxp - gxm) / h;
    let hyx = (gyp - gym) / h;
    let hxy = (hxp - hxm) / h;
    let hyy = (hyp - hym) / h;
    let off = 0.5 * (hyx + hxy);
    [[hxx, off], [off, hyy]]
}

pub fn is_negative_definite(h: &[[f64; 2]; 2]) -> bool {
    h[0][0] < 0.0 && h[0][0] * h[1][1] - h[0][1] * h[1][0] > 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Literal transcriptions used as independent oracles.
    fn f1(x: f64, y: f64) -> f64 {
        3.0 + 2.0 * x + 4.0 * y + 12.0 * (1.0 - x * x - y * y / (1.0 + x)) + 8.0 * x * y + 4.0 * x.powi(3)
    }
    fn f2(x: f64, y: f64) -> f64 {
        x + 3.0 * (1.0 - x * x - y * y / (1.0 + x)) + 2.0 * x * y + x.powi(3)
    }
    fn f3(x: f64, y: f64) -> f64 {
        5.0 + 2.0 * x + 4.0 * y + 12.0 * (1.0 - x * x - y * y / (1.0 + x)) + 8.0 * x * y + 4.0 * x.powi(3)
    }
    fn grad1(x: f64, y: f64) -> (f64, f64) {
        (
            2.0 - 24.0 * x + 12.0 * (y / (1.0 + x)).powi(2) + 8.0 * y + 12.0 * x * x,
            4.0 - 24.0 * y / (1.0 + x) + 8.0 * x,
        )
    }
    fn grad2(x: f64, y: f64) -> (f64, f64) {
        (
            1.0 - 6.0 * x + 3.0 * (y / (1.0 + x)).powi(2) + 2.0 * y + 3.0 * x * x,
            -6.0 * y / (1.0 + x) + 2.0 * x,
        )
    }

    fn random_interior(rng: &mut ChaCha8Rng) -> RegionPoint {
        loop {
            let x: f64 = rng.gen_range(0.001..0.999);
            let y = rng.gen_range(0.001..0.999) * (1.0 - x * x);
            if let Ok(p) = RegionPoint::new(x, y) {
                if p.is_interior() {
                    return p;
                }
            }
        }
    }

    #[test]
    fn matches_literal_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = random_interior(&mut rng);
            assert!((objective_value(Family::F1, &p) - f1(p.x, p.y)).abs() < 1e-12);
            assert!((objective_value(Family::F2, &p) - f2(p.x, p.y)).abs() < 1e-12);
            assert!((objective_value(Family::F3, &p) - f3(p.x, p.y)).abs() < 1e-12);
            let (a, b) = objective_gradient(Family::F1, &p);
            let (c, d) = grad1(p.x, p.y);
            assert!((a - c).abs() < 1e-12 && (b - d).abs() < 1e-12);
            let (a, b) = objective_gradient(Family::F2, &p);
            let (c, d) = grad2(p.x, p.y);
            assert!((a - c).abs() < 1e-12 && (b - d).abs() < 1e-12);
            // f₃ = f₁ + 2, and their gradients coincide
            assert_eq!(objective_gradient(Family::F3, &p), objective_gradient(Family::F1, &p));
        }
    }

    #[test]
    fn value_examples() {
        let p = known_interior_maximizer(Family::F1);
        assert!((objective_value(Family::F1, &p) - 15.75).abs() < 1e-13);
        assert!((objective_value(Family::F3, &p) - 17.75).abs() < 1e-13);
        let q = known_interior_maximizer(Family::F2);
        assert!((objective_value(Family::F2, &q) - 3.10518).abs() < 1e-5);
        assert_eq!(objective_value_at(Family::F1, 0.0, 0.0).unwrap(), 15.0);
    }

    #[test]
    fn gradient_examples() {
        let (a, b) = objective_gradient(Family::F1, &known_interior_maximizer(Family::F1));
        assert!(a.abs() < 1e-14 && b.abs() < 1e-14);
        let (a, b) = objective_gradient(Family::F2, &known_interior_maximizer(Family::F2));
        assert!(a.abs() < 1e-14 && b.abs() < 1e-14);
        assert_eq!(objective_gradient_at(Family::F1, 0.0, 0.0).unwrap(), (2.0, 4.0));
    }

    #[test]
    fn region_validation() {
        assert!(RegionPoint::new(0.5, 0.75).is_ok());
        let x = 0.3f64;
        assert!(RegionPoint::new(x, 1.0 - x * x).is_ok());
        assert!(RegionPoint::new(1.0, 0.0).is_ok());
        assert!(matches!(RegionPoint::new(0.5, 0.8), Err(Error::OutsideRegion { .. })));
        assert!(RegionPoint::new(-0.1, 0.0).is_err());
        assert!(RegionPoint::new(1.1, 0.0).is_err());
        assert!(RegionPoint::new(f64::NAN, 0.0).is_err());
        assert!(objective_value_at(Family::F1, 0.9, 0.5).is_err());
        assert!(!RegionPoint::new(0.0, 0.5).unwrap().is_interior());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound_from_value(Family::F1, 15.75).unwrap(), 0.328125);
        assert!((bound_from_value(Family::F2, 3.10518).unwrap() - 0.258765).abs() < 1e-6);
        assert!((bound_from_value(Family::F3, 17.75).unwrap() - 0.369791666).abs() < 1e-9);
        assert!(bound_from_value(Family::F1, -1.0).is_err());
    }

    #[test]
    fn gradient_agrees_with_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = 1e-6;
        for family in Family::ALL {
            let form = ObjectiveForm::of(family);
            for _ in 0..1000 {
                let p = random_interior(&mut rng);
                let (gx, gy) = form.gradient(p.x, p.y);
                let fx = (form.value(p.x + h, p.y) - form.value(p.x - h, p.y)) / (2.0 * h);
                let fy = (form.value(p.x, p.y + h) - form.value(p.x, p.y - h)) / (2.0 * h);
                let scale = gx.abs().max(gy.abs()).max(1.0);
                assert!((gx - fx).abs() / scale <= 1e-6, "{family} at {p:?}");
                assert!((gy - fy).abs() / scale <= 1e-6, "{family} at {p:?}");
            }
        }
    }

    #[test]
    fn edge_restrictions_by_substitution() {
        let x = Polynomial::var();
        let zero = Polynomial::constant(0.0);
        let top = &Polynomial::constant(1.0) - &(&x * &x);
        let f1 = ObjectiveForm::of(Family::F1);
        assert_eq!(f1.restrict(&x, &zero).unwrap().coeffs(), &[15.0, 2.0, -12.0, 4.0]);
        assert_eq!(f1.restrict(&zero, &x).unwrap().coeffs(), &[15.0, 4.0, -12.0]);
        assert_eq!(f1.restrict(&x, &top).unwrap().coeffs(), &[7.0, 22.0, -4.0, -16.0]);
        let f2 = ObjectiveForm::of(Family::F2);
        assert_eq!(f2.restrict(&x, &zero).unwrap().coeffs(), &[3.0, 1.0, -3.0, 1.0]);
        assert_eq!(f2.restrict(&zero, &x).unwrap().coeffs(), &[3.0, 0.0, -3.0]);
        assert_eq!(f2.restrict(&x, &top).unwrap().coeffs(), &[0.0, 6.0, 0.0, -4.0]);
        let f3 = ObjectiveForm::of(Family::F3);
        assert_eq!(f3.restrict(&x, &top).unwrap().coeffs(), &[9.0, 22.0, -4.0, -16.0]);
        // y = x does not make y²/(1 + x) polynomial
        assert!(f1.restrict(&x, &x).is_none());
    }

    #[test]
    fn hessian_at_known_maxima() {
        for family in Family::ALL {
            let p = known_interior_maximizer(family);
            let h = hessian_fd(family, p.x, p.y, 1e-5);
            assert!(is_negative_definite(&h), "{family}: {h:?}");
        }
    }
}
