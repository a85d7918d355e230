//! The subclasses `F₁, F₂, F₃` of close-to-convex functions, defined by
//! `Re{h(z) f'(z)} > 0` on the disk with
//!
//! | family | `h(z)`        | `γ₃` denominator |
//! |--------|---------------|------------------|
//! | `F1`   | `1 − z`       | 48               |
//! | `F2`   | `1 − z²`      | 12               |
//! | `F3`   | `1 − z + z²`  | 48               |
//!
//! Every member satisfies `h f' = (1 + w)/(1 − w)` for a Schwarz function
//! `w`, which is how [`member_series`] builds members and how
//! [`coefficients_from_schwarz`] expresses `a₂, a₃, a₄` through `c₁, c₂, c₃`.
//!
//! `γ₁ = a₂/2` and `γ₂ = (a₃ − a₂²/2)/2` are the forms forced by the series
//! definition of the logarithmic coefficients; they are what
//! [`gamma1_from_coefficients`] and [`gamma2_from_coefficients`] return.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::config::{DEFAULT_ORDER, TOLERANCES};
use crate::error::{Error, Result};
use crate::objective;
use crate::schwarz::{BlaschkeProduct, SchwarzTriple};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    F1,
    F2,
    F3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::F1, Family::F2, Family::F3];

    /// Coefficients of `h` in ascending powers of `z`.
    pub fn generator(self) -> [f64; 3] {
        match self {
            Family::F1 => [1.0, -1.0, 0.0],
            Family::F2 => [1.0, 0.0, -1.0],
            Family::F3 => [1.0, -1.0, 1.0],
        }
    }

    pub fn generator_series(self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_real(&self.generator(), order)
    }

    pub fn eval_generator(self, z: Complex64) -> Complex64 {
        let [h0, h1, h2] = self.generator();
        (z * h2 + h1) * z + h0
    }

    /// Denominator of the closed form for `γ₃`; objective values divided by
    /// it bound `|γ₃|`.
    pub fn scale(self) -> f64 {
        match self {
            Family::F1 | Family::F3 => 48.0,
            Family::F2 => 12.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::F3 => "F3",
        }
    }

    /// Upper bound on `|γ₃|`: the interior critical value of the family's
    /// objective divided by [`Family::scale`].
    /// `15.75/48`, `≈ 3.105188/12` and `17.75/48` respectively.
    pub fn known_bound(self) -> f64 {
        let p = objective::known_interior_maximizer(self);
        objective::objective_value(self, &p) / self.scale()
    }

    /// Sharp `|γ₃|` bound under the extra restriction that `a₂` is real:
    /// `(11 + 15√30)/288`, `(95 + 23√46)/972`, `(743 + 131√262)/7776`.
    pub fn real_a2_sharp_bound(self) -> f64 {
        match self {
            Family::F1 => (11.0 + 15.0 * 30f64.sqrt()) / 288.0,
            Family::F2 => (95.0 + 23.0 * 46f64.sqrt()) / 972.0,
            Family::F3 => (743.0 + 131.0 * 262f64.sqrt()) / 7776.0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" | "1" => Ok(Family::F1),
            "f2" | "2" => Ok(Family::F2),
            "f3" | "3" => Ok(Family::F3),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Taylor coefficients `a₂, a₃, a₄` of a normalized `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientTriple {
    pub a2: Complex64,
    pub a3: Complex64,
    pub a4: Complex64,
}

impl CoefficientTriple {
    pub fn new(a2: Complex64, a3: Complex64, a4: Complex64) -> Self {
        Self { a2, a3, a4 }
    }

    pub fn from_series(f: &TruncatedSeries) -> Self {
        Self::new(f.coeff(2), f.coeff(3), f.coeff(4))
    }
}

pub fn coefficients_from_schwarz(family: Family, c: &SchwarzTriple) -> CoefficientTriple {
    let (c1, c2, c3) = (c.c1, c.c2, c.c3);
    let one = Complex64::new(1.0, 0.0);
    let c1sq = c1 * c1;
    let c1cu = c1sq * c1;
    match family {
        Family::F1 => CoefficientTriple::new(
            (one + 2.0 * c1) / 2.0,
            (one + 2.0 * c1 + 2.0 * c1sq + 2.0 * c2) / 3.0,
            (one + 2.0 * c1 + 2.0 * c2 + 2.0 * c3 + 2.0 * c1sq + 4.0 * c1 * c2 + 2.0 * c1cu) / 4.0,
        ),
        Family::F2 => CoefficientTriple::new(
            c1,
            (one + 2.0 * c2 + 2.0 * c1sq) / 3.0,
            (c1 + c3 + 2.0 * c1 * c2 + c1cu) / 2.0,
        ),
        Family::F3 => CoefficientTriple::new(
            (one + 2.0 * c1) / 2.0,
            (c1 + c2 + c1sq) * (2.0 / 3.0),
            (2.0 * c2 + 2.0 * c3 + 2.0 * c1sq + 2.0 * c1cu + 4.0 * c1 * c2 - one) / 4.0,
        ),
    }
}

pub fn gamma1_from_coefficients(t: &CoefficientTriple) -> Complex64 {
    t.a2 / 2.0
}

pub fn gamma2_from_coefficients(t: &CoefficientTriple) -> Complex64 {
    (t.a3 - t.a2 * t.a2 / 2.0) / 2.0
}

/// `γ₃ = (a₄ − a₂a₃ + a₂³/3)/2`.
pub fn gamma3_from_coefficients(t: &CoefficientTriple) -> Complex64 {
    (t.a4 - t.a2 * t.a3 + t.a2 * t.a2 * t.a2 / 3.0) / 2.0
}

/// `γ₃` as a polynomial in the Schwarz coefficients.
pub fn gamma3_closed_form(family: Family, c: &SchwarzTriple) -> Complex64 {
    let (c1, c2, c3) = (c.c1, c.c2, c.c3);
    let c1cu = c1 * c1 * c1;
    match family {
        Family::F1 => (3.0 + 2.0 * c1 + 4.0 * c2 + 12.0 * c3 + 8.0 * c1 * c2 + 4.0 * c1cu) / 48.0,
        Family::F2 => (c1 + 3.0 * c3 + 2.0 * c1 * c2 + c1cu) / 12.0,
        Family::F3 => (-5.0 - 2.0 * c1 + 4.0 * c2 + 12.0 * c3 + 8.0 * c1 * c2 + 4.0 * c1cu) / 48.0,
    }
}

/// `f = ∫ (1 + w)/((1 − w) h)` truncated to `order`.
///
/// `w` must have order at least `order − 1` for the result to reach
/// `order`; shorter inputs give a shorter result.
pub fn member_series(family: Family, w: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("member order must be >= 1".into()));
    }
    if w.coeff(0).norm() > TOLERANCES.feasibility {
        return Err(Error::InvalidArgument(format!(
            "Schwarz function must vanish at 0, got w(0) = {}",
            w.coeff(0)
        )));
    }
    let w = w.truncate(order - 1);
    let n = w.order();
    let one = TruncatedSeries::one(n);
    let ratio = &(&one + &w) * &(&one - &w).reciprocal()?;
    let f_prime = &ratio * &family.generator_series(n).reciprocal()?;
    Ok(f_prime.antiderivative())
}

/// Minimum of `Re{h(z) f'(z)}` over `samples` equally spaced points on
/// `|z| = radius`. A positive value is evidence of membership at that
/// radius, not a proof.
pub fn membership_residual(family: Family, f_prime: &TruncatedSeries, radius: f64, samples: usize) -> Result<f64> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::BadRadius(radius));
    }
    if samples < 8 {
        return Err(Error::InvalidArgument(format!(
            "need at least 8 samples, got {samples}"
        )));
    }
    Ok((0..samples)
        .map(|k| {
            let z = Complex64::from_polar(radius, TAU * k as f64 / samples as f64);
            (family.eval_generator(z) * f_prime.eval(z)).re
        })
        .fold(f64::INFINITY, f64::min))
}

/// `γ₁..γₘ` from the series logarithm of a normalized `f`.
pub fn gamma_sequence(f: &TruncatedSeries, m: usize) -> Result<Vec<Complex64>> {
    f.check_normalized()?;
    if m + 1 > f.order() {
        return Err(Error::InvalidArgument(format!(
            "need order >= {} for {m} logarithmic coefficients, got {}",
            m + 1,
            f.order()
        )));
    }
    let g = f.log_over_z()?;
    Ok((1..=m).map(|n| g.coeff(n) / 2.0).collect())
}

/// `Σ_{m=1}^{n} Σ_{k=1}^{m} (k|γₖ|² − 1/k)`.
pub fn milin_functional(f: &TruncatedSeries, n: usize) -> Result<f64> {
    let gammas = gamma_sequence(f, n)?;
    let mut inner = 0.0;
    let mut total = 0.0;
    for (i, g) in gammas.iter().enumerate() {
        let k = (i + 1) as f64;
        inner += k * g.norm_sqr() - 1.0 / k;
        total += inner;
    }
    Ok(total)
}

/// `γ₃` of the family member generated by `w`, through the series route
/// (member series, then series logarithm). Independent of the closed forms.
pub fn gamma3_via_series(family: Family, w: &BlaschkeProduct) -> Result<Complex64> {
    let order = DEFAULT_ORDER;
    let f = member_series(family, &w.taylor(order - 1)?, order)?;
    Ok(gamma_sequence(&f, 3)?[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schwarz::sample_schwarz;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: Complex64, b: f64, tol: f64) -> bool {
        (a - c(b)).norm() <= tol
    }

    /// Oracle: expand `(1 + w)/((1 − w) h)` by brute-force series division
    /// and integrate, independent of `member_series`.
    fn coefficients_by_division(family: Family, t: &SchwarzTriple) -> [Complex64; 3] {
        // power series of 1/(1 − w) as 1 + w + w² + w³ (w has no constant term)
        let w = [c(0.0), t.c1, t.c2, t.c3];
        let mul = |a: &[Complex64; 4], b: &[Complex64; 4]| {
            let mut out = [c(0.0); 4];
            for i in 0..4 {
                for j in 0..4 - i {
                    out[i + j] += a[i] * b[j];
                }
            }
            out
        };
        let w2 = mul(&w, &w);
        let w3 = mul(&w2, &w);
        let mut ratio = [c(1.0), c(0.0), c(0.0), c(0.0)];
        for k in 0..4 {
            ratio[k] += 2.0 * (w[k] + w2[k] + w3[k]);
        }
        // long division by h
        let h = family.generator();
        let mut q = [c(0.0); 4];
        for k in 0..4 {
            let mut acc = ratio[k];
            for j in 1..=k.min(2) {
                acc -= q[k - j] * h[j];
            }
            q[k] = acc;
        }
        [q[1] / 2.0, q[2] / 3.0, q[3] / 4.0]
    }

    #[test]
    fn coefficient_map_examples() {
        let t = coefficients_from_schwarz(Family::F1, &SchwarzTriple::real(1.0, 0.0, 0.0));
        assert!(close(t.a2, 1.5, 1e-15) && close(t.a3, 5.0 / 3.0, 1e-15) && close(t.a4, 1.75, 1e-15));

        let t = coefficients_from_schwarz(Family::F2, &SchwarzTriple::real(0.0, 0.0, 0.0));
        assert!(close(t.a2, 0.0, 0.0) && close(t.a3, 1.0 / 3.0, 1e-16) && close(t.a4, 0.0, 0.0));

        let t = coefficients_from_schwarz(Family::F3, &SchwarzTriple::real(0.0, 0.0, 0.0));
        assert!(close(t.a2, 0.5, 0.0) && close(t.a3, 0.0, 0.0) && close(t.a4, -0.25, 0.0));

        let t = coefficients_from_schwarz(Family::F1, &SchwarzTriple::real(0.0, 0.0, 0.0));
        assert!(close(t.a2, 0.5, 0.0) && close(t.a3, 1.0 / 3.0, 1e-16) && close(t.a4, 0.25, 0.0));
    }

    #[test]
    fn gamma3_from_coefficient_examples() {
        let g = gamma3_from_coefficients(&CoefficientTriple::new(c(1.5), c(5.0 / 3.0), c(1.75)));
        assert!(close(g, 3.0 / 16.0, 1e-15));
        let g = gamma3_from_coefficients(&CoefficientTriple::new(c(0.0), c(1.0 / 3.0), c(0.0)));
        assert_eq!(g, c(0.0));
        let g = gamma3_from_coefficients(&CoefficientTriple::new(c(0.5), c(0.0), c(-0.25)));
        assert!(close(g, -5.0 / 48.0, 1e-16));
    }

    #[test]
    fn gamma3_closed_form_examples() {
        assert!(close(
            gamma3_closed_form(Family::F1, &SchwarzTriple::real(1.0, 0.0, 0.0)),
            0.1875,
            1e-16
        ));
        assert_eq!(
            gamma3_closed_form(Family::F2, &SchwarzTriple::real(0.0, 0.0, 0.0)),
            c(0.0)
        );
        assert!(close(
            gamma3_closed_form(Family::F3, &SchwarzTriple::real(0.0, 0.0, 0.0)),
            -5.0 / 48.0,
            1e-16
        ));
    }

    #[test]
    fn member_series_examples() {
        let zero = TruncatedSeries::zero(3);
        let f = member_series(Family::F1, &zero, 4).unwrap();
        for (k, want) in [0.0, 1.0, 0.5, 1.0 / 3.0, 0.25].iter().enumerate() {
            assert!(close(f.coeff(k), *want, 1e-15), "k = {k}");
        }

        let f = member_series(Family::F1, &TruncatedSeries::identity(3), 4).unwrap();
        for (k, want) in [0.0, 1.0, 1.5, 5.0 / 3.0, 1.75].iter().enumerate() {
            assert!(close(f.coeff(k), *want, 1e-15), "k = {k}");
        }

        let f = member_series(Family::F2, &zero, 4).unwrap();
        for (k, want) in [0.0, 1.0, 0.0, 1.0 / 3.0, 0.0].iter().enumerate() {
            assert!(close(f.coeff(k), *want, 1e-15), "k = {k}");
        }
        assert_eq!(f.order(), 4);
    }

    #[test]
    fn member_series_rejects_nonzero_origin() {
        let w = TruncatedSeries::from_real(&[0.1, 0.5], 3);
        assert!(member_series(Family::F1, &w, 4).is_err());
    }

    #[test]
    fn membership_examples() {
        // w ≡ 0 for F1: f' = 1/(1 − z)
        let f_prime = TruncatedSeries::from_real(&[1.0, -1.0], 60).reciprocal().unwrap();
        let r = membership_residual(Family::F1, &f_prime, 0.9, 360).unwrap();
        assert!(r > 0.0 && (r - 1.0).abs() < 1e-2, "residual {r}");

        // 1/(1 − z)³ is not in F1: Re (1 − z)⁻² turns negative near the circle
        let cube: Vec<f64> = (0..=800).map(|k| ((k + 1) * (k + 2)) as f64 / 2.0).collect();
        let f_prime = TruncatedSeries::from_real(&cube, 800);
        let r = membership_residual(Family::F1, &f_prime, 0.95, 720).unwrap();
        // oracle: direct evaluation of Re (1 − z)⁻² on the same circle
        let direct = (0..720)
            .map(|k| {
                let z = Complex64::from_polar(0.95, TAU * k as f64 / 720.0);
                (c(1.0) - z).powi(-2).re
            })
            .fold(f64::INFINITY, f64::min);
        assert!(r < 0.0 && (r - direct).abs() < 1e-6, "residual {r} vs {direct}");

        for family in Family::ALL {
            let r = membership_residual(family, &TruncatedSeries::one(4), 0.5, 720).unwrap();
            let min_re_h = (0..720)
                .map(|k| {
                    family
                        .eval_generator(Complex64::from_polar(0.5, TAU * k as f64 / 720.0))
                        .re
                })
                .fold(f64::INFINITY, f64::min);
            assert!(r > 0.0 && (r - min_re_h).abs() < 1e-15);
        }
    }

    #[test]
    fn membership_rejects_bad_inputs() {
        let one = TruncatedSeries::one(3);
        assert_eq!(
            membership_residual(Family::F1, &one, 1.0, 32),
            Err(Error::BadRadius(1.0))
        );
        assert_eq!(
            membership_residual(Family::F1, &one, 0.0, 32),
            Err(Error::BadRadius(0.0))
        );
        assert!(membership_residual(Family::F1, &one, 0.5, 4).is_err());
    }

    #[test]
    fn gamma_sequence_examples() {
        let koebe = TruncatedSeries::from_real(&(0..=7).map(|n| n as f64).collect::<Vec<_>>(), 7);
        let g = gamma_sequence(&koebe, 6).unwrap();
        for (i, gamma) in g.iter().enumerate() {
            assert!(close(*gamma, 1.0 / (i + 1) as f64, 1e-14));
        }

        let g = gamma_sequence(&TruncatedSeries::identity(5), 4).unwrap();
        assert!(g.iter().all(|x| x.norm() == 0.0));

        let f = member_series(Family::F1, &TruncatedSeries::zero(7), 8).unwrap();
        let g3 = gamma_sequence(&f, 3).unwrap()[2];
        let closed = gamma3_closed_form(Family::F1, &SchwarzTriple::real(0.0, 0.0, 0.0));
        assert!(close(g3, 1.0 / 16.0, 1e-15) && (g3 - closed).norm() < 1e-15);
    }

    #[test]
    fn gamma_sequence_errors() {
        let f = TruncatedSeries::from_real(&[0.0, 1.0, 2.0], 2);
        assert!(matches!(gamma_sequence(&f, 2), Err(Error::InvalidArgument(_))));
        let g = TruncatedSeries::from_real(&[0.0, 3.0, 2.0], 2);
        assert!(matches!(gamma_sequence(&g, 1), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn milin_examples() {
        for n in 1..=5 {
            let koebe = TruncatedSeries::from_real(&(0..=n + 1).map(|k| k as f64).collect::<Vec<_>>(), n + 1);
            assert!(milin_functional(&koebe, n).unwrap().abs() <= 1e-12);
        }
        let v = milin_functional(&TruncatedSeries::identity(4), 3).unwrap();
        assert!((v + 13.0 / 3.0).abs() <= 1e-12);
    }

    #[test]
    fn gamma1_gamma2_match_series() {
        for seed in 0..200 {
            let b = sample_schwarz(seed, 1 + seed as usize % 5, false).unwrap();
            for family in Family::ALL {
                let f = member_series(family, &b.taylor(7).unwrap(), 8).unwrap();
                let g = gamma_sequence(&f, 2).unwrap();
                let t = CoefficientTriple::from_series(&f);
                assert!((g[0] - gamma1_from_coefficients(&t)).norm() < 1e-12);
                assert!((g[1] - gamma2_from_coefficients(&t)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn bounds_constants() {
        assert!((Family::F1.known_bound() - 0.328125).abs() < 1e-15);
        assert!((Family::F2.known_bound() - 0.258765).abs() < 1e-6);
        assert!((Family::F3.known_bound() - 17.75 / 48.0).abs() < 1e-15);
        assert!((Family::F1.real_a2_sharp_bound() - 0.323466).abs() < 1e-6);
        assert!((Family::F2.real_a2_sharp_bound() - 0.258223).abs() < 1e-6);
        assert!((Family::F3.real_a2_sharp_bound() - 0.368238).abs() < 1e-6);
    }

    #[test]
    fn parse_family() {
        assert_eq!("f1".parse::<Family>().unwrap(), Family::F1);
        assert_eq!("F3".parse::<Family>().unwrap(), Family::F3);
        assert!(matches!("f4".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    fn triple_strategy() -> impl Strategy<Value = SchwarzTriple> {
        prop::array::uniform6(-1.0f64..1.0).prop_map(|v| {
            SchwarzTriple::new(
                Complex64::new(v[0], v[1]),
                Complex64::new(v[2], v[3]),
                Complex64::new(v[4], v[5]),
            )
        })
    }

    proptest! {
        #[test]
        fn closed_form_matches_coefficient_route(t in triple_strategy()) {
            for family in Family::ALL {
                let a = gamma3_closed_form(family, &t);
                let b = gamma3_from_coefficients(&coefficients_from_schwarz(family, &t));
                prop_assert!((a - b).norm() <= 1e-12);
            }
        }

        #[test]
        fn coefficient_map_matches_division_oracle(t in triple_strategy()) {
            for family in Family::ALL {
                let map = coefficients_from_schwarz(family, &t);
                let [a2, a3, a4] = coefficients_by_division(family, &t);
                prop_assert!((map.a2 - a2).norm() <= 1e-12);
                prop_assert!((map.a3 - a3).norm() <= 1e-12);
                prop_assert!((map.a4 - a4).norm() <= 1e-12);
            }
        }

        #[test]
        fn f1_a2_stays_near_half(seed in any::<u64>(), degree in 1usize..6) {
            let t = sample_schwarz(seed, degree, false).unwrap().triple();
            let a2 = coefficients_from_schwarz(Family::F1, &t).a2;
            prop_assert!((a2 - 0.5).norm() <= 1.0 + 1e-12);
        }

        #[test]
        fn sampled_members_satisfy_milin(seed in any::<u64>(), degree in 1usize..6, family_ix in 0usize..3) {
            let family = Family::ALL[family_ix];
            let b = sample_schwarz(seed, degree, false).unwrap();
            let f = member_series(family, &b.taylor(7).unwrap(), 8).unwrap();
            prop_assert!(milin_functional(&f, 3).unwrap() <= 1e-9);
        }
    }
}
