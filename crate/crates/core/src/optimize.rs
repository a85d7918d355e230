//! Maximization of the objectives over `E`.
//!
//! The maximum over a compact region is attained either at an interior
//! critical point or on the boundary, so [`global_bound`] combines
//!
//! * Newton iteration on `∇f = 0` from a grid of interior seeds,
//! * exact maximization of the univariate restriction to each edge,
//! * an independent dense-grid sweep that must never beat the analytic
//!   maximum by more than the certification tolerance.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{DENSE_GRID_STEP, TOLERANCES};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::objective::{self, ObjectiveForm, RegionPoint};
use crate::polynomial::Polynomial;

const NEWTON_MAX_ITERATIONS: usize = 100;
const HESSIAN_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    /// `y = 0`, parametrised by `x ∈ [0, 1]`
    Bottom,
    /// `x = 0`, parametrised by `y ∈ [0, 1]`
    Left,
    /// `y = 1 − x²`, parametrised by `x ∈ [0, 1]`
    Top,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::Bottom, Edge::Left, Edge::Top];

    /// Name of the edge parameter.
    pub fn variable(self) -> &'static str {
        match self {
            Edge::Left => "y",
            Edge::Bottom | Edge::Top => "x",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::Bottom => "bottom",
            Edge::Left => "left",
            Edge::Top => "top",
        }
    }

    /// `(x(t), y(t))` for `t ∈ [0, 1]`.
    pub fn parametrisation(self) -> (Polynomial, Polynomial) {
        let t = Polynomial::var();
        let zero = Polynomial::constant(0.0);
        match self {
            Edge::Bottom => (t, zero),
            Edge::Left => (zero, t),
            Edge::Top => {
                let y = &Polynomial::constant(1.0) - &(&t * &t);
                (t, y)
            }
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bottom" | "y=0" => Ok(Edge::Bottom),
            "left" | "x=0" => Ok(Edge::Left),
            "top" | "y=1-x^2" => Ok(Edge::Top),
            _ => Err(Error::UnknownEdge(s.to_string())),
        }
    }
}

/// Literature values for the edge restrictions and their maxima, kept for
/// comparison in reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublishedEdge {
    pub restriction: Polynomial,
    pub value: f64,
}

pub fn published_edge(family: Family, edge: Edge) -> PublishedEdge {
    let s30 = 30f64.sqrt();
    let (coeffs, value): (&[f64], f64) = match (family, edge) {
        (Family::F1, Edge::Bottom) => (&[15.0, 2.0, -12.0, 4.0], 9.0 + 10.0 * s30 / 9.0),
        (Family::F1, Edge::Left) => (&[15.0, 4.0, -12.0], 46.0 / 3.0),
        (Family::F1, Edge::Top) => (&[7.0, 22.0, -4.0, -16.0], 15.304035),
        (Family::F2, Edge::Bottom) => (&[3.0, 1.0, -3.0, 1.0], 2.0 + 4.0 / 9.0 * 6f64.sqrt()),
        (Family::F2, Edge::Left) => (&[3.0, 0.0, -3.0], 3.0),
        (Family::F2, Edge::Top) => (&[0.0, 6.0, 0.0, -4.0], 2.0 * 2f64.sqrt()),
        (Family::F3, Edge::Bottom) => (&[17.0, 2.0, -12.0, 4.0], 11.0 + 10.0 * s30 / 9.0),
        (Family::F3, Edge::Left) => (&[17.0, 4.0, -12.0], 52.0 / 3.0),
        // Differs from substitution into f₃, which gives 9 + 22x − 4x² − 16x³.
        (Family::F3, Edge::Top) => (&[9.0, 22.0, -4.0, -20.0], 16.56455),
    };
    PublishedEdge {
        restriction: Polynomial::new(coeffs.to_vec()),
        value,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteriorPoint {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub gradient_norm: f64,
    pub hessian: [[f64; 2]; 2],
    pub negative_definite: bool,
    /// Number of grid seeds that converged to this point.
    pub seeds: usize,
}

impl InteriorPoint {
    pub fn point(&self) -> RegionPoint {
        RegionPoint { x: self.x, y: self.y }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeMaximum {
    pub edge: Edge,
    /// Edge parameter of the maximizer (`x` on bottom/top, `y` on left).
    pub parameter: f64,
    pub x: f64,
    pub y: f64,
    pub value: f64,
    /// Restriction of the objective to the edge, by substitution.
    pub restriction: Polynomial,
    pub critical_points: Vec<f64>,
    pub published_value: f64,
    pub published_restriction: Polynomial,
    pub matches_published: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub family: Family,
    pub interior_points: Vec<InteriorPoint>,
    pub edge_maxima: Vec<EdgeMaximum>,
    pub global_max: f64,
    pub global_argmax: RegionPoint,
    pub gamma3_bound: f64,
    pub grid_max: f64,
    pub grid_argmax: RegionPoint,
    pub grid_step: f64,
    pub notes: Vec<String>,
}

/// Newton's method on `∇f = 0` from every grid seed strictly inside `E`.
/// Converged limits inside the open region are deduplicated and returned in
/// ascending `(x, y)` order.
pub fn interior_critical_points(family: Family, grid_step: f64, tol: f64) -> Result<Vec<InteriorPoint>> {
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(Error::InvalidArgument(format!(
            "grid step must be in (0, 0.1], got {grid_step}"
        )));
    }
    if tol.is_nan() || tol < 1e-15 {
        return Err(Error::InvalidArgument(format!(
            "Newton tolerance must be >= 1e-15, got {tol}"
        )));
    }
    let form = ObjectiveForm::of(family);
    let seeds = interior_seeds(grid_step);
    let limits: Vec<(f64, f64)> = seeds
        .par_iter()
        .filter_map(|&(x, y)| newton(&form, x, y, tol))
        .collect();

    let mut points: Vec<InteriorPoint> = Vec::new();
    for (x, y) in limits {
        let candidate = RegionPoint { x, y };
        if let Some(existing) = points
            .iter_mut()
            .find(|p| p.point().distance(&candidate) < TOLERANCES.dedup)
        {
            existing.seeds += 1;
            continue;
        }
        let (gx, gy) = form.gradient(x, y);
        let hessian = objective::hessian_fd(family, x, y, HESSIAN_STEP);
        points.push(InteriorPoint {
            x,
            y,
            value: form.value(x, y),
            gradient_norm: gx.hypot(gy),
            hessian,
            negative_definite: objective::is_negative_definite(&hessian),
            seeds: 1,
        });
    }
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    Ok(points)
}

fn interior_seeds(step: f64) -> Vec<(f64, f64)> {
    let n = (1.0 / step).ceil() as usize;
    let mut seeds = Vec::new();
    for i in 1..n {
        let x = i as f64 * step;
        if x >= 1.0 {
            break;
        }
        let top = 1.0 - x * x;
        for j in 1.. {
            let y = j as f64 * step;
            if y >= top {
                break;
            }
            seeds.push((x, y));
        }
    }
    seeds
}

/// Newton with a central-difference Jacobian of the analytic gradient.
/// Returns the limit if it converges strictly inside `E`.
fn newton(form: &ObjectiveForm, mut x: f64, mut y: f64, tol: f64) -> Option<(f64, f64)> {
    let h = TOLERANCES.jacobian_step;
    for _ in 0..NEWTON_MAX_ITERATIONS {
        let (gx, gy) = form.gradient(x, y);
        if gx.hypot(gy) <= tol {
            let p = RegionPoint { x, y };
            return p.is_interior().then_some((x, y));
        }
        let (ax, ay) = form.gradient(x + h, y);
        let (bx, by) = form.gradient(x - h, y);
        let (cx, cy) = form.gradient(x, y + h);
        let (dx, dy) = form.gradient(x, y - h);
        let j11 = (ax - bx) / (2.0 * h);
        let j21 = (ay - by) / (2.0 * h);
        let j12 = (cx - dx) / (2.0 * h);
        let j22 = (cy - dy) / (2.0 * h);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        x -= (j22 * gx - j12 * gy) / det;
        y -= (j11 * gy - j21 * gx) / det;
        // the objective has a pole at x = −1; anything far outside E is lost
        if !(x.is_finite() && y.is_finite()) || x <= -0.5 || x.abs() > 10.0 || y.abs() > 10.0 {
            return None;
        }
    }
    None
}

/// Exact maximum of the objective on one edge of `E`.
pub fn edge_maximum(family: Family, edge: Edge) -> EdgeMaximum {
    let form = ObjectiveForm::of(family);
    let (xt, yt) = edge.parametrisation();
    let restriction = form
        .restrict(&xt, &yt)
        .expect("every edge of E gives a polynomial restriction");
    let critical_points = restriction.derivative().real_roots_in(0.0, 1.0);

    let mut best: Option<(f64, f64)> = None;
    for t in [0.0, 1.0].into_iter().chain(critical_points.iter().copied()) {
        let v = restriction.eval(t);
        best = match best {
            Some((bt, bv)) if bv > v + TOLERANCES.tie => Some((bt, bv)),
            Some((bt, bv)) if (bv - v).abs() <= TOLERANCES.tie && bt <= t => Some((bt, bv)),
            _ => Some((t, v)),
        };
    }
    let (parameter, value) = best.expect("endpoints are always candidates");
    let published = published_edge(family, edge);
    EdgeMaximum {
        edge,
        parameter,
        x: xt.eval(parameter),
        y: yt.eval(parameter),
        value,
        matches_published: published.restriction == restriction,
        restriction,
        critical_points,
        published_value: published.value,
        published_restriction: published.restriction,
    }
}

pub fn edge_maximum_named(family: Family, edge: &str) -> Result<EdgeMaximum> {
    Ok(edge_maximum(family, edge.parse()?))
}

/// Maximum of the objective over a grid of spacing `step` covering `E`,
/// including each column's top boundary point. Columns are evaluated in
/// parallel and reduced deterministically (ties go to smaller `x`, then `y`).
pub fn dense_grid_max(family: Family, step: f64) -> (RegionPoint, f64) {
    let form = ObjectiveForm::of(family);
    let columns = (1.0 / step).round() as usize;
    (0..=columns)
        .into_par_iter()
        .map(|i| {
            let x = (i as f64 * step).min(1.0);
            let top = (1.0 - x * x).max(0.0);
            let rows = (top / step).floor() as usize;
            let mut best = (RegionPoint { x, y: 0.0 }, form.value(x, 0.0));
            for y in (1..=rows).map(|j| j as f64 * step).chain(std::iter::once(top)) {
                let v = form.value(x, y);
                if v > best.1 + TOLERANCES.tie {
                    best = (RegionPoint { x, y }, v);
                }
            }
            best
        })
        .reduce_with(better)
        .expect("grid has at least one column")
}

fn better(a: (RegionPoint, f64), b: (RegionPoint, f64)) -> (RegionPoint, f64) {
    if (a.1 - b.1).abs() <= TOLERANCES.tie {
        let a_first = a.0.x < b.0.x || (a.0.x == b.0.x && a.0.y <= b.0.y);
        if a_first {
            a
        } else {
            b
        }
    } else if a.1 > b.1 {
        a
    } else {
        b
    }
}

/// Interior and edge analysis combined into the final `|γ₃|` bound,
/// certified against a dense grid of step `1e−3`.
pub fn global_bound(family: Family, grid_step: f64, tol: f64) -> Result<BoundReport> {
    let interior_points = interior_critical_points(family, grid_step, tol)?;
    let edge_maxima: Vec<EdgeMaximum> = Edge::ALL.iter().map(|&e| edge_maximum(family, e)).collect();

    let candidates = interior_points
        .iter()
        .map(|p| (p.point(), p.value))
        .chain(edge_maxima.iter().map(|e| (RegionPoint { x: e.x, y: e.y }, e.value)));
    let (global_argmax, global_max) = candidates.reduce(better).expect("edges always contribute candidates");

    let (grid_argmax, grid_max) = dense_grid_max(family, DENSE_GRID_STEP);
    if grid_max > global_max + TOLERANCES.certification {
        return Err(Error::CertificationMismatch {
            grid_max,
            analytic_max: global_max,
            tolerance: TOLERANCES.certification,
        });
    }

    let mut notes = Vec::new();
    if interior_points.len() != 1 {
        notes.push(format!(
            "expected exactly one interior critical point, found {}",
            interior_points.len()
        ));
    }
    for e in edge_maxima.iter().filter(|e| !e.matches_published) {
        notes.push(format!(
            "{} edge: substitution gives {} (max {:.6}), published restriction is {} (max {:.6}); \
             both lie below the global maximum {:.6}",
            e.edge,
            e.restriction.render(e.edge.variable()),
            e.value,
            e.published_restriction.render(e.edge.variable()),
            e.published_value,
            global_max
        ));
    }

    Ok(BoundReport {
        family,
        gamma3_bound: objective::bound_from_value(family, global_max)?,
        interior_points,
        edge_maxima,
        global_max,
        global_argmax,
        grid_max,
        grid_argmax,
        grid_step,
        notes,
    })
}
