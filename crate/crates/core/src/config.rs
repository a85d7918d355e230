//! Tolerance constants and run defaults shared by every module.

/// Default truncation order for series work; enough for `γ₁..γ₄` plus guard terms.
pub const DEFAULT_ORDER: usize = 8;

/// Numerical tolerances. Everything that compares floating values against a
/// threshold reads it from here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|a₀|` at or below this is treated as zero by `reciprocal`.
    pub zero_constant: f64,
    /// Allowed `|f₁ − 1|` for a normalized series.
    pub normalization: f64,
    /// Slack on Carlson inequalities, `|c₁| ≤ 1`, and membership of `E`.
    pub feasibility: f64,
    /// Deduplication radius for interior critical points.
    pub dedup: f64,
    /// Step of the finite-difference Jacobian used by Newton.
    pub jacobian_step: f64,
    /// Bisection width for edge critical points.
    pub bisection: f64,
    /// Allowed excess of the dense grid over the analytic maximum.
    pub certification: f64,
    /// Values closer than this are ties.
    pub tie: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    zero_constant: 1e-12,
    normalization: 1e-12,
    feasibility: 1e-12,
    dedup: 1e-8,
    jacobian_step: 1e-7,
    bisection: 1e-14,
    certification: 1e-6,
    tie: 1e-12,
};

/// Step of the dense certification sweep over `E`.
pub const DENSE_GRID_STEP: f64 = 1e-3;

/// Default radius and sample count for membership evidence.
pub const MEMBERSHIP_RADIUS: f64 = 0.95;
pub const MEMBERSHIP_SAMPLES: usize = 720;

/// Significant digits used by every report formatter.
pub const SIGNIFICANT_DIGITS: usize = 12;
