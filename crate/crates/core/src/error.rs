use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has a vanishing constant term (|a0| = {modulus:e})")]
    ZeroConstantTerm { modulus: f64 },

    #[error("series is not normalized: need f0 = 0 and f1 = 1, got f0 = {f0}, f1 = {f1}")]
    NotNormalized { f0: String, f1: String },

    #[error("Blaschke zero {index} has modulus {modulus} >= 1")]
    ZeroOutsideDisk { index: usize, modulus: f64 },

    #[error("sampling radius {0} is not in (0, 1)")]
    BadRadius(f64),

    #[error("point ({x}, {y}) lies outside the region 0 <= x <= 1, 0 <= y <= 1 - x^2")]
    OutsideRegion { x: f64, y: f64 },

    #[error("unknown edge `{0}` (expected bottom, left or top)")]
    UnknownEdge(String),

    #[error("unknown family `{0}` (expected f1, f2 or f3)")]
    UnknownFamily(String),

    #[error("dense grid maximum {grid_max} exceeds analytic maximum {analytic_max} by more than {tolerance:e}")]
    CertificationMismatch {
        grid_max: f64,
        analytic_max: f64,
        tolerance: f64,
    },

    #[error("search result belongs to {found}, expected {expected}")]
    FamilyMismatch { expected: String, found: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
