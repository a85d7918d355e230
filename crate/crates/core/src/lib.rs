//! Numerical laboratory for the third logarithmic coefficient `γ₃` of the
//! close-to-convex subclasses defined by `Re{h(z) f'(z)} > 0` with
//! `h ∈ {1 − z, 1 − z², 1 − z + z²}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated Taylor series over `Complex64`, including the
//!   series logarithm that defines the logarithmic coefficients.
//! * [`schwarz`]: Schwarz functions as coefficient triples and as finite
//!   Blaschke products, seeded sampling, and Carlson's coefficient bounds.
//! * [`family`]: the three subclasses, their coefficient maps, closed-form
//!   `γ₃`, membership evidence and the Milin functional.
//! * [`objective`]: the real objectives on the region `E` whose maxima give
//!   the `|γ₃|` bounds.
//! * [`optimize`]: interior Newton search, exact edge maximization and the
//!   assembled [`optimize::BoundReport`].
//! * [`search`]: randomized extremal search over Blaschke witnesses.
//! * [`cli`]: the `gamma3lab` command-line front end.

pub mod cli;
pub mod config;
pub mod error;
pub mod family;
pub mod objective;
pub mod optimize;
pub mod polynomial;
pub mod schwarz;
pub mod search;
pub mod series;

pub use error::{Error, Result};
pub use family::{CoefficientTriple, Family};
pub use num_complex::Complex64;
pub use objective::RegionPoint;
pub use optimize::{BoundReport, Edge};
pub use schwarz::{BlaschkeProduct, CarlsonSlacks, SchwarzTriple};
pub use search::{GapRecord, SearchResult};
pub use series::TruncatedSeries;
