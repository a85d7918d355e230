//! Randomized search for large `|γ₃|` over Blaschke-product witnesses.
//!
//! Every candidate is a genuine Schwarz function, so the best value found is
//! a lower bound for `sup |γ₃|` over the family (up to rounding). The upper
//! bound comes from [`crate::optimize::global_bound`]; the gap between the two
//! is what [`gap_report`] quantifies. The general upper bounds are not known
//! to be attained, so a positive gap is not evidence of a defect.
//!
//! Budget: 70% of the iterations draw fresh samples cycling through degrees
//! `1..=max_degree`; the remaining 30% refine the ten best samples by random
//! coordinate moves over 40 rounds, halving the step after a round without
//! improvement. Refinement restarts run in parallel, restart `i` seeded with
//! `seed + 1 + i`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{gamma3_closed_form, Family};
use crate::optimize;
use crate::schwarz::{sample_with, BlaschkeProduct, SchwarzTriple};

const GLOBAL_SHARE: f64 = 0.7;
const REFINED_CANDIDATES: usize = 10;
const REFINEMENT_ROUNDS: usize = 40;
const INITIAL_STEP: f64 = 0.25;
/// Zeros are kept at modulus at most this after a move.
const MAX_ZERO_MODULUS: f64 = 1.0 - 1e-9;
/// Grid step and Newton tolerance for the upper bound attached to results.
const UPPER_BOUND_GRID_STEP: f64 = 0.05;
const UPPER_BOUND_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub family: Family,
    pub best_value: f64,
    pub witness: BlaschkeProduct,
    pub witness_triple: SchwarzTriple,
    pub iterations: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub real_only: bool,
    pub upper_bound: f64,
    /// Sharp value for real `a₂`; present when `real_only`.
    pub remark_value: Option<f64>,
    /// Best value after the global phase, then after each refinement round.
    pub history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRecord {
    pub family: Family,
    pub upper_bound: f64,
    pub best_value: f64,
    pub gap: f64,
    pub relative_gap: f64,
    pub remark_value: Option<f64>,
    pub note: String,
}

/// `|γ₃|` of the family member generated by `w`.
pub fn witness_value(family: Family, w: &BlaschkeProduct) -> f64 {
    gamma3_closed_form(family, &w.triple()).norm()
}

pub fn search_lower_bound(
    family: Family,
    iterations: usize,
    seed: u64,
    real_only: bool,
    max_degree: usize,
) -> Result<SearchResult> {
    let upper_bound = optimize::global_bound(family, UPPER_BOUND_GRID_STEP, UPPER_BOUND_TOL)?.gamma3_bound;
    search_with_upper_bound(family, iterations, seed, real_only, max_degree, upper_bound)
}

/// As [`search_lower_bound`], with the upper bound supplied by the caller.
pub fn search_with_upper_bound(
    family: Family,
    iterations: usize,
    seed: u64,
    real_only: bool,
    max_degree: usize,
    upper_bound: f64,
) -> Result<SearchResult> {
    if iterations == 0 {
        return Err(Error::InvalidArgument("iterations must be >= 1".into()));
    }
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be >= 1".into()));
    }

    let global = ((iterations as f64 * GLOBAL_SHARE).round() as usize).clamp(1, iterations);
    let refine_budget = iterations - global;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut top: Vec<(f64, BlaschkeProduct)> = Vec::with_capacity(REFINED_CANDIDATES + 1);
    for i in 0..global {
        let degree = 1 + i % max_degree;
        let w = sample_with(&mut rng, degree, real_only);
        let v = witness_value(family, &w);
        if top.len() < REFINED_CANDIDATES || v > top.last().map_or(f64::NEG_INFINITY, |t| t.0) {
            // stable insertion keeps the earliest sample first among ties
            let at = top.partition_point(|t| t.0 >= v);
            top.insert(at, (v, w));
            top.truncate(REFINED_CANDIDATES);
        }
    }
    let mut history = vec![top[0].0];

    let restarts = top.len();
    let budgets: Vec<usize> = (0..restarts)
        .map(|i| refine_budget / restarts + usize::from(i < refine_budget % restarts))
        .collect();
    let refined: Vec<Refined> = top
        .into_par_iter()
        .zip(budgets)
        .enumerate()
        .map(|(i, ((v, w), budget))| {
            let restart_seed = seed.wrapping_add(1 + i as u64);
            refine(family, w, v, budget, restart_seed, real_only)
        })
        .collect();

    if refine_budget > 0 {
        for round in 0..REFINEMENT_ROUNDS {
            let round_best = refined
                .iter()
                .map(|r| r.history[round])
                .fold(f64::NEG_INFINITY, f64::max);
            history.push(round_best.max(history[history.len() - 1]));
        }
    }
    // ties across restarts go to the lowest restart index
    let winner_index = refined
        .iter()
        .enumerate()
        .fold(0, |best, (i, r)| if r.value > refined[best].value { i } else { best });
    let witness = refined[winner_index].witness.clone();
    let best_value = witness_value(family, &witness);

    Ok(SearchResult {
        family,
        best_value,
        witness_triple: witness.triple(),
        witness,
        iterations: global + refined.iter().map(|r| r.evaluations).sum::<usize>(),
        seed,
        max_degree,
        real_only,
        upper_bound,
        remark_value: real_only.then(|| family.real_a2_sharp_bound()),
        history,
    })
}

struct Refined {
    value: f64,
    witness: BlaschkeProduct,
    evaluations: usize,
    /// Best value at the end of each round.
    history: Vec<f64>,
}

/// Random coordinate moves on the zeros (real and imaginary parts) and the
/// rotation angle. With `real_only` only the real parts of the zeros move.
fn refine(
    family: Family,
    start: BlaschkeProduct,
    start_value: f64,
    budget: usize,
    seed: u64,
    real_only: bool,
) -> Refined {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zeros = start.zeros().to_vec();
    let mut angle = start.rotation().arg();
    let mut value = start_value;
    let mut witness = start;
    let mut step = INITIAL_STEP;
    let mut evaluations = 0;
    let mut history = Vec::with_capacity(REFINEMENT_ROUNDS);

    let coordinates = if real_only { zeros.len() } else { 2 * zeros.len() + 1 };
    for round in 0..REFINEMENT_ROUNDS {
        let moves = budget / REFINEMENT_ROUNDS + usize::from(round < budget % REFINEMENT_ROUNDS);
        let mut improved = false;
        for _ in 0..moves {
            evaluations += 1;
            if coordinates == 0 {
                continue;
            }
            let delta = step * rng.gen_range(-1.0..=1.0);
            let k = rng.gen_range(0..coordinates);
            let mut trial_zeros = zeros.clone();
            let mut trial_angle = angle;
            if real_only {
                trial_zeros[k].re += delta;
            } else if k == 2 * zeros.len() {
                trial_angle = (trial_angle + delta * TAU).rem_euclid(TAU);
            } else if k % 2 == 0 {
                trial_zeros[k / 2].re += delta;
            } else {
                trial_zeros[k / 2].im += delta;
            }
            for a in trial_zeros.iter_mut() {
                let r = a.norm();
                if r > MAX_ZERO_MODULUS {
                    *a *= MAX_ZERO_MODULUS / r;
                }
            }
            let rotation = if real_only {
                witness.rotation()
            } else {
                Complex64::from_polar(1.0, trial_angle)
            };
            let Ok(trial) = BlaschkeProduct::new(trial_zeros.clone(), rotation) else {
                continue;
            };
            let v = witness_value(family, &trial);
            if v > value {
                value = v;
                witness = trial;
                zeros = trial_zeros;
                angle = trial_angle;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
        history.push(value);
    }
    Refined {
        value,
        witness,
        evaluations,
        history,
    }
}

pub fn gap_report(family: Family, result: &SearchResult) -> Result<GapRecord> {
    if result.family != family {
        return Err(Error::FamilyMismatch {
            expected: family.to_string(),
            found: result.family.to_string(),
        });
    }
    let gap = result.upper_bound - result.best_value;
    Ok(GapRecord {
        family,
        upper_bound: result.upper_bound,
        best_value: result.best_value,
        gap,
        relative_gap: if result.upper_bound > 0.0 {
            gap / result.upper_bound
        } else {
            0.0
        },
        remark_value: result.remark_value,
        note: "the upper bound is not claimed sharp for complex a2; the gap is an open interval, not an error".into(),
    })
}
