//! Multiplicities of monomial ideals and of modules `F/M`.
//!
//! For ideals the normalized area under the Newton polygon is exact. The
//! reduction route samples integer combinations of the generators: `e+1`
//! general elements of a rank-`e` module generate a minimal reduction `N`,
//! and `e(F/M) = ℓ(F/N) = ℓ(R/I_e(N))`. Every sample overestimates or hits
//! the true value, so the minimum over trials is reported, and it is
//! certified once two trials attain it.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::BiPoly;
use crate::modmat::{
    colength_module_with, colength_of_columns_low, fitting_ideal, minors, ModError, PresMatrix,
};
use crate::staircase::{newton_vertices, MonomialIdeal};

/// Range of the random integer coefficients, inclusive on both ends.
pub const COEFF_RANGE: i64 = 9;

pub const DEFAULT_TRIALS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultError {
    #[error("at least two trials are needed to certify a minimum, got {0}")]
    TooFewTrials(usize),
    #[error("no value was attained twice in {trials} trials (observed {values:?})")]
    Uncertified {
        trials: usize,
        values: Vec<Option<u64>>,
    },
    #[error("ideal is not m-primary")]
    NotPrimary,
    #[error(transparent)]
    Module(#[from] ModError),
}

/// Outcome of the randomized reduction route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionSample {
    pub seed: u64,
    /// Stream index of the first trial attaining `value`.
    pub stream: u64,
    /// Combination coefficients of that trial, one row per reduction generator.
    pub coefficients: Vec<Vec<i64>>,
    /// Minimum sampled length.
    pub value: u64,
    pub certified: bool,
    /// Length per trial; `None` marks a degenerate sample.
    pub values: Vec<Option<u64>>,
}

/// Sampling parameters shared by the reduction routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub trials: usize,
    pub seed: u64,
    pub trunc_cap: u32,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            trials: DEFAULT_TRIALS,
            seed: 0,
            trunc_cap: crate::modmat::DEFAULT_TRUNC_CAP,
        }
    }
}

impl Sampling {
    pub fn new(trials: usize, seed: u64) -> Self {
        Sampling {
            trials,
            seed,
            ..Sampling::default()
        }
    }
}

/// Twice the area between the axes and the Newton polygon of `i`, which is
/// `e(I) = e(closure(I))`.
pub fn mult_ideal_area(i: &MonomialIdeal) -> Result<u64, MultError> {
    if !i.is_primary() {
        return Err(MultError::NotPrimary);
    }
    let v = newton_vertices(i).vertices;
    let twice: i64 = v
        .windows(2)
        .map(|w| w[0].a as i64 * w[1].b as i64 - w[1].a as i64 * w[0].b as i64)
        .sum();
    Ok(twice as u64)
}

fn random_combinations(rng: &mut ChaCha8Rng, count: usize, len: usize) -> Vec<Vec<i64>> {
    (0..count)
        .map(|_| {
            (0..len)
                .map(|_| rng.gen_range(-COEFF_RANGE..=COEFF_RANGE))
                .collect()
        })
        .collect()
}

/// `Σ coeffs[j] * cols[j]`, entrywise.
fn combine(cols: &[Vec<BiPoly>], coeffs: &[i64], rank: usize) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::zero(); rank];
    for (col, &c) in cols.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let k = BigInt::from(c);
        for (acc, entry) in out.iter_mut().zip(col) {
            *acc = acc.add_ref(&entry.scale(&k));
        }
    }
    out
}

/// Runs `trials` independent samples; each returns a length or `None` when degenerate.
fn sample_min<F>(
    s: Sampling,
    count: usize,
    len: usize,
    mut length: F,
) -> Result<ReductionSample, MultError>
where
    F: FnMut(&[Vec<i64>]) -> Option<u64>,
{
    if s.trials < 2 {
        return Err(MultError::TooFewTrials(s.trials));
    }
    let mut values = Vec::with_capacity(s.trials);
    let mut coeff_sets = Vec::with_capacity(s.trials);
    for t in 0..s.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        rng.set_stream(t as u64);
        let coeffs = random_combinations(&mut rng, count, len);
        values.push(length(&coeffs));
        coeff_sets.push(coeffs);
    }
    let best = values.iter().flatten().min().copied();
    let hits = values
        .iter()
        .filter(|v| **v == best && best.is_some())
        .count();
    match best {
        Some(value) if hits >= 2 => {
            let first = values.iter().position(|v| *v == Some(value)).unwrap();
            Ok(ReductionSample {
                seed: s.seed,
                stream: first as u64,
                coefficients: coeff_sets.swap_remove(first),
                value,
                certified: true,
                values,
            })
        }
        _ => Err(MultError::Uncertified {
            trials: s.trials,
            values,
        }),
    }
}

/// `e(I)` as `ℓ(R/<g1, g2>)` for two random combinations of the generators.
pub fn mult_ideal_reduction(i: &MonomialIdeal, s: Sampling) -> Result<ReductionSample, MultError> {
    if !i.is_primary() {
        return Err(MultError::NotPrimary);
    }
    let cols = PresMatrix::from_ideal(i).cols().to_vec();
    sample_min(s, 2, cols.len(), |coeffs| {
        let gens: Vec<Vec<BiPoly>> = coeffs.iter().map(|c| combine(&cols, c, 1)).collect();
        colength_of_columns_low(1, &gens, s.trunc_cap)
            .ok()
            .map(|c| c.length)
    })
}

/// `ℓ(R / I_e(N))` for the module `N` spanned by the given columns, or `None`
/// when the sample is degenerate.
fn reduction_length(rank: usize, gens: Vec<Vec<BiPoly>>, cap: u32) -> Option<u64> {
    let n = PresMatrix::new(rank, gens).ok()?;
    let top: Vec<Vec<BiPoly>> = minors(&n, rank)
        .ok()?
        .into_iter()
        .filter(|m| !m.is_zero())
        .map(|m| vec![m])
        .collect();
    if top.is_empty() {
        return None;
    }
    colength_of_columns_low(1, &top, cap).ok().map(|c| c.length)
}

/// Buchsbaum–Rim multiplicity `e(F/M)` from `e+1` random combinations of
/// the columns of `p`.
pub fn mult_module(p: &PresMatrix, s: Sampling) -> Result<ReductionSample, MultError> {
    let e = p.rank();
    let cols = p.cols();
    sample_min(s, e + 1, cols.len(), |coeffs| {
        let gens: Vec<Vec<BiPoly>> = coeffs.iter().map(|c| combine(cols, c, e)).collect();
        reduction_length(e, gens, s.trunc_cap)
    })
}

/// Both sides of `ℓ(R/I(M)) - ℓ(F/M) = e(I(M)) - e(F/M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KmCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
    pub fitting_colength: u64,
    pub module_colength: u64,
    pub fitting_multiplicity: u64,
    pub module_multiplicity: u64,
}

/// Evaluates the multiplicity–length identity for integrally closed `F/M`.
pub fn check_km(p: &PresMatrix, s: Sampling) -> Result<KmCheck, MultError> {
    let fit = fitting_ideal(p, p.rank())?;
    if !fit.is_primary() {
        return Err(MultError::NotPrimary);
    }
    let fitting_colength = fit.colength();
    let module_colength = colength_module_with(p, s.trunc_cap)?.length;
    let fitting_multiplicity = mult_ideal_area(&fit)?;
    let module_multiplicity = mult_module(p, s)?.value;
    let lhs = fitting_colength as i64 - module_colength as i64;
    let rhs = fitting_multiplicity as i64 - module_multiplicity as i64;
    Ok(KmCheck {
        lhs,
        rhs,
        equal: lhs == rhs,
        fitting_colength,
        module_colength,
        fitting_multiplicity,
        module_multiplicity,
    })
}
