//! Lengths of `F/M` by linear algebra in `F / m^N F`.
//!
//! `L_N = dim F/m^N F - rank span{ col * mon : deg mon < N }` is the length
//! of `F / (M + m^N F)`; it is nondecreasing in `N`. If `L_N = L_{N+1}` then
//! `m^N F ⊆ M + m^{N+1} F`, hence `m^N F ⊆ M` by Nakayama and
//! `ℓ(F/M) = L_N` exactly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{ModError, PresMatrix};
use crate::algebra::rank::Coefficient;
use crate::algebra::{rank_of, BiPoly, IntMatrix, Monomial};

/// Largest truncation level tried before giving up on finiteness.
pub const DEFAULT_TRUNC_CAP: u32 = 64;

/// A length together with the level at which the Nakayama test passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColengthCertificate {
    pub length: u64,
    /// `N` with `L_N = L_{N+1}`; `m^N F ⊆ M`.
    pub level: u32,
    /// Every tested pair `(N, L_N, L_{N+1})`, in order.
    pub attempts: Vec<(u32, u64, u64)>,
}

fn column_order(col: &[BiPoly]) -> u32 {
    col.iter().filter_map(BiPoly::order).min().unwrap_or(0)
}

/// The common degree of all terms of a column, if there is one.
fn column_degree(col: &[BiPoly]) -> Option<u32> {
    let lo = column_order(col);
    let hi = col.iter().filter_map(BiPoly::degree).max()?;
    (lo == hi).then_some(lo)
}

fn span_matrix<T: Coefficient>(
    rank: usize,
    cols: &[Vec<BiPoly>],
    n: u32,
    min_mon_degree: u32,
    conv: impl Fn(&BigInt) -> T,
) -> IntMatrix<T> {
    let block = Monomial::count_below_degree(n);
    let mut mat = IntMatrix::new(rank * block);
    for col in cols {
        let o = column_order(col);
        for mon in Monomial::below_degree(n.saturating_sub(o)) {
            if mon.degree() < min_mon_degree {
                continue;
            }
            let mut row = Vec::new();
            for (t, entry) in col.iter().enumerate() {
                for (m, c) in entry.terms() {
                    let prod = m.mul(mon);
                    if prod.degree() < n {
                        row.push(((t * block + prod.dense_index()) as u32, conv(c)));
                    }
                }
            }
            if !row.is_empty() {
                mat.push_row(row);
            }
        }
    }
    mat
}

/// Rank of the truncated span, with machine-word coefficients when they fit.
fn span_rank(rank: usize, cols: &[Vec<BiPoly>], n: u32, min_mon_degree: u32) -> usize {
    let small = cols
        .iter()
        .flatten()
        .all(|p| p.terms().all(|(_, c)| c.to_i64().is_some()));
    if small {
        rank_of(&span_matrix(rank, cols, n, min_mon_degree, |c| {
            c.to_i64().unwrap()
        }))
    } else {
        rank_of(&span_matrix(rank, cols, n, min_mon_degree, BigInt::clone))
    }
}

/// `L_N`: the length of `F / (M + m^N F)`.
pub fn level_length(rank: usize, cols: &[Vec<BiPoly>], n: u32) -> u64 {
    let total = rank * Monomial::count_below_degree(n);
    (total - span_rank(rank, cols, n, 0)) as u64
}

/// Certified `ℓ(R^rank / <cols>)`, trying levels `N0, N0 + 2, ...` up to `cap`
/// where `N0` is two more than the largest entry degree.
pub fn colength_of_columns(
    rank: usize,
    cols: &[Vec<BiPoly>],
    cap: u32,
) -> Result<ColengthCertificate, ModError> {
    let max_degree = cols
        .iter()
        .flatten()
        .filter_map(BiPoly::degree)
        .max()
        .unwrap_or(0);
    colength_scan(rank, cols, max_degree + 2, 2, cap)
}

/// Certified length scanning every level from one past the lowest column
/// order. Suited to generators with high-degree tails, whose length is
/// reached far below their top degree.
pub fn colength_of_columns_low(
    rank: usize,
    cols: &[Vec<BiPoly>],
    cap: u32,
) -> Result<ColengthCertificate, ModError> {
    let lowest = cols.iter().map(|c| column_order(c)).min().unwrap_or(0);
    colength_scan(rank, cols, lowest + 1, 1, cap)
}

fn colength_scan(
    rank: usize,
    cols: &[Vec<BiPoly>],
    start: u32,
    step: u32,
    cap: u32,
) -> Result<ColengthCertificate, ModError> {
    let mut n = start;
    let mut attempts = Vec::new();
    let mut cached: Option<(u32, u64)> = None;
    while n < cap {
        let lo = match cached {
            Some((m, l)) if m == n => l,
            _ => level_length(rank, cols, n),
        };
        let hi = level_length(rank, cols, n + 1);
        cached = Some((n + 1, hi));
        attempts.push((n, lo, hi));
        if lo == hi {
            return Ok(ColengthCertificate {
                length: lo,
                level: n,
                attempts,
            });
        }
        n += step;
    }
    Err(ModError::NotFiniteColength { cap })
}

/// `ℓ(F/M)` with the default truncation cap.
pub fn colength_module(p: &PresMatrix) -> Result<u64, ModError> {
    Ok(colength_module_with(p, DEFAULT_TRUNC_CAP)?.length)
}

pub fn colength_module_with(p: &PresMatrix, cap: u32) -> Result<ColengthCertificate, ModError> {
    colength_of_columns(p.rank(), p.cols(), cap)
}

/// `μ(M) = dim M / mM` with the default truncation cap.
pub fn mu_module(p: &PresMatrix) -> Result<usize, ModError> {
    mu_module_with(p, DEFAULT_TRUNC_CAP)
}

/// `μ(M)` as `rank A - rank B` where `A` spans `col * mon` and `B` spans
/// `col * mon` with `deg mon >= 1`, both modulo `m^N F`.
///
/// For homogeneous columns `N` is one more than the top column degree and no
/// finiteness is needed; otherwise `N` is one past a certified level, so that
/// `m^N F ⊆ mM`.
pub fn mu_module_with(p: &PresMatrix, cap: u32) -> Result<usize, ModError> {
    let degrees: Option<Vec<u32>> = p.cols().iter().map(|c| column_degree(c)).collect();
    let n = match degrees {
        Some(d) => d.into_iter().max().unwrap_or(0) + 1,
        None => colength_module_with(p, cap)?.level + 1,
    };
    let a = span_rank(p.rank(), p.cols(), n, 0);
    let b = span_rank(p.rank(), p.cols(), n, 1);
    Ok(a - b)
}
