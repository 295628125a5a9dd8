//! Minors by memoized Laplace expansion along rows.
//!
//! For a fixed row subset, rows are consumed in order and each partial
//! expansion is keyed by the set of columns already used, so every
//! sub-minor is computed once and shared by all column subsets containing it.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{ModError, PresMatrix};
use crate::algebra::{BiPoly, Monomial};
use crate::staircase::MonomialIdeal;

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn check_size(p: &PresMatrix, t: usize) -> Result<(), ModError> {
    if t == 0 || t > p.rank() {
        return Err(ModError::MinorSize { t, rank: p.rank() });
    }
    if p.ncols() > 64 {
        return Err(ModError::Shape(format!(
            "{} columns exceed the 64-column limit for minors",
            p.ncols()
        )));
    }
    Ok(())
}

/// Nonzero minors on the given rows, keyed by the bitmask of their columns.
fn row_subset_minors(p: &PresMatrix, rows: &[usize]) -> BTreeMap<u64, BiPoly> {
    let mut states: BTreeMap<u64, BiPoly> = BTreeMap::new();
    states.insert(0, BiPoly::one());
    let neg_one = BigInt::from(-1);
    for &row in rows {
        let mut next: BTreeMap<u64, BiPoly> = BTreeMap::new();
        for (&mask, partial) in &states {
            for j in 0..p.ncols() {
                let bit = 1u64 << j;
                let entry = p.entry(row, j);
                if mask & bit != 0 || entry.is_zero() {
                    continue;
                }
                // one inversion per already placed column to the right of j
                let inversions = (mask >> j).count_ones();
                let mut term = partial.mul_ref(entry);
                if inversions % 2 == 1 {
                    term = term.scale(&neg_one);
                }
                let slot = next.entry(mask | bit).or_default();
                *slot = slot.add_ref(&term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    states
}

fn mask_of(cols: &[usize]) -> u64 {
    cols.iter().fold(0, |m, &c| m | (1u64 << c))
}

/// Every `t x t` minor, zeros included: row subsets in lexicographic order,
/// and for each of them column subsets in lexicographic order.
pub fn minors(p: &PresMatrix, t: usize) -> Result<Vec<BiPoly>, ModError> {
    check_size(p, t)?;
    let col_sets = subsets(p.ncols(), t);
    let mut out = Vec::with_capacity(col_sets.len());
    for rows in subsets(p.rank(), t) {
        let table = row_subset_minors(p, &rows);
        for cols in &col_sets {
            out.push(table.get(&mask_of(cols)).cloned().unwrap_or_default());
        }
    }
    Ok(out)
}

/// The ideal of `t x t` minors, certified monomial.
///
/// The candidate is generated by the single-term minors; it is returned only
/// if every term of every minor lies in it.
pub fn fitting_ideal(p: &PresMatrix, t: usize) -> Result<MonomialIdeal, ModError> {
    check_size(p, t)?;
    let mut nonzero: Vec<BiPoly> = Vec::new();
    for rows in subsets(p.rank(), t) {
        nonzero.extend(row_subset_minors(p, &rows).into_values());
    }
    if nonzero.is_empty() {
        return Err(ModError::ZeroFittingIdeal { t });
    }
    let singles: Vec<Monomial> = nonzero
        .iter()
        .filter_map(|m| m.as_single_term().map(|(mon, _)| mon))
        .collect();
    let Ok(j) = MonomialIdeal::new(&singles) else {
        let term = nonzero[0].terms().next().expect("nonzero minor").0;
        return Err(ModError::NonMonomialIdeal { t, term });
    };
    for minor in &nonzero {
        if let Some((term, _)) = minor.terms().find(|(m, _)| !j.contains(*m)) {
            return Err(ModError::NonMonomialIdeal { t, term });
        }
    }
    Ok(j)
}
