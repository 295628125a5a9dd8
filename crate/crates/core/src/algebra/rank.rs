//! Exact rank over the rationals.
//!
//! The matrix is first split into the connected components of its
//! row/column incidence graph; ranks add across components. Each component
//! is eliminated over `GF(2^31 - 1)`. That rank is a lower bound for the
//! rational rank; it is exact when it is already maximal, and otherwise it is
//! confirmed over further primes until their product exceeds a Hadamard bound
//! on every minor one size larger. If any prime disagrees, the component is
//! recomputed by fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::modp::{dense_rank_mod, prime_pool, Zp};

/// Matrix coefficient usable by the rank engine.
pub trait Coefficient: Clone + std::fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
    fn residue(&self, zp: &Zp) -> u64;
    /// `log2 |self|` as an upper estimate; `-inf` for zero.
    fn log2_abs(&self) -> f64;
    fn to_bigint(&self) -> BigInt;
}

impl Coefficient for i64 {
    fn is_zero_coeff(&self) -> bool {
        *self == 0
    }
    fn residue(&self, zp: &Zp) -> u64 {
        zp.lift_i64(*self)
    }
    fn log2_abs(&self) -> f64 {
        (self.unsigned_abs() as f64).log2()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coefficient for BigInt {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn residue(&self, zp: &Zp) -> u64 {
        let p = BigInt::from(zp.modulus());
        self.mod_floor(&p).to_u64().expect("residue below modulus")
    }
    fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        match self.abs().to_f64() {
            Some(v) if v.is_finite() => v.log2(),
            _ => self.bits() as f64,
        }
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Sparse integer matrix stored by rows; each row is a list of
/// `(column, nonzero coefficient)` pairs with distinct columns.
#[derive(Clone, Debug)]
pub struct IntMatrix<T = BigInt> {
    ncols: usize,
    rows: Vec<Vec<(u32, T)>>,
}

impl<T: Coefficient> IntMatrix<T> {
    pub fn new(ncols: usize) -> Self {
        IntMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a sparse row; zero entries are dropped and columns must be distinct.
    pub fn push_row(&mut self, row: Vec<(u32, T)>) {
        let row: Vec<_> = row
            .into_iter()
            .filter(|(_, v)| !v.is_zero_coeff())
            .collect();
        debug_assert!(row.iter().all(|(c, _)| (*c as usize) < self.ncols));
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<(u32, T)>] {
        &self.rows
    }
}

impl IntMatrix<BigInt> {
    /// Builds a sparse matrix from dense rows; all rows must share one length.
    pub fn from_dense(rows: &[Vec<BigInt>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::new(ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "matrix must be rectangular");
            m.push_row(
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j as u32, v.clone()))
                    .collect(),
            );
        }
        m
    }
}

/// How a rank was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RankReport {
    pub rank: usize,
    /// Components of the incidence graph that were eliminated.
    pub components: usize,
    /// Total prime-field eliminations performed.
    pub prime_passes: usize,
    /// Components that fell back to fraction-free integer elimination.
    pub bareiss_fallbacks: usize,
}

/// Exact rational rank of a dense integer matrix.
pub fn rank_exact(rows: &[Vec<BigInt>]) -> usize {
    rank_of(&IntMatrix::from_dense(rows))
}

/// Exact rational rank of a dense `i64` matrix.
pub fn rank_exact_i64(rows: &[Vec<i64>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m = IntMatrix::<i64>::new(ncols);
    for r in rows {
        assert_eq!(r.len(), ncols, "matrix must be rectangular");
        m.push_row(r.iter().enumerate().map(|(j, v)| (j as u32, *v)).collect());
    }
    rank_of(&m)
}

/// Exact rational rank of a sparse integer matrix.
pub fn rank_of<T: Coefficient>(m: &IntMatrix<T>) -> usize {
    rank_report(m).rank
}

pub fn rank_report<T: Coefficient>(m: &IntMatrix<T>) -> RankReport {
    let mut report = RankReport::default();
    for comp in components(m) {
        report.components += 1;
        report.rank += component_rank(m, &comp, &mut report);
    }
    report
}

/// Rank over `GF(p)` of a sparse integer matrix, for comparison and testing.
pub fn rank_mod_prime<T: Coefficient>(m: &IntMatrix<T>, p: u64) -> usize {
    let zp = Zp::new(p);
    let rows = m
        .rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut dense = vec![0u64; m.ncols];
            for (c, v) in r {
                dense[*c as usize] = v.residue(&zp);
            }
            dense
        })
        .collect();
    dense_rank_mod(&zp, m.ncols, rows)
}

/// A connected block: the original row indices and column indices it spans.
struct Component {
    rows: Vec<usize>,
    cols: Vec<u32>,
}

fn components<T>(m: &IntMatrix<T>) -> Vec<Component> {
    let mut parent: Vec<u32> = (0..m.ncols as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let next = parent[parent[x as usize] as usize];
            parent[x as usize] = next;
            x = next;
        }
        x
    }
    for row in &m.rows {
        if let Some((first, _)) = row.first() {
            let root = find(&mut parent, *first);
            for (c, _) in &row[1..] {
                let other = find(&mut parent, *c);
                if other != root {
                    parent[other as usize] = root;
                }
            }
        }
    }
    // Label components in order of first appearance among rows.
    let mut label = vec![u32::MAX; m.ncols];
    let mut comps: Vec<Component> = Vec::new();
    for (i, row) in m.rows.iter().enumerate() {
        let Some((first, _)) = row.first() else {
            continue;
        };
        let root = find(&mut parent, *first) as usize;
        if label[root] == u32::MAX {
            label[root] = comps.len() as u32;
            comps.push(Component {
                rows: Vec::new(),
                cols: Vec::new(),
            });
        }
        comps[label[root] as usize].rows.push(i);
    }
    for c in 0..m.ncols as u32 {
        let root = find(&mut parent, c) as usize;
        if label[root] != u32::MAX {
            comps[label[root] as usize].cols.push(c);
        }
    }
    comps
}

fn component_rank<T: Coefficient>(
    m: &IntMatrix<T>,
    comp: &Component,
    report: &mut RankReport,
) -> usize {
    let nc = comp.cols.len();
    let nr = comp.rows.len();
    let mut local = vec![0u32; m.ncols];
    for (k, c) in comp.cols.iter().enumerate() {
        local[*c as usize] = k as u32;
    }
    let pool = prime_pool();
    let reduce = |zp: &Zp| -> Vec<Vec<u64>> {
        comp.rows
            .iter()
            .map(|&i| {
                let mut dense = vec![0u64; nc];
                for (c, v) in &m.rows[i] {
                    dense[local[*c as usize] as usize] = v.residue(zp);
                }
                dense
            })
            .collect()
    };

    let zp0 = Zp::new(pool[0]);
    let r0 = dense_rank_mod(&zp0, nc, reduce(&zp0));
    report.prime_passes += 1;
    if r0 == nc.min(nr) {
        return r0;
    }

    let bound_bits = minor_bound_log2(m, comp, &local, r0 + 1);
    let mut covered = (pool[0] as f64).log2();
    let mut k = 1;
    while covered <= bound_bits {
        if k == pool.len() {
            report.bareiss_fallbacks += 1;
            return bareiss_component(m, comp, &local);
        }
        let zp = Zp::new(pool[k]);
        let r = dense_rank_mod(&zp, nc, reduce(&zp));
        report.prime_passes += 1;
        if r != r0 {
            report.bareiss_fallbacks += 1;
            return bareiss_component(m, comp, &local);
        }
        covered += (pool[k] as f64).log2();
        k += 1;
    }
    r0
}

/// Upper bound for `log2 |D|` over all `size x size` minors `D` of the
/// component: the product of the `size` largest row norms, or of the `size`
/// largest column norms, whichever is smaller.
fn minor_bound_log2<T: Coefficient>(
    m: &IntMatrix<T>,
    comp: &Component,
    local: &[u32],
    size: usize,
) -> f64 {
    // Squared norms are accumulated as log-sum-exp in base 2 to stay finite.
    fn add_log2(acc: f64, term: f64) -> f64 {
        if acc == f64::NEG_INFINITY {
            return term;
        }
        let (hi, lo) = if acc > term { (acc, term) } else { (term, acc) };
        hi + (1.0 + (lo - hi).exp2()).log2()
    }
    let mut row_norms = Vec::with_capacity(comp.rows.len());
    let mut col_norms = vec![f64::NEG_INFINITY; comp.cols.len()];
    for &i in &comp.rows {
        let mut acc = f64::NEG_INFINITY;
        for (c, v) in &m.rows[i] {
            let sq = 2.0 * v.log2_abs();
            acc = add_log2(acc, sq);
            let lc = local[*c as usize] as usize;
            col_norms[lc] = add_log2(col_norms[lc], sq);
        }
        row_norms.push(acc / 2.0);
    }
    let top = |mut norms: Vec<f64>| -> f64 {
        norms.sort_by(|a, b| b.partial_cmp(a).unwrap());
        norms.iter().take(size).map(|&v| v.max(0.0)).sum::<f64>()
    };
    let cols: Vec<f64> = col_norms.iter().map(|v| v / 2.0).collect();
    // Small relative slack absorbs floating-point rounding in the logarithms.
    let bound = top(row_norms).min(top(cols));
    bound * (1.0 + 1e-9) + 1.0
}

fn bareiss_component<T: Coefficient>(m: &IntMatrix<T>, comp: &Component, local: &[u32]) -> usize {
    let nc = comp.cols.len();
    let mut a: Vec<Vec<BigInt>> = comp
        .rows
        .iter()
        .map(|&i| {
            let mut dense = vec![BigInt::zero(); nc];
            for (c, v) in &m.rows[i] {
                dense[local[*c as usize] as usize] = v.to_bigint();
            }
            dense
        })
        .collect();
    bareiss_rank(&mut a)
}

/// Fraction-free Gaussian elimination; returns the rational rank.
pub fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(pivot) = (rank..nr).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = prow[col].clone();
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..nc {
                let v = &pv * &row[j] - &lead * &prow[j];
                row[j] = if prev == BigInt::from(1) {
                    v
                } else {
                    v / &prev
                };
            }
        }
        prev = pv;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::modp::FAST_PRIME;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(rank_exact(&big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank_exact(&big(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_exact(&big(&[&[2, 4], &[1, 2]])), 1);
    }

    #[test]
    fn bareiss_handles_skipped_columns() {
        let mut a = big(&[&[0, 1, 2, 3], &[0, 2, 4, 7], &[0, 0, 0, 1], &[0, 5, 1, 0]]);
        assert_eq!(bareiss_rank(&mut a), 3);
    }

    #[test]
    fn determinant_equal_to_fast_prime_forces_fallback() {
        let half = (FAST_PRIME as i64 + 1) / 2;
        let m = big(&[&[2, 1, 0], &[1, half, 0], &[0, 0, 1]]);
        let sparse = IntMatrix::from_dense(&m);
        assert_eq!(rank_mod_prime(&sparse, FAST_PRIME), 2);
        let report = rank_report(&sparse);
        assert_eq!(report.rank, 3);
        assert_eq!(report.bareiss_fallbacks, 1);
    }

    #[test]
    fn components_add() {
        let m = big(&[&[1, 1, 0, 0], &[2, 2, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 0]]);
        let report = rank_report(&IntMatrix::from_dense(&m));
        assert_eq!(report.rank, 2);
        assert_eq!(report.components, 2);
    }
}
