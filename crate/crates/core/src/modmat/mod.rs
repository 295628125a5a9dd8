//! Presentation matrices of submodules `M ⊆ F = R^e` over `R = k[[x, y]]`,
//! the construction `M(I; e)` from a monomial staircase, Fitting ideals by
//! exact minors, and certified lengths by truncated linear algebra.
//!
//! A [`PresMatrix`] stores generators as columns; column `j` has one entry
//! per basis vector `t_1, ..., t_e` of `F`.

mod minors;
mod truncation;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{BiPoly, Monomial};
use crate::staircase::MonomialIdeal;

pub use minors::{fitting_ideal, minors};
pub use truncation::{
    colength_module, colength_module_with, colength_of_columns, colength_of_columns_low,
    level_length, mu_module, mu_module_with, ColengthCertificate, DEFAULT_TRUNC_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModError {
    #[error("rank e = {e} is outside 2..={r}")]
    RankOutOfRange { e: usize, r: usize },
    #[error("exponent a_{{r-e+1}} = {a} is below e - 1 = {need}")]
    NegativeExponent { a: u32, need: u32 },
    #[error("ideal is not in normalized staircase form (m-primary with a_0 <= b_r)")]
    NotNormalized,
    #[error("minor ideal of size {t} is not certifiably monomial: {term} is outside the ideal of single-term minors")]
    NonMonomialIdeal { t: usize, term: Monomial },
    #[error("all minors of size {t} vanish")]
    ZeroFittingIdeal { t: usize },
    #[error("length certificate failed up to truncation level {cap}")]
    NotFiniteColength { cap: u32 },
    #[error("minor size {t} is outside 1..={rank}")]
    MinorSize { t: usize, rank: usize },
    #[error("malformed matrix: {0}")]
    Shape(String),
}

/// `e x m` matrix of polynomial entries, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct PresMatrix {
    rank: usize,
    cols: Vec<Vec<BiPoly>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rank: usize,
    cols: Vec<Vec<BiPoly>>,
}

impl TryFrom<MatrixJson> for PresMatrix {
    type Error = ModError;
    fn try_from(raw: MatrixJson) -> Result<Self, ModError> {
        PresMatrix::new(raw.rank, raw.cols)
    }
}

impl From<PresMatrix> for MatrixJson {
    fn from(p: PresMatrix) -> Self {
        MatrixJson {
            rank: p.rank,
            cols: p.cols,
        }
    }
}

impl PresMatrix {
    /// Every column must have `rank` entries and at least one nonzero entry.
    pub fn new(rank: usize, cols: Vec<Vec<BiPoly>>) -> Result<Self, ModError> {
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rank {
                return Err(ModError::Shape(format!(
                    "column {j} has {} entries, expected {rank}",
                    c.len()
                )));
            }
            if c.iter().all(BiPoly::is_zero) {
                return Err(ModError::Shape(format!("column {j} is zero")));
            }
        }
        Ok(PresMatrix { rank, cols })
    }

    /// Rank-1 presentation whose columns are the generators of `i`.
    pub fn from_ideal(i: &MonomialIdeal) -> Self {
        let cols = i.gens().iter().map(|&g| vec![BiPoly::from(g)]).collect();
        PresMatrix { rank: 1, cols }
    }

    /// Columns `x t_j, y t_j` for `j = 1..=k`: the module `m R^k`.
    pub fn max_ideal_free(k: usize) -> Self {
        let mut cols = Vec::with_capacity(2 * k);
        for j in 0..k {
            for v in [BiPoly::x(), BiPoly::y()] {
                let mut col = vec![BiPoly::zero(); k];
                col[j] = v;
                cols.push(col);
            }
        }
        PresMatrix { rank: k, cols }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: Vec<BiPoly>) -> Result<Self, ModError> {
        let k = entries.len();
        let cols = entries
            .into_iter()
            .enumerate()
            .map(|(j, p)| {
                let mut col = vec![BiPoly::zero(); k];
                col[j] = p;
                col
            })
            .collect();
        PresMatrix::new(k, cols)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[Vec<BiPoly>] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &BiPoly {
        &self.cols[col][row]
    }

    /// Largest total degree of any entry.
    pub fn max_entry_degree(&self) -> u32 {
        self.cols
            .iter()
            .flatten()
            .filter_map(BiPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn transpose_variables(&self) -> PresMatrix {
        PresMatrix {
            rank: self.rank,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(BiPoly::transpose).collect())
                .collect(),
        }
    }
}

/// Block-diagonal sum `P1 ⊕ P2`.
pub fn direct_sum(p1: &PresMatrix, p2: &PresMatrix) -> PresMatrix {
    let rank = p1.rank + p2.rank;
    let pad = |col: &[BiPoly], before: usize, after: usize| -> Vec<BiPoly> {
        let mut v = vec![BiPoly::zero(); before];
        v.extend(col.iter().cloned());
        v.resize(before + col.len() + after, BiPoly::zero());
        v
    };
    let cols = p1
        .cols
        .iter()
        .map(|c| pad(c, 0, p2.rank))
        .chain(p2.cols.iter().map(|c| pad(c, p1.rank, 0)))
        .collect();
    PresMatrix { rank, cols }
}

/// The data of `M(I; e)`: shifted exponents `a'` of the first row and the
/// `y` exponents `c` of the last `e - 1` columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub ideal: MonomialIdeal,
    pub e: usize,
    /// `a'_i = a_i - e + 1` for `0 <= i <= r - e + 1`.
    pub aprime: Vec<u32>,
    /// `c_i = b_{r-e+1+i} - i` for `1 <= i <= e - 1`, stored from index 0.
    pub c: Vec<u32>,
}

impl ModuleSpec {
    pub fn new(ideal: &MonomialIdeal, e: usize) -> Result<Self, ModError> {
        if !ideal.is_normalized() {
            return Err(ModError::NotNormalized);
        }
        let r = ideal.r();
        if e < 2 || e > r {
            return Err(ModError::RankOutOfRange { e, r });
        }
        let s = r - e + 1;
        let need = (e - 1) as u32;
        if ideal.a(s) < need {
            return Err(ModError::NegativeExponent {
                a: ideal.a(s),
                need,
            });
        }
        let aprime = (0..=s).map(|i| ideal.a(i) - need).collect();
        let c = (1..e).map(|i| ideal.b(s + i) - i as u32).collect();
        Ok(ModuleSpec {
            ideal: ideal.clone(),
            e,
            aprime,
            c,
        })
    }

    /// Index `r - e + 1` of the last generator feeding the first row.
    fn split(&self) -> usize {
        self.aprime.len() - 1
    }

    /// Columns `f_0..f_{r-e+1}`, then `g_1..g_{e-1}`, then `h_1..h_{e-1}`.
    pub fn matrix(&self) -> PresMatrix {
        let e = self.e;
        let unit = |row: usize, p: BiPoly| -> Vec<BiPoly> {
            let mut col = vec![BiPoly::zero(); e];
            col[row] = p;
            col
        };
        let mut cols = Vec::with_capacity(self.ideal.r() + e);
        for (i, &ap) in self.aprime.iter().enumerate() {
            cols.push(unit(0, Monomial::new(ap, self.ideal.b(i)).into()));
        }
        for i in 0..e - 1 {
            let mut col = vec![BiPoly::zero(); e];
            col[i] = BiPoly::y();
            col[i + 1] = BiPoly::x();
            cols.push(col);
        }
        for (i, &ci) in self.c.iter().enumerate() {
            cols.push(unit(i + 1, Monomial::new(0, ci).into()));
        }
        PresMatrix { rank: e, cols }
    }

    /// The monomial ideal `I(M)` as predicted in closed form.
    pub fn closed_form(&self) -> MonomialIdeal {
        let s = self.split();
        let mut gens: Vec<Monomial> = self.ideal.gens()[..=s].to_vec();
        for (k, &ci) in self.c.iter().enumerate() {
            let i = k as u32 + 1;
            gens.push(Monomial::new(self.e as u32 - 1 - i, ci + i));
        }
        MonomialIdeal::new(&gens).expect("nonempty")
    }
}

/// The presentation matrix of `M(I; e)`.
pub fn build_mie(i: &MonomialIdeal, e: usize) -> Result<PresMatrix, ModError> {
    Ok(ModuleSpec::new(i, e)?.matrix())
}

/// Closed form of the maximal-minor ideal of `M(I; e)`.
pub fn closed_form_i(i: &MonomialIdeal, e: usize) -> Result<MonomialIdeal, ModError> {
    Ok(ModuleSpec::new(i, e)?.closed_form())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ideal(pairs: &[(u32, u32)]) -> MonomialIdeal {
        MonomialIdeal::primary(pairs).unwrap()
    }

    pub(crate) fn stair79() -> MonomialIdeal {
        ideal(&[(7, 0), (4, 1), (3, 2), (2, 4), (1, 5), (0, 9)])
    }

    pub(crate) fn stair59() -> MonomialIdeal {
        ideal(&[(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 9)])
    }

    fn single(p: &BiPoly) -> (u32, u32) {
        p.as_single_term().unwrap().0.into()
    }

    #[test]
    fn stair79_rank_4() {
        let p = build_mie(&stair79(), 4).unwrap();
        assert_eq!(p.ncols(), 9);
        let f: Vec<_> = (0..3).map(|j| single(p.entry(0, j))).collect();
        assert_eq!(f, vec![(4, 0), (1, 1), (0, 2)]);
        let h: Vec<_> = (6..9).map(|j| single(p.entry(j - 5, j))).collect();
        assert_eq!(h, vec![(0, 3), (0, 3), (0, 6)]);
        assert_eq!(p.entry(1, 3), &BiPoly::x());
        assert_eq!(p.entry(0, 3), &BiPoly::y());
    }

    #[test]
    fn stair59_rank_5() {
        let p = build_mie(&stair59(), 5).unwrap();
        assert_eq!(p.ncols(), 10);
        let h: Vec<_> = (6..10).map(|j| single(p.entry(j - 5, j))).collect();
        assert_eq!(h, vec![(0, 2), (0, 2), (0, 3), (0, 5)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            build_mie(&stair79(), 6),
            Err(ModError::RankOutOfRange { e: 6, r: 5 })
        );
        assert_eq!(
            build_mie(&stair79(), 1),
            Err(ModError::RankOutOfRange { e: 1, r: 5 })
        );
        assert_eq!(
            build_mie(&stair79().swap_axes(), 3),
            Err(ModError::NotNormalized)
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_i(&stair79(), 4).unwrap(), stair79());
        let r4 = ideal(&[(5, 0), (4, 1), (3, 2), (2, 3), (0, 5)]);
        let got = closed_form_i(&r4, 3).unwrap();
        assert_eq!(got, ideal(&[(5, 0), (4, 1), (3, 2), (1, 3), (0, 5)]));
        let rem39 = ideal(&[(6, 0), (5, 1), (3, 2), (1, 3), (0, 6)]);
        let got = closed_form_i(&rem39, 4).unwrap();
        assert_eq!(got, ideal(&[(6, 0), (5, 1), (2, 2), (1, 3), (0, 6)]));
        assert_eq!(got.closure_gap().first(), Some(&Monomial::new(4, 1)));
    }

    #[test]
    fn direct_sums() {
        let m = PresMatrix::from_ideal(&MonomialIdeal::max_ideal());
        let s = direct_sum(&m, &m);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.ncols(), 4);
        let empty = PresMatrix::new(0, vec![]).unwrap();
        assert_eq!(direct_sum(&m, &empty), m);
    }

    #[test]
    fn matrix_json_round_trip() {
        let p = build_mie(&stair79(), 3).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"{"rank":3,"cols":[[[[5,0,1]],[],[]]"#));
        let back: PresMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PresMatrix>(r#"{"rank":2,"cols":[[[[1,0,1]]]]}"#).is_err());
    }
}
