//! Monomial ideals of `k[[x, y]]` given by their staircase of minimal
//! generators: numeric invariants, Newton polygon, integral closure and the
//! factorization of complete ideals into simple ones.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StaircaseError {
    #[error("an ideal needs at least one generator")]
    EmptyGenerators,
    #[error("ideal is not m-primary: its staircase must meet both axes")]
    NotPrimary,
    #[error("ideal is not complete (integrally closed)")]
    NotComplete,
    #[error("the zeroth power is the unit ideal, which is not m-primary")]
    ZeroPower,
}

/// A monomial ideal, stored as its minimal generators sorted with the `x`
/// exponent strictly decreasing and the `y` exponent strictly increasing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealJson", into = "IdealJson")]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

/// Wire form `{"gens": [[a, b], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealJson {
    gens: Vec<(u32, u32)>,
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = StaircaseError;
    fn try_from(raw: IdealJson) -> Result<Self, Self::Error> {
        let gens: Vec<Monomial> = raw.gens.into_iter().map(Monomial::from).collect();
        canonicalize(&gens, false)
    }
}

impl From<MonomialIdeal> for IdealJson {
    fn from(i: MonomialIdeal) -> Self {
        IdealJson {
            gens: i.gens.into_iter().map(Into::into).collect(),
        }
    }
}

/// Minimal sorted generators of the ideal generated by `raw`.
///
/// With `require_primary`, also rejects ideals whose staircase misses an axis.
pub fn canonicalize(
    raw: &[Monomial],
    require_primary: bool,
) -> Result<MonomialIdeal, StaircaseError> {
    if raw.is_empty() {
        return Err(StaircaseError::EmptyGenerators);
    }
    let mut pts = raw.to_vec();
    pts.sort_by_key(|m| (m.b, m.a));
    let mut gens: Vec<Monomial> = Vec::with_capacity(pts.len());
    for m in pts {
        if gens.last().is_none_or(|last| m.a < last.a) {
            gens.push(m);
        }
    }
    let ideal = MonomialIdeal { gens };
    if require_primary && !ideal.is_primary() {
        return Err(StaircaseError::NotPrimary);
    }
    Ok(ideal)
}

impl MonomialIdeal {
    /// Canonicalizes `raw` without requiring m-primary.
    pub fn new(raw: &[Monomial]) -> Result<Self, StaircaseError> {
        canonicalize(raw, false)
    }

    /// Canonical m-primary ideal from exponent pairs.
    pub fn primary(pairs: &[(u32, u32)]) -> Result<Self, StaircaseError> {
        let gens: Vec<Monomial> = pairs.iter().map(|&p| p.into()).collect();
        canonicalize(&gens, true)
    }

    /// `m^n` for the maximal ideal `m = <x, y>`; `None` when `n == 0`.
    pub fn max_ideal_power(n: u32) -> Option<Self> {
        (n > 0).then(|| MonomialIdeal {
            gens: (0..=n).map(|b| Monomial::new(n - b, b)).collect(),
        })
    }

    pub fn max_ideal() -> Self {
        MonomialIdeal::max_ideal_power(1).unwrap()
    }

    /// `<x^p, y^q>` (not closed).
    pub fn axes(p: u32, q: u32) -> Self {
        MonomialIdeal {
            gens: vec![Monomial::new(p, 0), Monomial::new(0, q)],
        }
    }

    /// The complete ideal `closure(<x^p, y^q>)`.
    pub fn closed_axes(p: u32, q: u32) -> Self {
        integral_closure(&MonomialIdeal::axes(p, q))
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Index of the last generator (`r` in the staircase `a_0 > ... > a_r`).
    pub fn r(&self) -> usize {
        self.gens.len() - 1
    }

    pub fn a(&self, i: usize) -> u32 {
        self.gens[i].a
    }

    pub fn b(&self, i: usize) -> u32 {
        self.gens[i].b
    }

    /// The staircase meets both axes.
    pub fn is_primary(&self) -> bool {
        self.gens.first().is_some_and(|g| g.b == 0) && self.gens.last().is_some_and(|g| g.a == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.gens == [Monomial::ONE]
    }

    /// m-primary with `a_0 <= b_r`, the orientation the module construction expects.
    pub fn is_normalized(&self) -> bool {
        self.is_primary() && self.gens[0].a <= self.gens[self.r()].b
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `J ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(*g))
    }

    pub fn order(&self) -> u32 {
        self.gens.iter().map(|g| g.degree()).min().unwrap_or(0)
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    /// Number of monomials outside the ideal.
    ///
    /// # Panics
    /// If the ideal is not m-primary (the count would be infinite).
    pub fn colength(&self) -> u64 {
        assert!(
            self.is_primary(),
            "colength of a non m-primary ideal is infinite"
        );
        self.gens
            .windows(2)
            .map(|w| w[0].a as u64 * (w[1].b - w[0].b) as u64)
            .sum()
    }

    pub fn swap_axes(&self) -> MonomialIdeal {
        swap_axes(self)
    }

    /// Monomials in the integral closure that are missing from the ideal,
    /// in ascending degree-lex order.
    pub fn closure_gap(&self) -> Vec<Monomial> {
        let closed = integral_closure(self);
        let amax = self.gens[0].a;
        let bmax = self.gens[self.r()].b;
        let mut out: Vec<Monomial> = (0..bmax)
            .flat_map(|b| (0..amax).map(move |a| Monomial::new(a, b)))
            .filter(|&m| closed.contains(m) && !self.contains(m))
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn contains(i: &MonomialIdeal, m: Monomial) -> bool {
    i.contains(m)
}

pub fn order(i: &MonomialIdeal) -> u32 {
    i.order()
}

pub fn mu(i: &MonomialIdeal) -> usize {
    i.mu()
}

pub fn colength(i: &MonomialIdeal) -> u64 {
    i.colength()
}

pub fn product(i: &MonomialIdeal, j: &MonomialIdeal) -> MonomialIdeal {
    let gens: Vec<Monomial> = i
        .gens
        .iter()
        .flat_map(|g| j.gens.iter().map(move |h| g.mul(*h)))
        .collect();
    canonicalize(&gens, false).expect("product of nonempty ideals")
}

pub fn sum(i: &MonomialIdeal, j: &MonomialIdeal) -> MonomialIdeal {
    let gens: Vec<Monomial> = i.gens.iter().chain(j.gens.iter()).copied().collect();
    canonicalize(&gens, false).expect("sum of nonempty ideals")
}

/// `I^n` for `n >= 1`.
pub fn power(i: &MonomialIdeal, n: u32) -> Result<MonomialIdeal, StaircaseError> {
    if n == 0 {
        return Err(StaircaseError::ZeroPower);
    }
    let mut acc = i.clone();
    for _ in 1..n {
        acc = product(&acc, i);
    }
    Ok(acc)
}

pub fn swap_axes(i: &MonomialIdeal) -> MonomialIdeal {
    let gens: Vec<Monomial> = i.gens.iter().map(|g| g.transpose()).collect();
    canonicalize(&gens, false).expect("nonempty")
}

/// Vertices of the Newton polygon, `x` exponent strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonHull {
    pub vertices: Vec<Monomial>,
}

impl NewtonHull {
    /// Consecutive edges as `(Δa, Δb)` with both positive.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices
            .windows(2)
            .map(|w| (w[0].a - w[1].a, w[1].b - w[0].b))
    }

    /// Whether `(a, b)` lies on or above every edge line.
    fn admits(&self, m: Monomial) -> bool {
        self.vertices.windows(2).all(|w| {
            let (p, q) = (w[0].a as i64, w[0].b as i64);
            let (dp, dq) = ((w[0].a - w[1].a) as i64, (w[1].b - w[0].b) as i64);
            dq * (m.a as i64 - p) + dp * (m.b as i64 - q) >= 0
        })
    }

    /// Smallest `a >= 0` with `(a, b)` in the polygon.
    fn min_a_at(&self, b: u32) -> u32 {
        self.vertices
            .windows(2)
            .map(|w| {
                let (p, q) = (w[0].a as i64, w[0].b as i64);
                let (dp, dq) = ((w[0].a - w[1].a) as i64, (w[1].b - w[0].b) as i64);
                // dq * (a - p) + dp * (b - q) >= 0
                let rhs = dq * p - dp * (b as i64 - q);
                Integer::div_ceil(&rhs, &dq).max(0)
            })
            .max()
            .unwrap_or(0) as u32
    }
}

/// Lower-left convex hull of the generator exponents.
///
/// # Panics
/// If the ideal is not m-primary.
pub fn newton_vertices(i: &MonomialIdeal) -> NewtonHull {
    assert!(i.is_primary(), "Newton polygon requires an m-primary ideal");
    let mut hull: Vec<Monomial> = Vec::with_capacity(i.gens.len());
    for &pt in &i.gens {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let m = hull[hull.len() - 1];
            let u = (m.a as i64 - o.a as i64, m.b as i64 - o.b as i64);
            let v = (pt.a as i64 - m.a as i64, pt.b as i64 - m.b as i64);
            // keep only strictly clockwise turns
            if u.0 * v.1 - u.1 * v.0 >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    NewtonHull { vertices: hull }
}

/// Integral closure: the monomials on or above the Newton polygon.
pub fn integral_closure(i: &MonomialIdeal) -> MonomialIdeal {
    let hull = newton_vertices(i);
    let bmax = i.gens[i.r()].b;
    let gens: Vec<Monomial> = (0..=bmax)
        .map(|b| Monomial::new(hull.min_a_at(b), b))
        .collect();
    let closed = canonicalize(&gens, true).expect("closure of an m-primary ideal");
    debug_assert!(closed.gens.iter().all(|&g| hull.admits(g)));
    closed
}

pub fn is_complete(i: &MonomialIdeal) -> bool {
    integral_closure(i) == *i
}

/// `mu(I) = ord(I) + 1`, the numeric contractedness criterion for ideals.
pub fn is_contracted_numeric(i: &MonomialIdeal) -> bool {
    i.mu() == i.order() as usize + 1
}

pub fn is_simple(i: &MonomialIdeal) -> bool {
    match zariski_factor(i) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].mult == 1,
        Err(_) => false,
    }
}

/// The simple complete ideal `closure(<x^p, y^q>)` with `gcd(p, q) = 1`,
/// taken `mult` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub p: u32,
    pub q: u32,
    pub mult: u32,
}

impl SimpleFactor {
    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::closed_axes(self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleFactorization {
    /// Sorted by increasing slope `q / p`.
    pub factors: Vec<SimpleFactor>,
}

impl SimpleFactorization {
    /// Each simple factor repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<(u32, u32)> {
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat_n((f.p, f.q), f.mult as usize))
            .collect()
    }

    /// Product of the factors, recovering the factored ideal.
    pub fn rebuild(&self) -> MonomialIdeal {
        product_of_simples(&self.expanded())
    }
}

/// Product of `closure(<x^p, y^q>)` over the given pairs.
///
/// # Panics
/// If `pairs` is empty.
pub fn product_of_simples(pairs: &[(u32, u32)]) -> MonomialIdeal {
    let mut it = pairs.iter().map(|&(p, q)| MonomialIdeal::closed_axes(p, q));
    let first = it.next().expect("at least one factor");
    it.fold(first, |acc, f| product(&acc, &f))
}

/// Factorization of a complete ideal into simple complete ideals, one factor
/// per Newton polygon edge.
pub fn zariski_factor(i: &MonomialIdeal) -> Result<SimpleFactorization, StaircaseError> {
    if !i.is_primary() {
        return Err(StaircaseError::NotPrimary);
    }
    if !is_complete(i) {
        return Err(StaircaseError::NotComplete);
    }
    let hull = newton_vertices(i);
    let factors = hull
        .edges()
        .map(|(da, db)| {
            let d = da.gcd(&db);
            SimpleFactor {
                p: da / d,
                q: db / d,
                mult: d,
            }
        })
        .collect();
    Ok(SimpleFactorization { factors })
}

/// Every m-primary monomial ideal with `a_0 <= max_a` and `b_r <= max_b`,
/// in lexicographic order of the generator list.
pub fn enumerate_primary(max_a: u32, max_b: u32) -> Vec<MonomialIdeal> {
    fn subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
        fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..=n {
                cur.push(v);
                rec(v + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(1, n, k, &mut Vec::new(), &mut out);
        out
    }
    let mut out = Vec::new();
    for r in 1..=max_a.min(max_b) as usize {
        let a_sets = subsets(max_a, r);
        let b_sets = subsets(max_b, r);
        for a_set in &a_sets {
            for b_set in &b_sets {
                let mut gens = Vec::with_capacity(r + 1);
                for k in 0..=r {
                    let a = if k < r { a_set[r - 1 - k] } else { 0 };
                    let b = if k == 0 { 0 } else { b_set[k - 1] };
                    gens.push(Monomial::new(a, b));
                }
                out.push(MonomialIdeal { gens });
            }
        }
    }
    out.sort_by(|x, y| {
        let kx: Vec<(u32, u32)> = x.gens.iter().map(|&m| m.into()).collect();
        let ky: Vec<(u32, u32)> = y.gens.iter().map(|&m| m.into()).collect();
        kx.cmp(&ky)
    });
    out
}

/// Complete, normalized (`a_0 <= b_r`) staircases with `r >= 2` inside the box.
pub fn enumerate_complete_normalized(max_a: u32, max_b: u32) -> Vec<MonomialIdeal> {
    enumerate_primary(max_a, max_b)
        .into_iter()
        .filter(|i| i.r() >= 2 && i.is_normalized() && is_complete(i))
        .collect()
}
