use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Monomial;

/// Exact polynomial in `x, y` with arbitrary-precision integer coefficients.
///
/// Terms are kept in a map keyed by degree-lex monomial order; zero
/// coefficients are never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(Monomial::ONE, 1)
    }

    pub fn monomial(m: Monomial, coeff: impl Into<BigInt>) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(m, coeff.into());
        p
    }

    /// Builds a polynomial from `(a, b, coeff)` triples; repeated monomials add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = BiPoly::zero();
        for (a, b, c) in terms {
            p.add_term(Monomial::new(a, b), c.into());
        }
        p
    }

    pub fn x() -> Self {
        BiPoly::monomial(Monomial::x(), 1)
    }

    pub fn y() -> Self {
        BiPoly::monomial(Monomial::y(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degree-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &BigInt)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// The only term, if the polynomial has exactly one.
    pub fn as_single_term(&self) -> Option<(Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Lowest total degree of a term (the order in the local ring); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Highest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// True when every term has the same total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.degree()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Drops every term of total degree `>= n`.
    pub fn truncate(&self, n: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < n)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> BiPoly {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn transpose(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.transpose(), c.clone()))
                .collect(),
        }
    }

    /// Largest absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn add_ref(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }
}

/// Coefficientwise sum.
pub fn poly_add(p: &BiPoly, q: &BiPoly) -> BiPoly {
    p.add_ref(q)
}

/// Exact product.
pub fn poly_mul(p: &BiPoly, q: &BiPoly) -> BiPoly {
    p.mul_ref(q)
}

/// Drops all terms of total degree `>= n`.
pub fn truncate(p: &BiPoly, n: u32) -> BiPoly {
    p.truncate(n)
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        self.add_ref(&rhs)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.add_ref(rhs)
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        self.sub_ref(&rhs)
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        self.mul_ref(&rhs)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl From<Monomial> for BiPoly {
    fn from(m: Monomial) -> Self {
        BiPoly::monomial(m, 1)
    }
}

/// A coefficient on the wire: a JSON integer when it fits in `i64`, else a
/// decimal string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireCoeff {
    Small(i64),
    Big(String),
}

/// Serialized as a list of `[a, b, coeff]` triples in ascending term order.
impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<(u32, u32, WireCoeff)> = self
            .terms()
            .map(|(m, c)| {
                let w = c
                    .to_i64()
                    .map_or_else(|| WireCoeff::Big(c.to_string()), WireCoeff::Small);
                (m.a, m.b, w)
            })
            .collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples = Vec::<(u32, u32, WireCoeff)>::deserialize(d)?;
        let mut p = BiPoly::zero();
        for (a, b, w) in triples {
            let c = match w {
                WireCoeff::Small(v) => BigInt::from(v),
                WireCoeff::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
            };
            p.add_term(Monomial::new(a, b), c);
        }
        Ok(p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
