use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// The monomial `x^a y^b`, stored by its exponent pair.
///
/// Ordering is degree-lex with `x > y`: lower total degree first, and within
/// one degree the larger `x` exponent is the larger monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub const fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub fn x() -> Self {
        Monomial::new(1, 0)
    }

    pub fn y() -> Self {
        Monomial::new(0, 1)
    }

    /// Total degree `a + b`.
    pub fn degree(self) -> u32 {
        self.a + self.b
    }

    /// `self | other` in the monomial lattice.
    pub fn divides(self, other: Monomial) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b)
    }

    /// `other / self`, if it exists.
    pub fn quotient_of(self, other: Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial::new(other.a - self.a, other.b - self.b))
    }

    pub fn transpose(self) -> Monomial {
        Monomial::new(self.b, self.a)
    }

    /// All monomials of total degree `< n`, degree by degree, `y` exponent rising.
    pub fn below_degree(n: u32) -> impl Iterator<Item = Monomial> {
        (0..n).flat_map(|d| (0..=d).map(move |b| Monomial::new(d - b, b)))
    }

    /// Position of this monomial in the enumeration of [`Monomial::below_degree`].
    pub fn dense_index(self) -> usize {
        let d = self.degree() as usize;
        d * (d + 1) / 2 + self.b as usize
    }

    /// Number of monomials of total degree `< n`.
    pub fn count_below_degree(n: u32) -> usize {
        let n = n as usize;
        n * (n + 1) / 2
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.a.cmp(&other.a))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<(u32, u32)> for Monomial {
    fn from((a, b): (u32, u32)) -> Self {
        Monomial::new(a, b)
    }
}

impl From<Monomial> for (u32, u32) {
    fn from(m: Monomial) -> Self {
        (m.a, m.b)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn power(f: &mut fmt::Formatter<'_>, var: char, e: u32) -> fmt::Result {
            match e {
                0 => Ok(()),
                1 => write!(f, "{var}"),
                _ => write!(f, "{var}^{e}"),
            }
        }
        if self.a == 0 && self.b == 0 {
            return write!(f, "1");
        }
        power(f, 'x', self.a)?;
        power(f, 'y', self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility() {
        assert!(Monomial::new(2, 0).divides(Monomial::new(2, 1)));
        assert!(!Monomial::new(2, 1).divides(Monomial::new(3, 0)));
        assert_eq!(
            Monomial::new(1, 2).quotient_of(Monomial::new(3, 2)),
            Some(Monomial::new(2, 0))
        );
    }

    #[test]
    fn degree_lex_order() {
        let mut ms: Vec<_> = Monomial::below_degree(3).collect();
        let sorted = {
            let mut s = ms.clone();
            s.sort();
            s
        };
        // below_degree lists x^d first inside a degree, which is the largest
        ms.sort_by_key(|m| m.dense_index());
        assert_eq!(ms.len(), 6);
        assert!(Monomial::new(2, 0) > Monomial::new(1, 1));
        assert!(Monomial::new(0, 2) > Monomial::new(1, 0));
        assert_eq!(sorted.first(), Some(&Monomial::ONE));
        for (i, m) in Monomial::below_degree(6).enumerate() {
            assert_eq!(m.dense_index(), i);
        }
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(4, 1).to_string(), "x^4y");
        assert_eq!(Monomial::ONE.to_string(), "1");
        assert_eq!(Monomial::new(0, 3).to_string(), "y^3");
    }
}
