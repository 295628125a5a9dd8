//! Exact arithmetic substrate: monomials, bivariate integer polynomials and
//! exact rational rank.

mod modp;
mod monomial;
mod poly;
pub mod rank;

pub use modp::FAST_PRIME;
pub use monomial::Monomial;
pub use poly::{poly_add, poly_mul, truncate, BiPoly};
pub use rank::{
    rank_exact, rank_exact_i64, rank_mod_prime, rank_of, rank_report, IntMatrix, RankReport,
};
