//! Prime-field elimination used as the fast path of the exact rank engine.

use std::sync::OnceLock;

/// The fixed prime of the fast pre-pass: `2^31 - 1`.
pub const FAST_PRIME: u64 = 2_147_483_647;

/// Residue arithmetic modulo a prime below `2^31`, with Barrett reduction.
#[derive(Clone, Copy, Debug)]
pub struct Zp {
    p: u64,
    mu: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(
            p > 2 && p < (1 << 31),
            "modulus must be an odd prime below 2^31"
        );
        Zp {
            p,
            mu: u64::MAX / p,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces `x < 2^63`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.mu as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn lift_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

/// Rank over `GF(p)` of a dense matrix of residues. Consumes the rows.
pub fn dense_rank_mod(zp: &Zp, ncols: usize, rows: Vec<Vec<u64>>) -> usize {
    let p = zp.modulus();
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut rank = 0;
    let limit = ncols.min(rows.len());
    for mut row in rows {
        if rank == limit {
            break;
        }
        let mut j = 0;
        while j < ncols {
            let v = row[j];
            if v == 0 {
                j += 1;
                continue;
            }
            match &pivots[j] {
                Some(piv) => {
                    let c = p - v;
                    row[j] = 0;
                    for k in j + 1..ncols {
                        let pk = piv[k];
                        if pk != 0 {
                            row[k] = zp.reduce(row[k] + c * pk);
                        }
                    }
                    j += 1;
                }
                None => {
                    let inv = zp.inv(v);
                    for x in row[j..].iter_mut() {
                        if *x != 0 {
                            *x = zp.mul(*x, inv);
                        }
                    }
                    pivots[j] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Number of primes available to the multi-modular certificate.
pub const PRIME_POOL: usize = 512;

/// Primes below `2^31`, descending from [`FAST_PRIME`].
pub fn prime_pool() -> &'static [u64] {
    static POOL: OnceLock<Vec<u64>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut n = FAST_PRIME;
        while out.len() < PRIME_POOL {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barrett_matches_remainder() {
        let zp = Zp::new(FAST_PRIME);
        for x in [
            0u64,
            1,
            FAST_PRIME - 1,
            FAST_PRIME,
            (FAST_PRIME - 1) * (FAST_PRIME - 1),
            (1 << 62) + 12345,
        ] {
            assert_eq!(zp.reduce(x), x % FAST_PRIME);
        }
        assert_eq!(zp.mul(zp.inv(12345), 12345), 1);
    }

    #[test]
    fn pool_is_prime_and_descending() {
        let pool = prime_pool();
        assert_eq!(pool[0], FAST_PRIME);
        assert!(pool.windows(2).all(|w| w[0] > w[1]));
        assert!(pool.iter().take(20).all(|&p| is_prime_u64(p)));
        assert!(!is_prime_u64(FAST_PRIME - 2));
    }

    #[test]
    fn small_rank_mod() {
        let zp = Zp::new(FAST_PRIME);
        let rows = vec![vec![2, 4], vec![1, 2]];
        assert_eq!(dense_rank_mod(&zp, 2, rows), 1);
    }
}
