//! Arbitrary-precision integers, exact rationals, and the
//! Catalan/binomial/Narayana combinatorics used everywhere else.
//!
//! Values are exact at every step; nothing in this module touches floating
//! point. Catalan numbers are produced by the convolution recurrence
//! `C_{m+1} = Σ C_s C_{m-s}` and each new entry is cross-checked against the
//! closed form `binomial(2m, m) / (m+1)`; a mismatch aborts the process.

use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative integer.
pub type Nat = BigUint;

/// Exact rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

fn catalan_cache() -> &'static Mutex<Vec<Nat>> {
    static CACHE: OnceLock<Mutex<Vec<Nat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Nat::one()]))
}

/// The `m`-th Catalan number.
///
/// Computed by the recurrence and cached; the cache is append-only, so
/// concurrent callers always observe the same values.
pub fn catalan(m: usize) -> Nat {
    let mut cache = catalan_cache().lock().unwrap();
    while cache.len() <= m {
        let k = cache.len();
        let next: Nat = (0..k).map(|s| &cache[s] * &cache[k - 1 - s]).sum();
        let closed = binomial(2 * k as u64, k as i64) / Nat::from(k as u64 + 1);
        assert_eq!(
            next, closed,
            "catalan({k}): recurrence and closed form disagree"
        );
        cache.push(next);
    }
    cache[m].clone()
}

/// `C_0 ..= C_max` as an owned table, for hot loops that must not take the
/// cache lock per lookup.
pub fn catalan_table(max: usize) -> Vec<Nat> {
    catalan(max);
    catalan_cache().lock().unwrap()[..=max].to_vec()
}

/// `n` choose `k`, with the vanishing convention: 0 whenever `k < 0` or
/// `k > n`. The summation bounds of every closed form here rely on this.
pub fn binomial(n: u64, k: i64) -> Nat {
    if k < 0 || k as u64 > n {
        return Nat::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Nat::one();
    for i in 0..k {
        acc = acc * Nat::from(n - i) / Nat::from(i + 1);
    }
    acc
}

/// Narayana number `N_{n,k} = (1/n) binomial(n,k) binomial(n,k-1)`;
/// 0 outside `1 <= k <= n`. Requires `n >= 1`.
pub fn narayana(n: u64, k: i64) -> Nat {
    assert!(n >= 1, "narayana requires n >= 1");
    if k < 1 || k as u64 > n {
        return Nat::zero();
    }
    binomial(n, k) * binomial(n, k - 1) / Nat::from(n)
}

pub fn factorial(n: u64) -> Nat {
    (1..=n).fold(Nat::one(), |acc, i| acc * Nat::from(i))
}

/// Exact rational `num / den`.
pub fn rat<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Rat {
    Rat::new(num.into(), den.into())
}

pub fn rat_int<N: Into<BigInt>>(num: N) -> Rat {
    Rat::from_integer(num.into())
}

pub fn nat_to_rat(n: &Nat) -> Rat {
    Rat::from_integer(BigInt::from(n.clone()))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The integer value of `r`, if it has one.
pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Nonnegative integer value of `r`, if it has one.
pub fn rat_to_nat(r: &Rat) -> Option<Nat> {
    if r.is_integer() && !r.is_negative() {
        r.numer().to_biguint()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent recurrence iteration, kept separate from the cached
    /// implementation it checks.
    fn catalan_by_recurrence(max: usize) -> Vec<Nat> {
        let mut c = vec![Nat::one()];
        for m in 0..max {
            let next: Nat = (0..=m).map(|s| &c[s] * &c[m - s]).sum();
            c.push(next);
        }
        c
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), Nat::one());
        assert_eq!(catalan(5), Nat::from(42u32));
        assert_eq!(catalan(12), Nat::from(208012u32));
        let oracle = catalan_by_recurrence(30);
        for (m, expected) in oracle.iter().enumerate() {
            assert_eq!(&catalan(m), expected, "C_{m}");
        }
    }

    #[test]
    fn catalan_recurrence_holds() {
        for m in 0..=30usize {
            let sum: Nat = (0..=m).map(|s| catalan(s) * catalan(m - s)).sum();
            assert_eq!(sum, catalan(m + 1));
        }
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 0), Nat::one());
        assert_eq!(binomial(1, 3), Nat::zero());
        assert_eq!(binomial(5, 2), Nat::from(10u32));
        assert_eq!(binomial(5, -1), Nat::zero());
        assert_eq!(binomial(0, 0), Nat::one());
        // Pascal recurrence on a block
        for n in 1..=20u64 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn narayana_row() {
        assert_eq!(narayana(3, 2), Nat::from(3u32));
        assert_eq!(narayana(3, 0), Nat::zero());
        let row: Vec<Nat> = (1..=4).map(|k| narayana(4, k)).collect();
        assert_eq!(
            row,
            vec![Nat::one(), Nat::from(6u32), Nat::from(6u32), Nat::one()]
        );
        let sum: Nat = row.into_iter().sum();
        assert_eq!(sum, catalan(4));
    }

    #[test]
    fn narayana_row_sums() {
        for n in 1..=15u64 {
            let sum: Nat = (0..=n as i64 + 1).map(|k| narayana(n, k)).sum();
            assert_eq!(sum, catalan(n as usize));
        }
    }

    #[test]
    fn convolution_identity() {
        // 2 Σ_{j<=s} C_j binom(2(s-j), s-j) = binom(2s+2, s+1)
        for s in 0..=30usize {
            let lhs: Nat = (0..=s)
                .map(|j| catalan(j) * binomial(2 * (s - j) as u64, (s - j) as i64))
                .sum::<Nat>()
                * Nat::from(2u32);
            assert_eq!(lhs, binomial(2 * s as u64 + 2, s as i64 + 1));
        }
    }

    #[test]
    fn binomial_catalan_identities() {
        for n in 4..=30u64 {
            let a: Nat = (0..=n - 3)
                .map(|j| catalan(j as usize) * binomial(2 * n - 6 - 2 * j, (n - 3 - j) as i64))
                .sum();
            assert_eq!(a, binomial(2 * n - 5, n as i64 - 2));

            let b: Nat = (0..=n - 3)
                .map(|j| catalan(j as usize) * binomial(2 * n - 4 - 2 * j, (n - 2 - j) as i64))
                .sum();
            assert_eq!(
                b,
                binomial(2 * n - 3, n as i64 - 1) - catalan(n as usize - 2)
            );
        }
    }

    #[test]
    fn rat_helpers() {
        let half = rat(1, 2);
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(rat(4, 2), rat_int(2));
        assert_eq!(rat_to_i64(&rat_int(7)), Some(7));
        assert_eq!(rat_to_i64(&half), None);
        assert_eq!(rat_to_nat(&rat_int(-1)), None);
        assert_eq!(rat_to_nat(&rat_int(5)), Some(Nat::from(5u32)));
        assert!((rat_to_f64(&half) - 0.5).abs() < 1e-15);
    }
}
