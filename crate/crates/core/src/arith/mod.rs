//! Number theory and real analysis behind the probability formula.

mod collision;
mod gamma;
mod majorise;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::rational::BigRational;

pub use collision::{prodpi_collision_scan, prodpi_collision_scan_with, Collision, CollisionReport, COLLISION_MAX_SUM};
pub use gamma::{
    gamma_bound_ln, ln_gamma, log_f, prop_097, prop_097_constant, Prop097, PROP_097_CONSTANT, PROP_097_TOLERANCE,
};
pub use majorise::{h_exact, h_ln, majorisation, schur_strict_check, Majorisation, RealVector, SchurVerdict};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation as `(p, e)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, r))` when `n = p^r` with `r >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, r)] => Some((*p, *r)),
        _ => None,
    }
}

pub fn smallest_prime_divisor(n: u64) -> Option<u64> {
    factorize(n).first().map(|&(p, _)| p)
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// The smallest prime strictly greater than `n`.
///
/// # Panics
///
/// If the result breaks Bertrand's postulate (`p < 2n` for `n >= 2`), which
/// would mean the primality test is wrong.
pub fn next_prime(n: u64) -> u64 {
    let mut p = n + 1;
    while !is_prime(p) {
        p += 1;
    }
    assert!(n < 2 || p < 2 * n, "Bertrand's postulate fails for {n} -> {p}");
    p
}

fn ratio_cache() -> &'static RwLock<HashMap<u64, BigRational>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, BigRational>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `t!/t^t`, reduced. Values are cached per `t`.
pub fn factorial_ratio(t: u64) -> Result<BigRational> {
    if t == 0 {
        return Err(Error::Parameter("factorial ratio needs t >= 1".into()));
    }
    if let Some(v) = ratio_cache().read().unwrap().get(&t) {
        return Ok(v.clone());
    }
    let fact: BigInt = (1..=t).map(BigInt::from).product();
    let value = BigRational::new(fact, Pow::pow(BigInt::from(t), t));
    // Another thread may have inserted the same value; either copy is fine.
    ratio_cache().write().unwrap().entry(t).or_insert_with(|| value.clone());
    Ok(value)
}

fn int_valuation(x: &BigInt, p: &BigInt) -> i64 {
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// `v_p(x) = v_p(num) - v_p(den)`.
pub fn padic_valuation(x: &BigRational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::Parameter("valuation of zero".into()));
    }
    if !is_prime(p) {
        return Err(Error::Parameter(format!("{p} is not prime")));
    }
    let p = BigInt::from(p);
    Ok(int_valuation(x.numer(), &p) - int_valuation(x.denom(), &p))
}

/// `v_p(t!)` by Legendre's formula.
pub fn legendre(t: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut q = p;
    while q <= t {
        v += t / q;
        q = match q.checked_mul(p) {
            Some(q) => q,
            None => break,
        };
    }
    v
}

/// Product of `t!/t^t` over a multiset, exactly.
pub fn factorial_ratio_product(ts: &[u64]) -> Result<BigRational> {
    ts.iter().try_fold(BigRational::one(), |acc, &t| Ok(acc * factorial_ratio(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn primes_and_factors() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(smallest_prime_divisor(91), Some(7));
    }

    #[test]
    fn next_prime_values() {
        assert_eq!(next_prime(1), 2);
        assert_eq!(next_prime(7), 11);
        assert_eq!(next_prime(13), 17);
        for n in 2..2000 {
            let p = next_prime(n);
            assert!(p > n && p < 2 * n && is_prime(p));
        }
    }

    #[test]
    fn factorial_ratio_values() {
        assert_eq!(factorial_ratio(1).unwrap(), ratio(1, 1));
        assert_eq!(factorial_ratio(2).unwrap(), ratio(1, 2));
        assert_eq!(factorial_ratio(3).unwrap(), ratio(2, 9));
        assert_eq!(factorial_ratio(4).unwrap(), ratio(3, 32));
        assert_eq!(factorial_ratio(5).unwrap(), ratio(24, 625));
        assert!(factorial_ratio(0).is_err());
    }

    #[test]
    fn factorial_ratio_strictly_decreasing() {
        let mut prev = factorial_ratio(1).unwrap();
        for t in 2..=200 {
            let cur = factorial_ratio(t).unwrap();
            assert!(cur < prev, "t = {t}");
            prev = cur;
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&ratio(1, 2), 2).unwrap(), -1);
        assert_eq!(padic_valuation(&ratio(2, 9), 3).unwrap(), -2);
        assert_eq!(padic_valuation(&ratio(2, 9), 2).unwrap(), 1);
        assert!(padic_valuation(&ratio(0, 1), 2).is_err());
        assert!(padic_valuation(&ratio(1, 2), 4).is_err());
    }

    #[test]
    fn valuation_of_ratio_negative_iff_p_divides_t() {
        for t in 1..=40u64 {
            let r = factorial_ratio(t).unwrap();
            for p in primes_up_to(37) {
                let v = padic_valuation(&r, p).unwrap();
                // Independent check: v_p(t!) - t v_p(t).
                let mut vt = 0;
                let mut u = t;
                while u % p == 0 {
                    u /= p;
                    vt += 1;
                }
                assert_eq!(v, legendre(t, p) as i64 - (t * vt) as i64);
                assert_eq!(v < 0, t % p == 0, "t = {t}, p = {p}");
            }
        }
    }
}
