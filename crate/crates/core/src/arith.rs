//! Small integer number theory used throughout the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_odd_prime(q: u64) -> Result<u64> {
    if q % 2 == 1 && is_prime(q) {
        Ok(q)
    } else {
        Err(Error::NotOddPrime(q))
    }
}

/// Validates a pair of distinct odd primes.
pub fn check_prime_pair(p: u64, l: u64) -> Result<()> {
    check_odd_prime(p)?;
    check_odd_prime(l)?;
    if p == l {
        return Err(Error::EqualPrimes(p));
    }
    Ok(())
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc = 1u128 % m128;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(n / p)` by Euler's criterion.
pub fn legendre_symbol(n: i64, p: u64) -> i8 {
    debug_assert!(p % 2 == 1 && is_prime(p));
    let r = (n as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    match mod_pow(r, (p - 1) / 2, p) {
        1 => 1,
        x if x == p - 1 => -1,
        _ => unreachable!("Euler criterion for prime modulus"),
    }
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Writes `n = p^r l^s` if possible.
pub fn split_prime_powers(n: &BigInt, p: u64, l: u64) -> Option<(u32, u32)> {
    if !n.is_positive() {
        return None;
    }
    let mut rest = n.clone();
    let strip = |rest: &mut BigInt, q: u64| {
        let q = BigInt::from(q);
        let mut e = 0u32;
        loop {
            let (d, r) = rest.div_rem(&q);
            if !r.is_zero() {
                break;
            }
            *rest = d;
            e += 1;
        }
        e
    };
    let r = strip(&mut rest, p);
    let s = strip(&mut rest, l);
    rest.is_one().then_some((r, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let odd: Vec<u64> = (0..30).filter(|&q| check_odd_prime(q).is_ok()).collect();
        assert_eq!(odd, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(check_prime_pair(4, 6), Err(Error::NotOddPrime(4)));
        assert_eq!(check_prime_pair(5, 5), Err(Error::EqualPrimes(5)));
        assert!(check_prime_pair(3, 5).is_ok());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(-2, 5), -1);
        assert_eq!(legendre_symbol(-2, 17), 1);
        assert_eq!(legendre_symbol(10, 5), 0);
    }

    #[test]
    fn legendre_matches_squares() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for n in -40i64..40 {
                let r = n.rem_euclid(p as i64) as u64;
                let expect = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(n, p), expect, "({n}/{p})");
            }
        }
    }

    #[test]
    fn isqrt_edges() {
        for n in 0u128..2000 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        let big = 5u128.pow(25);
        assert_eq!(isqrt(big * big), big);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(
            split_prime_powers(&BigInt::from(25 * 17), 5, 17),
            Some((2, 1))
        );
        assert_eq!(split_prime_powers(&BigInt::from(1), 5, 17), Some((0, 0)));
        assert_eq!(split_prime_powers(&BigInt::from(2), 5, 17), None);
        assert_eq!(split_prime_powers(&BigInt::from(0), 5, 17), None);
    }
}
