use num_bigint::BigInt;

use super::Rational;
use crate::{Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Least non-negative residue of `a` modulo `m > 0`.
pub fn modulo(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Returns `b` in `[0, p)` with `a * b ≡ 1 (mod p)`.
pub fn mod_inverse(a: i64, p: i64) -> Result<i64> {
    if p <= 0 {
        return Err(Error::NonPositiveModulus(p));
    }
    if p == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = (p as i128, (a as i128).rem_euclid(p as i128));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { value: a, modulus: p });
    }
    Ok(t0.rem_euclid(p as i128) as i64)
}

/// Dedekind sum `s(q, p) = Σ_{k=1}^{p-1} ((k/p))((kq/p))`, summed exactly.
///
/// Every term has denominator dividing `4p²`, so the numerators are
/// accumulated as integers and divided once at the end.
pub fn dedekind_sum(q: i64, p: i64) -> Result<Rational> {
    if p <= 0 {
        return Err(Error::NonPositiveModulus(p));
    }
    let (p128, q128) = (p as i128, q as i128);
    let mut acc: i128 = 0;
    for k in 1..p128 {
        let r = (k * q128).rem_euclid(p128);
        if r != 0 {
            acc += (2 * k - p128) * (2 * r - p128);
        }
    }
    Ok(Rational::new(BigInt::from(acc), BigInt::from(4 * p128 * p128)))
}
