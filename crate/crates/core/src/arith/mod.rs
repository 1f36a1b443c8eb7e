//! Exact arithmetic substrate: rationals, slopes, Laurent polynomials,
//! modular arithmetic, Dedekind sums and root-of-unity norms.

mod laurent;
mod numtheory;
mod resultant;
mod slope;

pub use laurent::LaurentPoly;
pub use numtheory::{dedekind_sum, gcd, mod_inverse, modulo};
pub use resultant::{cyclotomic_norm, resultant};
pub use slope::{slope_distance, Slope, SlopeOrTrivial};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision reduced fraction.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"num/den"`, with the denominator omitted when it is 1.
pub fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> crate::Result<Rational> {
    let bad = || crate::Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}
