use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Integer Laurent polynomial in one variable `T`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, BigInt::from(coeff));
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    /// Coefficients of `T^low, T^(low+1), ...`.
    pub fn from_dense(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (low + k as i64, c)))
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Top exponent of a symmetric polynomial; 0 for constants and zero.
    pub fn degree(&self) -> i64 {
        self.max_exp().unwrap_or(0).max(0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// `T ↦ T^w`.
    pub fn substitute_power(&self, w: i64) -> Self {
        assert!(w != 0, "substitution T -> T^0 collapses the polynomial");
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(e * w, c.clone());
        }
        out
    }

    /// `T ↦ T^-1`.
    pub fn reflect(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn is_symmetric(&self) -> bool {
        self == &self.reflect()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluation at an integer point `t ≠ 0` when all exponents are non-negative
    /// or `t = ±1`.
    pub fn eval_int(&self, t: i64) -> Option<BigInt> {
        if self.min_exp().is_some_and(|e| e < 0) && t.abs() != 1 {
            return None;
        }
        let t = BigInt::from(t);
        Some(self.terms.iter().map(|(&e, c)| c * num_traits::pow(t.clone(), e.unsigned_abs() as usize)).sum())
    }

    /// Shifts so exponents are centred on zero. Fails on zero or when the
    /// exponent span is odd.
    pub fn recenter(&self) -> Result<Self> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::ZeroPolynomial),
        };
        if (hi - lo) % 2 != 0 {
            return Err(Error::Invalid("odd exponent span cannot be centred".into()));
        }
        Ok(self.shift(-(lo + hi) / 2))
    }

    /// Symmetric representative with `Δ(1) = 1`: recentred, and negated when `Δ(1) = -1`.
    pub fn normalize_alexander(&self) -> Result<Self> {
        let c = self.recenter()?;
        let v = c.eval_at_one();
        if v.is_one() {
            Ok(c)
        } else if v == -BigInt::one() {
            Ok(-c)
        } else {
            Err(Error::Invalid(format!("Δ(1) = {v}, not ±1")))
        }
    }

    /// Dense coefficient vector from `T^min` upward, with the minimum exponent.
    pub fn to_dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (&e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    /// Exact quotient by a polynomial with unit leading coefficient; `None`
    /// if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dlo = divisor.min_exp()?;
        let dhi = divisor.max_exp()?;
        let lead = divisor.leading_coeff()?.clone();
        if !lead.abs().is_one() {
            return None;
        }
        let lowest = self.min_exp().unwrap_or(0) - dlo;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(hi) = rem.max_exp() {
            let e = hi - dhi;
            if e < lowest {
                return None;
            }
            let c = rem.coeff(hi) * &lead;
            rem = rem - divisor.shift(e).scale(&c);
            quot.add_term(e, c);
        }
        Some(quot)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    /// `exp:coeff` pairs, ascending, comma separated; `0` for the zero polynomial.
    pub fn to_sparse_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms.iter().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>().join(",")
    }

    pub fn parse_sparse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a sparse polynomial: {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for part in s.split(',') {
            let (e, c) = part.split_once(':').ok_or_else(bad)?;
            let e: i64 = e.trim().parse().map_err(|_| bad())?;
            let c: BigInt = c.trim().parse().map_err(|_| bad())?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// Human-readable form, highest exponent first: `T^2 - T + 1 - T^-1 + T^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "T".into(),
                _ => format!("T^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
