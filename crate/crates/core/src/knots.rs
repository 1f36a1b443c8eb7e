//! Knot descriptors and invariants read off the Alexander polynomial.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::arith::{gcd, int, LaurentPoly, Rational};
use crate::cfk::{self, CfkComplex};
use crate::{Error, Result};

/// Torus knot in canonical form: `r > |s| ≥ 2`, sign carried by `s`,
/// or the unknot `T(1,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusKnot {
    r: i64,
    s: i64,
}

impl TorusKnot {
    pub const UNKNOT: TorusKnot = TorusKnot { r: 1, s: 0 };

    /// Accepts any coprime pair; `T(r,s) = T(s,r)` and the sign is `sign(r·s)`.
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if (r, s) == (1, 0) || (r, s) == (0, 1) {
            return Ok(Self::UNKNOT);
        }
        if gcd(r, s) != 1 {
            return Err(Error::InvalidKnot(format!("T({r},{s}) needs coprime parameters")));
        }
        let (hi, lo) = (r.abs().max(s.abs()), r.abs().min(s.abs()));
        if lo <= 1 {
            return Ok(Self::UNKNOT);
        }
        let sign = (r.signum() * s.signum()).signum();
        Ok(TorusKnot { r: hi, s: sign * lo })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn is_unknot(&self) -> bool {
        *self == Self::UNKNOT
    }

    /// Positive torus knots have positive `s`; the unknot counts as positive.
    pub fn is_positive(&self) -> bool {
        self.s >= 0
    }

    pub fn mirror(&self) -> Self {
        TorusKnot { r: self.r, s: -self.s }
    }

    pub fn genus(&self) -> i64 {
        if self.is_unknot() {
            0
        } else {
            (self.r - 1) * (self.s.abs() - 1) / 2
        }
    }

    /// `((T^{rs} - 1)(T - 1)) / ((T^r - 1)(T^s - 1))`, recentred; mirror invariant.
    pub fn alexander(&self) -> LaurentPoly {
        if self.is_unknot() {
            return LaurentPoly::one();
        }
        let (r, s) = (self.r, self.s.abs());
        let cyc = |n: i64| LaurentPoly::from_terms([(n, 1), (0, -1)]);
        let num = cyc(r * s) * cyc(1);
        let den = cyc(r) * cyc(s);
        num.div_exact(&den)
            .expect("torus knot quotient is exact")
            .normalize_alexander()
            .expect("torus knot polynomial is symmetric with Δ(1) = 1")
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.r, self.s)
    }
}

/// A knot the library can compute with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotDesc {
    Torus(TorusKnot),
    /// `C(a,b;T)`: the `(a,b)` cable of a nontrivial torus knot, `b ≥ 2`.
    Cable { a: i64, b: i64, companion: TorusKnot },
    Explicit(Arc<CfkComplex>),
}

impl KnotDesc {
    pub fn unknot() -> Self {
        KnotDesc::Torus(TorusKnot::UNKNOT)
    }

    pub fn torus(r: i64, s: i64) -> Result<Self> {
        Ok(KnotDesc::Torus(TorusKnot::new(r, s)?))
    }

    /// A cable of the unknot is returned as the torus knot it is.
    pub fn cable(a: i64, b: i64, companion: TorusKnot) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidKnot(format!("cable needs b >= 2, got {b}")));
        }
        if gcd(a, b) != 1 {
            return Err(Error::InvalidKnot(format!("cable C({a},{b}) needs coprime parameters")));
        }
        if companion.is_unknot() {
            return Self::torus(a, b);
        }
        Ok(KnotDesc::Cable { a, b, companion })
    }

    pub fn explicit(c: CfkComplex) -> Self {
        KnotDesc::Explicit(Arc::new(c))
    }

    pub fn as_torus(&self) -> Option<TorusKnot> {
        match self {
            KnotDesc::Torus(t) => Some(*t),
            _ => None,
        }
    }

    /// Mirror image. Cables mirror as `C(-a,b; mirror T)`.
    pub fn mirror(&self) -> Self {
        match self {
            KnotDesc::Torus(t) => KnotDesc::Torus(t.mirror()),
            KnotDesc::Cable { a, b, companion } => KnotDesc::Cable { a: -a, b: *b, companion: companion.mirror() },
            KnotDesc::Explicit(c) => KnotDesc::Explicit(Arc::new(cfk::mirror(c))),
        }
    }

    pub fn alexander(&self) -> LaurentPoly {
        match self {
            KnotDesc::Torus(t) => t.alexander(),
            KnotDesc::Cable { a, b, companion } => {
                let pattern = TorusKnot::new(*a, *b).expect("validated cable");
                &companion.alexander().substitute_power(*b) * &pattern.alexander()
            }
            KnotDesc::Explicit(c) => c.euler_polynomial(),
        }
    }

    /// Seifert genus; explicit complexes go through [`cfk::genus`].
    pub fn genus(&self) -> Result<i64> {
        match self {
            KnotDesc::Torus(t) => Ok(t.genus()),
            KnotDesc::Cable { a, b, companion } => Ok(b * companion.genus() + (a.abs() - 1) * (b - 1) / 2),
            KnotDesc::Explicit(_) => Err(Error::UseCfkEngine),
        }
    }
}

impl fmt::Display for KnotDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotDesc::Torus(t) if t.is_unknot() => write!(f, "unknot"),
            KnotDesc::Torus(t) => write!(f, "{t}"),
            KnotDesc::Cable { a, b, companion } => write!(f, "C({a},{b};{companion})"),
            KnotDesc::Explicit(c) => write!(f, "@{}", c.name()),
        }
    }
}

impl Serialize for KnotDesc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_pair(body: &str, src: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("not a knot: {src:?}"));
    let (x, y) = body.split_once(',').ok_or_else(bad)?;
    Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}

fn parse_torus(s: &str, src: &str) -> Result<TorusKnot> {
    let body = s
        .trim()
        .strip_prefix("T(")
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("not a torus knot: {src:?}")))?;
    let (r, s) = parse_pair(body, src)?;
    TorusKnot::new(r, s)
}

/// Parses `T(5,2)`, `T(5,-2)`, `C(59,2;T(6,5))`, `unknot`, and explicit
/// complexes `@preset:NAME`, `@file:PATH`, `@mirror:...`.
impl FromStr for KnotDesc {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let s = src.trim();
        if s.eq_ignore_ascii_case("unknot") || s == "U" {
            return Ok(Self::unknot());
        }
        if let Some(rest) = s.strip_prefix('@') {
            return Ok(Self::explicit(cfk::resolve(rest)?));
        }
        if let Some(body) = s.strip_prefix("C(").and_then(|b| b.strip_suffix(')')) {
            let (pair, comp) =
                body.split_once(';').ok_or_else(|| Error::Parse(format!("cable needs ';': {src:?}")))?;
            let (a, b) = parse_pair(pair, src)?;
            return Self::cable(a, b, parse_torus(comp, src)?);
        }
        Ok(KnotDesc::Torus(parse_torus(s, src)?))
    }
}

fn small(c: &BigInt) -> i64 {
    c.to_i64().expect("coefficient fits in i64")
}

/// `t_i = Σ_{j ≥ 1} j·a_{i+j}`.
pub fn torsion_coeff(delta: &LaurentPoly, i: i64) -> i64 {
    delta.terms().filter(|&(e, _)| e > i).map(|(e, c)| (e - i) * small(c)).sum()
}

/// Torsion coefficients `t_lo ..= t_hi`.
pub fn torsion_window(delta: &LaurentPoly, lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).map(|i| torsion_coeff(delta, i)).collect()
}

/// Recovers `a_s = t_{s-1} - 2t_s + t_{s+1}` from torsion coefficients
/// `t[k] = t_{start + k}`.
pub fn coeff_from_torsion(start: i64, t: &[i64], s: i64) -> Result<i64> {
    let end = start + t.len() as i64;
    if s - 1 < start || s + 1 >= end {
        return Err(Error::InsufficientWindow(s));
    }
    let at = |i: i64| t[(i - start) as usize];
    Ok(at(s - 1) - 2 * at(s) + at(s + 1))
}

/// `Δ''(1) = Σ s(s-1)·a_s`. Rejects non-symmetric input.
pub fn second_deriv_at_1(delta: &LaurentPoly) -> Result<Rational> {
    if !delta.is_symmetric() {
        return Err(Error::Invalid(format!("{delta} is not symmetric")));
    }
    let sum: BigInt = delta.terms().map(|(e, c)| c * BigInt::from(e) * BigInt::from(e - 1)).sum();
    Ok(Rational::from_integer(sum))
}

/// `Δ = (-1)^k + Σ_i (-1)^{k-i} (T^{n_i} + T^{-n_i})` with `0 < n_1 < ... < n_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LSpaceForm {
    pub exponents: Vec<i64>,
}

impl LSpaceForm {
    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> i64 {
        self.exponents.last().copied().unwrap_or(0)
    }

    pub fn polynomial(&self) -> LaurentPoly {
        let k = self.k();
        let sign = |j: usize| if j.is_multiple_of(2) { 1 } else { -1 };
        let mut p = LaurentPoly::monomial(0, sign(k));
        for (i, &n) in self.exponents.iter().enumerate() {
            let c = sign(k - (i + 1));
            p = p + LaurentPoly::from_terms([(n, c), (-n, c)]);
        }
        p
    }
}

pub fn lspace_form(delta: &LaurentPoly) -> Option<LSpaceForm> {
    if !delta.is_symmetric() {
        return None;
    }
    let exponents: Vec<i64> = delta.terms().map(|(e, _)| e).filter(|&e| e > 0).collect();
    let form = LSpaceForm { exponents };
    (form.polynomial() == *delta).then_some(form)
}

/// Fibredness as the library records it: L-space form or monic polynomial.
/// A derived flag, not a proof.
pub fn fibred_flag(delta: &LaurentPoly) -> bool {
    lspace_form(delta).is_some() || delta.leading_coeff().is_some_and(|c| c.abs().is_one())
}

/// A factorisation `Δ = Δ_companion(T^w)·Δ_pattern(T)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SatelliteMatch {
    pub pattern: (i64, i64),
    pub companion: (i64, i64),
    pub w: i64,
}

/// All positive torus pattern/companion pairs with `Δ = Δ_{T(c,d)}(T^b)·Δ_{T(a,b)}(T)`,
/// both factors nontrivial and `a, b, c, d ≤ bound`. Default bound `2·deg + 1`.
pub fn satellite_factorization_search(delta: &LaurentPoly, bound: Option<i64>) -> Vec<SatelliteMatch> {
    let deg = delta.degree();
    let bound = bound.unwrap_or(2 * deg + 1);
    let mut out = Vec::new();
    for b in 2..=bound {
        for c in 3..=bound {
            for d in 2..c {
                if gcd(c, d) != 1 {
                    continue;
                }
                let companion = TorusKnot { r: c, s: d };
                let rest = deg - b * companion.genus();
                // degree of the pattern factor is its genus (a-1)(b-1)/2 ≥ 1
                if rest < 1 {
                    break;
                }
                if (2 * rest) % (b - 1) != 0 {
                    continue;
                }
                let a = 2 * rest / (b - 1) + 1;
                if a > bound || gcd(a, b) != 1 {
                    continue;
                }
                let pattern = TorusKnot::new(a, b).expect("coprime");
                if &companion.alexander().substitute_power(b) * &pattern.alexander() == *delta {
                    out.push(SatelliteMatch { pattern: (a, b), companion: (c, d), w: b });
                }
            }
        }
    }
    out
}

/// `(r²-1)(s²-1)/12`, the torus-knot value of `Δ''(1)`.
pub fn torus_second_deriv(r: i64, s: i64) -> Rational {
    int((r * r - 1) * (s * s - 1)) / int(12)
}
