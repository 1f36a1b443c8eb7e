use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{gcd, rat, Rational};
use crate::{Error, Result};

/// A nontrivial surgery slope `p/q` with `gcd(p, q) = 1` and `q ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// Reduces `p/q` and normalises the sign onto `p`. Fails for `q = 0`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Invalid("q = 0 is the trivial slope".into()));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn integer(p: i64) -> Self {
        Slope { p, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn value(&self) -> Rational {
        rat(self.p, self.q)
    }

    pub fn neg(&self) -> Self {
        Slope { p: -self.p, q: self.q }
    }

    pub fn is_positive(&self) -> bool {
        self.p > 0
    }

    pub fn is_integral(&self) -> bool {
        self.q == 1
    }

}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a slope: {s:?}"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            ),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A slope or the meridian `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlopeOrTrivial {
    Trivial,
    Slope(Slope),
}

impl SlopeOrTrivial {
    fn coords(&self) -> (i128, i128) {
        match self {
            SlopeOrTrivial::Trivial => (1, 0),
            SlopeOrTrivial::Slope(s) => (s.p as i128, s.q as i128),
        }
    }
}

impl From<Slope> for SlopeOrTrivial {
    fn from(s: Slope) -> Self {
        SlopeOrTrivial::Slope(s)
    }
}

/// Geometric intersection number `|p·n − q·m|` of two slopes.
pub fn slope_distance(a: SlopeOrTrivial, b: SlopeOrTrivial) -> u64 {
    let (p, q) = a.coords();
    let (m, n) = b.coords();
    (p * n - q * m).unsigned_abs() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> SlopeOrTrivial {
        Slope::new(p, q).unwrap().into()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(slope_distance(s(21, 1), s(20, 1)), 1);
        assert_eq!(slope_distance(s(19, 2), s(19, 2)), 0);
        assert_eq!(slope_distance(s(119, 1), s(118, 1)), 1);
        assert_eq!(slope_distance(SlopeOrTrivial::Trivial, s(7, 3)), 3);
        assert_eq!(slope_distance(SlopeOrTrivial::Trivial, SlopeOrTrivial::Trivial), 0);
        assert_eq!(slope_distance(s(0, 1), SlopeOrTrivial::Trivial), 1);
    }

    #[test]
    fn parsing_reduces_and_normalises_sign() {
        let sl: Slope = "10/-4".parse().unwrap();
        assert_eq!((sl.p(), sl.q()), (-5, 2));
        assert_eq!("7".parse::<Slope>().unwrap(), Slope::integer(7));
        assert!("1/0".parse::<Slope>().is_err());
        assert!("x".parse::<Slope>().is_err());
    }

    #[test]
    fn distance_is_symmetric_and_zero_only_on_equal() {
        let slopes: Vec<_> = (-6..=6)
            .flat_map(|p| (1..=4).map(move |q| (p, q)))
            .filter(|&(p, q)| gcd(p, q) == 1)
            .map(|(p, q)| s(p, q))
            .collect();
        for &a in &slopes {
            for &b in &slopes {
                assert_eq!(slope_distance(a, b), slope_distance(b, a));
                assert_eq!(slope_distance(a, b) == 0, a == b);
            }
        }
    }
}
