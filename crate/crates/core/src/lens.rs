//! Oriented lens spaces `L(p,q)`, oriented as `p/q` surgery on the unknot.

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;
use std::sync::{Arc, OnceLock, RwLock};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::{dedekind_sum, fmt_rat, gcd, int, modulo, rat, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    /// `q` is reduced into `[0, p)`; `L(1,0)` is `S³`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 {
            return Err(Error::NonPositiveModulus(p));
        }
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime(p, q));
        }
        Ok(LensSpace { p, q: modulo(q, p) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `-L(p,q) = L(p,-q)`.
    pub fn reverse(&self) -> Self {
        LensSpace { p: self.p, q: modulo(-self.q, self.p) }
    }

    pub fn d_invariants(&self) -> Arc<DProfile> {
        lens_d_invariants(self.p, self.q).expect("validated lens space")
    }

    pub fn casson_walker(&self) -> Rational {
        casson_walker_lens(self.p, self.q).expect("validated lens space")
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

impl Serialize for LensSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Correction terms indexed by `i ∈ Z/p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DProfile(Vec<Rational>);

impl DProfile {
    pub fn new(values: Vec<Rational>) -> Self {
        DProfile(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn negated(&self) -> DProfile {
        DProfile(self.0.iter().map(|x| -x).collect())
    }
}

impl Index<usize> for DProfile {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Serialize for DProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (i, v) in self.0.iter().enumerate() {
            m.serialize_entry(&i.to_string(), &fmt_rat(v))?;
        }
        m.end()
    }
}

type Memo = RwLock<HashMap<(i64, i64), Arc<DProfile>>>;

fn cached(memo: &Memo, key: (i64, i64), build: impl FnOnce() -> DProfile) -> Arc<DProfile> {
    if let Some(hit) = memo.read().unwrap().get(&key) {
        return hit.clone();
    }
    let prof = Arc::new(build());
    memo.write().unwrap().entry(key).or_insert(prof).clone()
}

/// `d(-L(p,q), i) = 1/4 - (2i+1-p-q)²/(4pq) - d(-L(q, p mod q), i mod q)`,
/// with `d(-L(1,0), 0) = 0`. Expects `0 ≤ q < p` coprime.
fn reversed_profile(p: i64, q: i64) -> Arc<DProfile> {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    cached(MEMO.get_or_init(Default::default), (p, q), || {
        if p == 1 {
            return DProfile(vec![int(0)]);
        }
        let inner = reversed_profile(q, p % q);
        let quarter = rat(1, 4);
        let denom = int(4 * p * q);
        DProfile(
            (0..p)
                .map(|i| {
                    let c = 2 * i + 1 - p - q;
                    &quarter - int(c * c) / &denom - &inner[(i % q) as usize]
                })
                .collect(),
        )
    })
}

/// `d(L(p,q), i)` for `i = 0 .. p-1`, memoised per `(p, q mod p)`.
pub fn lens_d_invariants(p: i64, q: i64) -> Result<Arc<DProfile>> {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let l = LensSpace::new(p, q)?;
    Ok(cached(MEMO.get_or_init(Default::default), (l.p, l.q), || reversed_profile(l.p, l.q).negated()))
}

/// Orientation-preserving homeomorphism: `p` equal and `q' ≡ q^{±1} (mod p)`.
pub fn lens_oriented_homeo(a: &LensSpace, b: &LensSpace) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = a.p as i128;
    a.q == b.q || (a.q as i128 * b.q as i128).rem_euclid(p) == 1 % p
}

/// `λ(L(p,q)) = -s(q,p)/2`, normalised so that `λ(S³_{+1}(T(3,2))) = 1`.
pub fn casson_walker_lens(p: i64, q: i64) -> Result<Rational> {
    LensSpace::new(p, q)?;
    Ok(-dedekind_sum(q, p)? / int(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(p: i64, q: i64) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(lens_d_invariants(1, 0).unwrap().values(), &[int(0)]);
        for p in 1..=50 {
            let prof = lens_d_invariants(p, 1).unwrap();
            for i in 0..p {
                assert_eq!(prof[i as usize], rat(-1, 4) + int((2 * i - p) * (2 * i - p)) / int(4 * p), "L({p},1) i={i}");
            }
        }
        for p in (3..=49).step_by(2) {
            let prof = lens_d_invariants(p, 2).unwrap();
            for i in 0..p {
                let base = rat(-1, 4) + int((2 * i - p - 1) * (2 * i - p - 1)) / int(8 * p);
                let expect = if i % 2 == 0 { base - rat(1, 4) } else { base + rat(1, 4) };
                assert_eq!(prof[i as usize], expect, "L({p},2) i={i}");
            }
        }
    }

    #[test]
    fn errors_and_reduction() {
        assert!(lens_d_invariants(6, 4).is_err());
        assert!(LensSpace::new(0, 1).is_err());
        assert_eq!(l(21, -5), l(21, 16));
        assert_eq!(lens_d_invariants(7, 9).unwrap(), lens_d_invariants(7, 2).unwrap());
    }

    #[test]
    fn homeomorphism_examples() {
        assert!(lens_oriented_homeo(&l(21, 16), &l(21, 4)));
        assert!(lens_oriented_homeo(&l(119, 100), &l(119, 25)));
        assert!(lens_oriented_homeo(&l(13, 5), &l(13, 5)));
        assert!(lens_oriented_homeo(&l(1, 0), &l(1, 0)));
        assert!(!lens_oriented_homeo(&l(7, 1), &l(7, 2)));
        assert!(!lens_oriented_homeo(&l(7, 1), &l(8, 1)));
        // orientation matters: L(5,1) and L(5,4) = -L(5,1)
        assert!(!lens_oriented_homeo(&l(5, 1), &l(5, 4)));
    }

    #[test]
    fn conjugation_and_orientation_reversal() {
        for p in 2..=40 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let d = lens_d_invariants(p, q).unwrap();
                // d(i) = d(q - 1 - i)
                for i in 0..p {
                    assert_eq!(d[i as usize], d[modulo(q - 1 - i, p) as usize], "L({p},{q}) i={i}");
                }
                let mut a: Vec<_> = d.negated().values().to_vec();
                let mut b: Vec<_> = lens_d_invariants(p, p - q).unwrap().values().to_vec();
                a.sort();
                b.sort();
                assert_eq!(a, b, "L({p},{q}) vs L({p},{})", p - q);
            }
        }
    }

    #[test]
    fn casson_walker_values() {
        assert_eq!(casson_walker_lens(1, 0).unwrap(), int(0));
        assert_eq!(casson_walker_lens(21, 16).unwrap(), casson_walker_lens(21, 4).unwrap());
        assert_eq!(casson_walker_lens(119, 1).unwrap() - casson_walker_lens(119, 4).unwrap(), rat(-435, 119));
        // λ(S³_{+1}(T(3,2))) = λ(L(1,1)) + (1/2)·Δ''(1) with Δ''(1) = 2
        assert_eq!(casson_walker_lens(1, 1).unwrap() + rat(1, 2) * int(2), int(1));
    }

    #[test]
    fn torus_lens_functional_equation() {
        for r in 3..=40 {
            for s in 2..r {
                if gcd(r, s) != 1 || r * s > 40 {
                    continue;
                }
                let dd = int((r * r - 1) * (s * s - 1)) / int(12);
                for q in 1..=500 {
                    for p in [q * r * s - 1, q * r * s + 1] {
                        if !(1..=500).contains(&p) || gcd(p, q) != 1 {
                            continue;
                        }
                        let lhs = casson_walker_lens(p, q * s * s).unwrap();
                        let rhs = casson_walker_lens(p, q).unwrap() + rat(q, 2 * p) * &dd;
                        assert_eq!(lhs, rhs, "T({r},{s}) at {p}/{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn concurrent_memo_is_consistent() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || lens_d_invariants(97, 1 + t * 3).unwrap()))
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            let fresh = reversed_profile(97, 1 + t as i64 * 3).negated();
            assert_eq!(*h.join().unwrap(), fresh);
        }
    }
}
