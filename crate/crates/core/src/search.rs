//! Enumeration of distinct torus-knot (and cable) lens surgeries that
//! give the same oriented lens space.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, mod_inverse, Slope};
use crate::classify::{classify_description, compare_descriptions, SurgeryClass, SurgeryDescription, Verdict};
use crate::knots::{KnotDesc, TorusKnot};
use crate::lens::LensSpace;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_p: i64,
    pub include_cables: bool,
    /// Largest torus parameter `r` considered (knots and companions).
    pub torus_bound: Option<i64>,
}

impl SearchBounds {
    pub fn new(max_p: i64) -> Self {
        SearchBounds { max_p, include_cables: false, torus_bound: None }
    }

    pub fn with_cables(mut self, on: bool) -> Self {
        self.include_cables = on;
        self
    }

    pub fn with_torus_bound(mut self, bound: Option<i64>) -> Self {
        self.torus_bound = bound;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coincidence {
    pub p: i64,
    pub slope: Slope,
    pub left: SurgeryDescription,
    pub right: SurgeryDescription,
    pub lens: LensSpace,
    pub verdict: Verdict,
}

/// `(p, min(q, q⁻¹ mod p))` identifies the oriented lens space.
fn lens_key(l: &LensSpace) -> (i64, i64) {
    let inv = mod_inverse(l.q(), l.p()).unwrap_or(l.q());
    (l.p(), l.q().min(inv))
}

fn torus_pairs(max_rs: i64, bound: Option<i64>) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for s in 2.. {
        if s * (s + 1) > max_rs {
            break;
        }
        for r in s + 1..=max_rs / s {
            if bound.is_some_and(|b| r > b) {
                break;
            }
            if gcd(r, s) == 1 {
                out.push((r, s));
            }
        }
    }
    out
}

/// Lens slopes `p/q` with `p = q·n ± 1 ≤ max_p`, `p ≥ 1`.
fn lens_slopes(n: i64, q_scale: i64, max_p: i64) -> impl Iterator<Item = (i64, i64)> {
    (1..)
        .map(move |q| q * q_scale)
        .take_while(move |&q| q * n - 1 <= max_p)
        .flat_map(move |q| [(q * n - 1, q), (q * n + 1, q)])
        .filter(move |&(p, _)| (1..=max_p).contains(&p))
}

fn descriptions(bounds: &SearchBounds) -> Vec<SurgeryDescription> {
    let pairs = torus_pairs(bounds.max_p + 1, bounds.torus_bound);
    let mut out: Vec<SurgeryDescription> = pairs
        .par_iter()
        .flat_map_iter(|&(r, s)| {
            let knot = KnotDesc::Torus(TorusKnot::new(r, s).unwrap());
            lens_slopes(r * s, 1, bounds.max_p).map(move |(p, q)| SurgeryDescription::new(knot.clone(), Slope::new(p, q).unwrap()))
        })
        .collect();
    if bounds.include_cables {
        // Cable C(a,b;T(c,d)) at p/q is a lens surgery iff |p - qab| = 1 and
        // p/(qb²) is a lens slope of the companion.
        let cables: Vec<SurgeryDescription> = torus_pairs((bounds.max_p + 1) / 4, bounds.torus_bound)
            .par_iter()
            .flat_map_iter(|&(c, d)| {
                let companion = TorusKnot::new(c, d).unwrap();
                (2..)
                    .take_while(move |b| b * b * c * d - 1 <= bounds.max_p)
                    .flat_map(move |b| {
                        lens_slopes(c * d, b * b, bounds.max_p).flat_map(move |(p, qb2)| {
                            let q = qb2 / (b * b);
                            [-1, 1].into_iter().filter_map(move |e| {
                                let num = p - e;
                                if num % (q * b) != 0 {
                                    return None;
                                }
                                let a = num / (q * b);
                                if gcd(a, b) != 1 {
                                    return None;
                                }
                                Some(SurgeryDescription::new(KnotDesc::cable(a, b, companion).ok()?, Slope::new(p, q).ok()?))
                            })
                        })
                    })
            })
            .collect();
        out.extend(cables);
    }
    out
}

/// Description, its display form, and its lens space.
type Member = (String, SurgeryDescription, LensSpace);

/// All pairs of distinct descriptions with `p ≤ max_p` yielding the same
/// oriented lens space, sorted by `p` then by description.
pub fn search_coincidences(bounds: SearchBounds) -> Result<Vec<Coincidence>> {
    if bounds.max_p < 1 || bounds.torus_bound.is_some_and(|b| b < 3) {
        return Err(Error::Invalid("search bounds must be positive".into()));
    }
    let classified: Vec<(SurgeryDescription, LensSpace)> = descriptions(&bounds)
        .into_par_iter()
        .map(|d| match classify_description(&d)? {
            Some(SurgeryClass::Lens { lens }) => Ok(Some((d, lens))),
            _ => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut groups: BTreeMap<(Slope, (i64, i64)), Vec<Member>> = BTreeMap::new();
    for (d, lens) in classified {
        groups.entry((d.slope, lens_key(&lens))).or_default().push((d.to_string(), d, lens));
    }
    let mut out = groups
        .into_par_iter()
        .map(|(_, mut members)| {
            members.sort_by(|a, b| a.0.cmp(&b.0));
            members.dedup_by(|a, b| a.0 == b.0);
            let mut found = Vec::new();
            for (i, (_, d1, lens)) in members.iter().enumerate() {
                for (_, d2, _) in &members[i + 1..] {
                    let verdict = compare_descriptions(d1, d2)?;
                    if verdict.is_homeo() {
                        found.push(Coincidence { p: d1.slope.p(), slope: d1.slope, left: d1.clone(), right: d2.clone(), lens: *lens, verdict });
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    out.sort_by_cached_key(|c| (c.p, c.left.to_string(), c.right.to_string()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(found: &[Coincidence], p: i64, a: &str, b: &str) -> bool {
        found.iter().any(|c| {
            let (l, r) = (c.left.knot.to_string(), c.right.knot.to_string());
            c.p == p && ((l == a && r == b) || (l == b && r == a))
        })
    }

    #[test]
    fn finds_family_members() {
        let found = search_coincidences(SearchBounds::new(100)).unwrap();
        assert!(has(&found, 21, "T(5,4)", "T(11,2)"));
        assert!(has(&found, 56, "T(11,5)", "T(19,3)"));
        assert!(found.windows(2).all(|w| w[0].p <= w[1].p));
        assert!(found.iter().all(|c| c.verdict.is_homeo() && c.left != c.right));
    }

    #[test]
    fn bound_is_respected() {
        let found = search_coincidences(SearchBounds::new(20)).unwrap();
        assert!(found.iter().all(|c| c.p <= 20));
        assert!(search_coincidences(SearchBounds::new(0)).is_err());
    }

    #[test]
    fn finds_cable_pair() {
        let found = search_coincidences(SearchBounds::new(119).with_cables(true)).unwrap();
        assert!(has(&found, 119, "T(24,5)", "C(59,2;T(6,5))"));
        let plain = search_coincidences(SearchBounds::new(119)).unwrap();
        assert!(!has(&plain, 119, "T(24,5)", "C(59,2;T(6,5))"));
    }

    #[test]
    fn deterministic() {
        let b = SearchBounds::new(150).with_cables(true);
        assert_eq!(search_coincidences(b).unwrap(), search_coincidences(b).unwrap());
    }
}
