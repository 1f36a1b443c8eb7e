//! Classical identification of torus-knot and cable surgeries, and the
//! three-valued comparison of two surgery descriptions.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::arith::{cyclotomic_norm, fmt_rat, gcd, rat, Rational, Slope};
use crate::knots::{second_deriv_at_1, KnotDesc, TorusKnot};
use crate::lens::{casson_walker_lens, lens_oriented_homeo, DProfile, LensSpace};
use crate::surgery::{affine_matchings, hf_red_graded, surgery_d_invariants};
use crate::{Error, Result};

/// `S³_{p/q}(K)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurgeryDescription {
    pub knot: KnotDesc,
    pub slope: Slope,
}

impl SurgeryDescription {
    pub fn new(knot: KnotDesc, slope: Slope) -> Self {
        SurgeryDescription { knot, slope }
    }

    /// `S³_{p/q}(K) = -S³_{-p/q}(mirror K)`.
    pub fn mirrored(&self) -> Self {
        SurgeryDescription { knot: self.knot.mirror(), slope: self.slope.neg() }
    }
}

impl fmt::Display for SurgeryDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S3_{}({})", self.slope, self.knot)
    }
}

impl Serialize for SurgeryDescription {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "class")]
pub enum SurgeryClass {
    /// `S³_{rs}(T(r,s))`, a connected sum of two lens spaces.
    Reducible { r: i64, s: i64 },
    Lens { lens: LensSpace },
    /// Seifert fibred over `S²` with three exceptional fibres; `twist = p - qrs`.
    Sfs { cone_orders: [i64; 3], twist: i64 },
}

impl SurgeryClass {
    pub fn kind(&self) -> &'static str {
        match self {
            SurgeryClass::Reducible { .. } => "reducible",
            SurgeryClass::Lens { .. } => "lens",
            SurgeryClass::Sfs { .. } => "seifert",
        }
    }
}

impl fmt::Display for SurgeryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryClass::Reducible { r, s } => write!(f, "reducible L({r},{s}) # L({s},{r})"),
            SurgeryClass::Lens { lens } => write!(f, "{lens}"),
            SurgeryClass::Sfs { cone_orders: [a, b, c], twist } => write!(f, "S2({a},{b},{c}) twist {twist}"),
        }
    }
}

/// Lens space `S³_{p/q}(unknot)` with orientation; `p ≠ 0`.
fn unknot_surgery(p: i64, q: i64) -> Result<LensSpace> {
    match p {
        0 => Err(Error::ZeroSurgery),
        p if p > 0 => LensSpace::new(p, q),
        p => LensSpace::new(-p, -q),
    }
}

/// Moser: `rs` slope is reducible, `|p - qrs| = 1` gives `L(p, qs²)`,
/// otherwise a Seifert space with cone orders `|r|, |s|, |p - qrs|`.
pub fn classify_torus_surgery(t: TorusKnot, slope: Slope) -> Result<SurgeryClass> {
    let (p, q) = (slope.p(), slope.q());
    if t.is_unknot() {
        return Ok(SurgeryClass::Lens { lens: unknot_surgery(p, q)? });
    }
    let (r, s) = (t.r(), t.s());
    let twist = p - q * r * s;
    if twist == 0 {
        return Ok(SurgeryClass::Reducible { r, s });
    }
    if twist.abs() == 1 {
        return Ok(SurgeryClass::Lens { lens: unknot_surgery(p, q * s * s)? });
    }
    let mut cone_orders = [r.abs(), s.abs(), twist.abs()];
    cone_orders.sort();
    Ok(SurgeryClass::Sfs { cone_orders, twist })
}

/// `S³_{p/q}(C(a,b;K)) = S³_{p/(qb²)}(K)` when `|p - qab| = 1`.
pub fn cable_slope_transfer(a: i64, b: i64, slope: Slope) -> Result<Option<Slope>> {
    if b < 2 || gcd(a, b) != 1 {
        return Err(Error::InvalidKnot(format!("cable C({a},{b})")));
    }
    let (p, q) = (slope.p(), slope.q());
    if (p - q * a * b).abs() != 1 {
        return Ok(None);
    }
    let q2 = q * b * b;
    if gcd(p, q2) != 1 {
        return Err(Error::InconsistentTransfer { p, q: q2 });
    }
    Ok(Some(Slope::new(p, q2)?))
}

/// Classical class of a description, if the library can identify it.
pub fn classify_description(d: &SurgeryDescription) -> Result<Option<SurgeryClass>> {
    match &d.knot {
        KnotDesc::Torus(t) => classify_torus_surgery(*t, d.slope).map(Some),
        KnotDesc::Cable { a, b, companion } => match cable_slope_transfer(*a, *b, d.slope)? {
            Some(s) => classify_torus_surgery(*companion, s).map(Some),
            None => Ok(None),
        },
        KnotDesc::Explicit(_) => Ok(None),
    }
}

/// `λ(S³_{p/q}(K)) = λ(L(p,q)) + (q/2p)·Δ''(1)`.
pub fn casson_walker_surgery(d: &SurgeryDescription) -> Result<Rational> {
    let (p, q) = (d.slope.p(), d.slope.q());
    let lens = unknot_surgery(p, q)?;
    let dd = second_deriv_at_1(&d.knot.alexander())?;
    Ok(casson_walker_lens(lens.p(), lens.q())? + rat(q, 2 * p) * dd)
}

/// Equality of Casson–Walker invariants; numerators must agree.
pub fn cw_obstruction(d1: &SurgeryDescription, d2: &SurgeryDescription) -> Result<bool> {
    if d1.slope.p() != d2.slope.p() {
        return Err(Error::NumeratorMismatch(d1.slope.p(), d2.slope.p()));
    }
    Ok(casson_walker_surgery(d1)? == casson_walker_surgery(d2)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    ProvablyHomeo { reason: String },
    ProvablyDistinct { invariant: String, left: String, right: String },
    Consistent { matched: Vec<String> },
}

impl Verdict {
    fn distinct(invariant: &str, left: impl fmt::Display, right: impl fmt::Display) -> Self {
        Verdict::ProvablyDistinct { invariant: invariant.into(), left: left.to_string(), right: right.to_string() }
    }

    pub fn is_homeo(&self) -> bool {
        matches!(self, Verdict::ProvablyHomeo { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::ProvablyDistinct { .. })
    }

    fn swapped(self) -> Self {
        match self {
            Verdict::ProvablyDistinct { invariant, left, right } => {
                Verdict::ProvablyDistinct { invariant, left: right, right: left }
            }
            v => v,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ProvablyHomeo { reason } => write!(f, "homeomorphic: {reason}"),
            Verdict::ProvablyDistinct { invariant, left, right } => write!(f, "distinct: {invariant} {left} vs {right}"),
            Verdict::Consistent { matched } => write!(f, "consistent: {}", matched.join(", ")),
        }
    }
}

/// `d`-profile of any description with `p ≠ 0`; negative slopes via the mirror.
pub fn signed_d_profile(d: &SurgeryDescription) -> Result<DProfile> {
    match d.slope.p() {
        0 => Err(Error::ZeroSurgery),
        p if p > 0 => surgery_d_invariants(&d.knot, d.slope),
        _ => Ok(surgery_d_invariants(&d.knot.mirror(), d.slope.neg())?.negated()),
    }
}

fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::RequiresExplicitComplex) => Ok(None),
        Err(e) => Err(e),
    }
}

fn describe(p: &DProfile) -> String {
    let mut v: Vec<String> = p.values().iter().map(fmt_rat).collect();
    v.truncate(8);
    format!("[{}{}]", v.join(", "), if p.len() > 8 { ", ..." } else { "" })
}

/// Oriented comparison of `S³_{p/q}(K)` and `S³_{p'/q'}(K')`.
///
/// Homeomorphism is claimed only for identical descriptions or oriented
/// homeomorphic lens spaces; distinctness needs a differing invariant.
pub fn compare_descriptions(d1: &SurgeryDescription, d2: &SurgeryDescription) -> Result<Verdict> {
    let (p1, p2) = (d1.slope.p(), d2.slope.p());
    if p1 == 0 || p2 == 0 {
        return Err(Error::ZeroSurgery);
    }
    if d1 == d2 {
        return Ok(Verdict::ProvablyHomeo { reason: "identical descriptions".into() });
    }
    if p1.abs() != p2.abs() {
        return Ok(Verdict::distinct("|H_1|", p1.abs(), p2.abs()));
    }
    if p1 < 0 && p2 < 0 {
        return compare_descriptions(&d1.mirrored(), &d2.mirrored());
    }
    let mut matched = vec!["|H_1|".to_string()];

    if let (Some(c1), Some(c2)) = (classify_description(d1)?, classify_description(d2)?) {
        match (&c1, &c2) {
            (SurgeryClass::Lens { lens: a }, SurgeryClass::Lens { lens: b }) => {
                return Ok(if lens_oriented_homeo(a, b) {
                    Verdict::ProvablyHomeo { reason: format!("oriented lens spaces {a} and {b}") }
                } else {
                    Verdict::distinct("oriented lens space", a, b)
                });
            }
            (SurgeryClass::Sfs { cone_orders: x, .. }, SurgeryClass::Sfs { cone_orders: y, .. }) if x != y => {
                return Ok(Verdict::distinct("cone orders", format!("{x:?}"), format!("{y:?}")));
            }
            (SurgeryClass::Reducible { r, s }, SurgeryClass::Reducible { r: r2, s: s2 }) => {
                let (mut x, mut y) = ([r.abs(), s.abs()], [r2.abs(), s2.abs()]);
                x.sort();
                y.sort();
                if x != y {
                    return Ok(Verdict::distinct("summand orders", format!("{x:?}"), format!("{y:?}")));
                }
            }
            _ if c1.kind() != c2.kind() => return Ok(Verdict::distinct("surgery class", c1.kind(), c2.kind())),
            _ => {}
        }
        matched.push("surgery class".into());
    }

    let (l1, l2) = (casson_walker_surgery(d1)?, casson_walker_surgery(d2)?);
    if l1 != l2 {
        return Ok(Verdict::distinct("Casson-Walker", fmt_rat(&l1), fmt_rat(&l2)));
    }
    matched.push("Casson-Walker".into());

    if let (Some(a), Some(b)) = (optional(signed_d_profile(d1))?, optional(signed_d_profile(d2))?) {
        if affine_matchings(a.values(), b.values()).is_empty() {
            return Ok(Verdict::distinct("d-invariants", describe(&a), describe(&b)));
        }
        matched.push("d-invariants".into());
    }

    if p1 > 0 && p2 > 0 {
        if let (Some(a), Some(b)) = (optional(hf_red_graded(&d1.knot, d1.slope))?, optional(hf_red_graded(&d2.knot, d2.slope))?) {
            if affine_matchings(&a.groups, &b.groups).is_empty() {
                return Ok(Verdict::distinct(
                    "graded HF_red",
                    format!("total rank {}", a.total_reduced_dim()),
                    format!("total rank {}", b.total_reduced_dim()),
                ));
            }
            matched.push("graded HF_red".into());
        }
    }
    Ok(Verdict::Consistent { matched })
}

/// Same as [`compare_descriptions`] with the arguments swapped back, so
/// witnesses read left-to-right. Used to check order independence.
pub fn compare_swapped(d1: &SurgeryDescription, d2: &SurgeryDescription) -> Result<Verdict> {
    Ok(compare_descriptions(d2, d1)?.swapped())
}

/// `|H_1|` of the `j`-fold branched cover, or of its filling with `p̃`.
pub fn branched_cover_h1(knot: &KnotDesc, j: u64, p_tilde: Option<i64>) -> Result<BigInt> {
    let norm = cyclotomic_norm(&knot.alexander(), j)?;
    Ok(match p_tilde {
        Some(p) => norm * BigInt::from(p.abs()),
        None => norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn desc(k: &str, s: &str) -> SurgeryDescription {
        SurgeryDescription::new(k.parse().unwrap(), s.parse().unwrap())
    }

    fn torus(r: i64, s: i64) -> TorusKnot {
        TorusKnot::new(r, s).unwrap()
    }

    fn lens(p: i64, q: i64) -> SurgeryClass {
        SurgeryClass::Lens { lens: LensSpace::new(p, q).unwrap() }
    }

    #[test]
    fn moser_examples() {
        let s = |x: &str| x.parse::<Slope>().unwrap();
        assert_eq!(classify_torus_surgery(torus(5, 4), s("21")).unwrap(), lens(21, 16));
        assert_eq!(classify_torus_surgery(torus(11, 2), s("21")).unwrap(), lens(21, 4));
        assert_eq!(classify_torus_surgery(torus(5, 2), s("10")).unwrap(), SurgeryClass::Reducible { r: 5, s: 2 });
        assert_eq!(
            classify_torus_surgery(torus(5, 2), s("17/2")).unwrap(),
            SurgeryClass::Sfs { cone_orders: [2, 3, 5], twist: -3 }
        );
        assert_eq!(classify_torus_surgery(TorusKnot::UNKNOT, s("-5/2")).unwrap(), lens(5, 3));
        assert_eq!(classify_torus_surgery(torus(3, -2), s("-5")).unwrap(), lens(5, 1));
        assert!(classify_torus_surgery(TorusKnot::UNKNOT, s("0")).is_err());
    }

    #[test]
    fn cable_transfer_examples() {
        let s = |x: &str| x.parse::<Slope>().unwrap();
        assert_eq!(cable_slope_transfer(59, 2, s("119")).unwrap(), Some(s("119/4")));
        assert_eq!(cable_slope_transfer(349, 2, s("697")).unwrap(), Some(s("697/4")));
        assert_eq!(cable_slope_transfer(59, 2, s("121")).unwrap(), None);
        assert!(cable_slope_transfer(4, 2, s("9")).is_err());
    }

    #[test]
    fn casson_walker_examples() {
        assert_eq!(casson_walker_surgery(&desc("T(3,2)", "1")).unwrap(), int(1));
        assert!(cw_obstruction(&desc("T(5,4)", "21"), &desc("T(11,2)", "21")).unwrap());
        assert!(cw_obstruction(&desc("T(24,5)", "119"), &desc("C(59,2;T(6,5))", "119")).unwrap());
        assert!(cw_obstruction(&desc("T(5,2)", "19/2"), &desc("T(5,2)", "19/2")).unwrap());
        assert_eq!(
            cw_obstruction(&desc("T(5,2)", "19/2"), &desc("T(5,2)", "21/2")),
            Err(Error::NumeratorMismatch(19, 21))
        );
    }

    #[test]
    fn comparison_examples() {
        let v = compare_descriptions(&desc("T(5,4)", "21"), &desc("T(11,2)", "21")).unwrap();
        assert!(v.is_homeo(), "{v}");
        let v = compare_descriptions(&desc("T(5,2)", "9"), &desc("T(3,2)", "9")).unwrap();
        assert_eq!(v, Verdict::distinct("surgery class", "lens", "seifert"));
        let v = compare_descriptions(&desc("T(5,2)", "19/2"), &desc("T(5,2)", "19/2")).unwrap();
        assert!(v.is_homeo());
        let v = compare_descriptions(&desc("T(5,2)", "7"), &desc("T(5,-2)", "7")).unwrap();
        assert!(v.is_distinct(), "{v}");
        assert_eq!(compare_descriptions(&desc("T(5,2)", "0"), &desc("T(3,2)", "0")), Err(Error::ZeroSurgery));
        let v = compare_descriptions(&desc("T(5,2)", "7"), &desc("T(5,2)", "9")).unwrap();
        assert_eq!(v, Verdict::distinct("|H_1|", 7, 9));
    }

    #[test]
    fn mirror_routing() {
        for (a, b, s) in [("T(5,4)", "T(11,2)", "21"), ("T(5,2)", "T(3,2)", "9"), ("T(5,2)", "T(5,-2)", "7"), ("T(7,2)", "T(5,3)", "23/2")] {
            let d1 = desc(a, s);
            let d2 = desc(b, s);
            let neg1 = d1.mirrored();
            let neg2 = d2.mirrored();
            assert_eq!(compare_descriptions(&neg1, &neg2).unwrap(), compare_descriptions(&d1, &d2).unwrap());
        }
    }

    #[test]
    fn distinct_is_symmetric() {
        let pairs = [
            (desc("T(5,2)", "9"), desc("T(3,2)", "9")),
            (desc("T(5,2)", "7"), desc("T(5,-2)", "7")),
            (desc("T(7,2)", "11"), desc("T(5,3)", "11")),
            (desc("T(5,2)", "17/2"), desc("T(7,3)", "17/2")),
        ];
        for (a, b) in pairs {
            let v = compare_descriptions(&a, &b).unwrap();
            assert!(v.is_distinct(), "{a} vs {b}: {v}");
            assert_eq!(compare_swapped(&a, &b).unwrap(), v);
        }
    }

    #[test]
    fn branched_covers() {
        let t52: KnotDesc = "T(5,2)".parse().unwrap();
        assert_eq!(branched_cover_h1(&t52, 2, None).unwrap(), BigInt::from(5));
        assert_eq!(branched_cover_h1(&t52, 2, Some(-7)).unwrap(), BigInt::from(35));
        assert_eq!(branched_cover_h1(&t52, 3, Some(4)).unwrap(), BigInt::from(4));
        assert_eq!(branched_cover_h1(&t52, 10, None), Err(Error::RootOfUnity(10)));
    }
}
