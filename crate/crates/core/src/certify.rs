//! Region certificates: exact rational predicates with replayable trails.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{fmt_rat, gcd, int, rat, LaurentPoly, Rational, Slope};
use crate::classify::{classify_torus_surgery, SurgeryClass};
use crate::knots::{KnotDesc, TorusKnot};
use crate::lens::{lens_oriented_homeo, LensSpace};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Gt(Rational, Rational),
    Ge(Rational, Rational),
    Lt(Rational, Rational),
    Le(Rational, Rational),
    Eq(Rational, Rational),
    Member(Rational, Vec<Rational>),
    Flag(bool),
}

impl Check {
    pub fn eval(&self) -> bool {
        match self {
            Check::Gt(a, b) => a > b,
            Check::Ge(a, b) => a >= b,
            Check::Lt(a, b) => a < b,
            Check::Le(a, b) => a <= b,
            Check::Eq(a, b) => a == b,
            Check::Member(a, set) => set.contains(a),
            Check::Flag(f) => *f,
        }
    }

    fn parts(&self) -> (&'static str, String, String) {
        match self {
            Check::Gt(a, b) => (">", fmt_rat(a), fmt_rat(b)),
            Check::Ge(a, b) => (">=", fmt_rat(a), fmt_rat(b)),
            Check::Lt(a, b) => ("<", fmt_rat(a), fmt_rat(b)),
            Check::Le(a, b) => ("<=", fmt_rat(a), fmt_rat(b)),
            Check::Eq(a, b) => ("==", fmt_rat(a), fmt_rat(b)),
            Check::Member(a, s) => ("in", fmt_rat(a), format!("{{{}}}", s.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))),
            Check::Flag(f) => ("flag", f.to_string(), "true".into()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, l, r) = self.parts();
        write!(f, "{l} {op} {r}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrailEntry {
    pub predicate: String,
    pub rule: String,
    pub check: Check,
    pub holds: bool,
}

impl Serialize for TrailEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (op, lhs, rhs) = self.check.parts();
        let mut st = s.serialize_struct("TrailEntry", 6)?;
        st.serialize_field("predicate", &self.predicate)?;
        st.serialize_field("rule", &self.rule)?;
        st.serialize_field("op", op)?;
        st.serialize_field("lhs", &lhs)?;
        st.serialize_field("rhs", &rhs)?;
        st.serialize_field("holds", &self.holds)?;
        st.end()
    }
}

/// Boolean combination of trail entries, by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Entry(usize),
    All(Vec<Formula>),
    Any(Vec<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    fn eval(&self, holds: &[bool]) -> bool {
        match self {
            Formula::Entry(i) => holds[*i],
            Formula::All(v) => v.iter().all(|f| f.eval(holds)),
            Formula::Any(v) => v.iter().any(|f| f.eval(holds)),
            Formula::Not(f) => !f.eval(holds),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub subject: String,
    pub verdict: bool,
    pub trail: Vec<TrailEntry>,
    #[serde(skip)]
    pub formula: Formula,
    pub values: BTreeMap<String, String>,
}

impl Certificate {
    /// Re-evaluates every check and the verdict formula.
    pub fn replay(&self) -> bool {
        let holds: Vec<bool> = self.trail.iter().map(|e| e.check.eval()).collect();
        holds.iter().zip(&self.trail).all(|(h, e)| *h == e.holds) && self.formula.eval(&holds) == self.verdict
    }
}

struct Builder {
    subject: String,
    trail: Vec<TrailEntry>,
    values: BTreeMap<String, String>,
}

impl Builder {
    fn new(subject: impl Into<String>) -> Self {
        Builder { subject: subject.into(), trail: Vec::new(), values: BTreeMap::new() }
    }

    fn check(&mut self, predicate: &str, rule: &str, check: Check) -> Formula {
        let holds = check.eval();
        self.trail.push(TrailEntry { predicate: predicate.into(), rule: rule.into(), check, holds });
        Formula::Entry(self.trail.len() - 1)
    }

    fn value(&mut self, key: &str, v: impl fmt::Display) {
        self.values.insert(key.into(), v.to_string());
    }

    fn finish(self, formula: Formula) -> Certificate {
        let holds: Vec<bool> = self.trail.iter().map(|e| e.holds).collect();
        let verdict = formula.eval(&holds);
        Certificate { subject: self.subject, verdict, trail: self.trail, formula, values: self.values }
    }
}

fn check_pair(r: i64, s: i64) -> Result<()> {
    if !(r > s && s > 1 && gcd(r, s) == 1) {
        return Err(Error::InvalidKnot(format!("need coprime r > s > 1, got ({r},{s})")));
    }
    Ok(())
}

/// `30(r²-1)(s²-1)/67`.
pub fn region_threshold(r: i64, s: i64) -> Rational {
    int(30 * (r * r - 1) * (s * s - 1)) / int(67)
}

/// Slopes beyond `30(r²-1)(s²-1)/67` are characterizing for `T(r,s)`.
pub fn thm13_region(r: i64, s: i64, slope: Slope) -> Result<Certificate> {
    check_pair(r, s)?;
    let mut b = Builder::new(format!("T({r},{s}) slope {slope}"));
    let t = region_threshold(r, s);
    b.value("threshold", fmt_rat(&t));
    b.value("slope", slope);
    let f = b.check("slope above torus region threshold", "large slope characterization", Check::Gt(slope.value(), t));
    Ok(b.finish(f))
}

pub const EXCEPTIONAL_SLOPES: [(i64, i64); 9] = [(9, 1), (10, 1), (11, 1), (19, 2), (21, 2), (28, 3), (29, 3), (31, 3), (32, 3)];

/// Membership in the known characterizing slope set of `T(5,2)`.
pub fn thm14_membership(slope: Slope) -> Certificate {
    let (p, q) = (slope.p().abs(), slope.q());
    let x = slope.value();
    let mut b = Builder::new(format!("T(5,2) slope {slope}"));
    const RULE: &str = "characterizing slopes of T(5,2)";
    let mut clauses = Vec::new();
    let c1 = vec![
        b.check("positive: p/q > 1", RULE, Check::Gt(x.clone(), int(1))),
        b.check("positive: |p| >= 33", RULE, Check::Ge(int(p), int(33))),
    ];
    clauses.push(("p/q > 1, |p| >= 33", c1));
    let c2 = vec![
        b.check("negative: p/q < -6", RULE, Check::Lt(x.clone(), int(-6))),
        b.check("negative: |p| >= 33", RULE, Check::Ge(int(p), int(33))),
        b.check("negative: |q| >= 2", RULE, Check::Ge(int(q), int(2))),
    ];
    clauses.push(("p/q < -6, |p| >= 33, |q| >= 2", c2));
    let c3 = vec![b.check("large denominator: |q| >= 9", RULE, Check::Ge(int(q), int(9)))];
    clauses.push(("|q| >= 9", c3));
    let c4 = vec![
        b.check("window: |q| >= 3", RULE, Check::Ge(int(q), int(3))),
        b.check("window: |p| >= 2", RULE, Check::Ge(int(p), int(2))),
        b.check("window: |p| <= 2|q| - 3", RULE, Check::Le(int(p), int(2 * q - 3))),
    ];
    clauses.push(("|q| >= 3, 2 <= |p| <= 2|q| - 3", c4));
    let list: Vec<Rational> = EXCEPTIONAL_SLOPES.iter().map(|&(a, c)| rat(a, c)).collect();
    let c5 = vec![b.check("explicit list", RULE, Check::Member(x, list))];
    clauses.push(("explicit list", c5));

    let holds: Vec<bool> = b.trail.iter().map(|e| e.holds).collect();
    let first = clauses
        .iter()
        .find(|(_, fs)| Formula::All(fs.clone()).eval(&holds))
        .map_or("none", |(name, _)| name);
    b.value("clause", first);
    b.value("slope", slope);
    let formula = Formula::Any(clauses.into_iter().map(|(_, fs)| Formula::All(fs)).collect());
    b.finish(formula)
}

/// Genus of a constraint case: fixed, or `n + 1` for the parametric family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum CaseGenus {
    Fixed(i64),
    NPlusOne,
}

/// One allowed shape for a knot `K` with `S³_{p/q}(K) ≅ S³_{p/q}(T(5,2))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileCase {
    pub genus: CaseGenus,
    pub fibred: bool,
    /// Polynomial, with `n` as the parameter for the parametric case.
    pub alexander: String,
    /// Admissible `n` (`n ≥ 1`); `None` when the case is not parametric.
    pub n_fixed: Option<i64>,
    pub n_odd: bool,
    pub n_not_div3: bool,
}

impl ProfileCase {
    pub fn allows(&self, n: i64) -> bool {
        match self.genus {
            CaseGenus::Fixed(_) => self.n_fixed.is_none_or(|m| m == n),
            CaseGenus::NPlusOne => {
                n >= 1 && self.n_fixed.is_none_or(|m| m == n) && (!self.n_odd || n % 2 == 1) && (!self.n_not_div3 || n % 3 != 0)
            }
        }
    }

    pub fn polynomial(&self, n: i64) -> LaurentPoly {
        match self.genus {
            CaseGenus::Fixed(1) => genus_one_polynomial(),
            _ => parametric_polynomial(n),
        }
    }
}

/// `(T^{n+1} + T^{-n-1}) - 2(T^n + T^{-n}) + (T^{n-1} + T^{1-n}) + (T + T^{-1}) - 1`.
pub fn parametric_polynomial(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms([
        (n + 1, 1),
        (-n - 1, 1),
        (n, -2),
        (-n, -2),
        (n - 1, 1),
        (1 - n, 1),
        (1, 1),
        (-1, 1),
        (0, -1),
    ])
}

pub fn genus_one_polynomial() -> LaurentPoly {
    LaurentPoly::from_dense(-1, &[3, -5, 3])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintProfile {
    pub slope: Slope,
    pub cases: Vec<ProfileCase>,
}

/// Allowed genus / fibredness / Alexander data for a knot sharing the
/// `p/q` surgery of `T(5,2)`. Double and triple branched covers prune the
/// parametric family when `2 | p` or `3 | p`.
pub fn constraint_profiles(slope: Slope) -> ConstraintProfile {
    let (p, q) = (slope.p(), slope.q());
    let x = slope.value();
    let t52 = ProfileCase {
        genus: CaseGenus::Fixed(2),
        fibred: true,
        alexander: TorusKnot::new(5, 2).unwrap().alexander().to_string(),
        n_fixed: Some(1),
        n_odd: false,
        n_not_div3: false,
    };
    if x > int(1) || (x < int(-6) && q >= 2) || p == 0 {
        return ConstraintProfile { slope, cases: vec![t52] };
    }
    let even = p % 2 == 0;
    let div3 = p % 3 == 0;
    let mut cases = vec![ProfileCase {
        genus: CaseGenus::NPlusOne,
        fibred: true,
        alexander: "(T^(n+1) + T^-(n+1)) - 2(T^n + T^-n) + (T^(n-1) + T^-(n-1)) + (T + T^-1) - 1".into(),
        n_fixed: None,
        n_odd: even,
        n_not_div3: div3,
    }];
    if !even && !div3 {
        cases.push(ProfileCase {
            genus: CaseGenus::Fixed(1),
            fibred: false,
            alexander: genus_one_polynomial().to_string(),
            n_fixed: None,
            n_odd: false,
            n_not_div3: false,
        });
    }
    ConstraintProfile { slope, cases }
}

/// `36/3.35 = 720/67`.
pub fn horocusp_ratio() -> Rational {
    rat(720, 67)
}

/// Exceptional-filling exclusions for a hyperbolic knot of genus `g`:
/// the verdict holds when one of the three tests forces the filling to be
/// hyperbolic.
pub fn hyperbolic_exclusions(slope: Slope, genus: i64) -> Result<Certificate> {
    if genus < 1 {
        return Err(Error::Invalid(format!("genus must be >= 1, got {genus}")));
    }
    let (p, q) = (slope.p().abs(), slope.q());
    let mut b = Builder::new(format!("genus {genus} slope {slope}"));
    let bound = horocusp_ratio() * int(2 * genus - 1);
    b.value("non_hyperbolic_bound", fmt_rat(&bound));
    let small = b.check(
        "(i) |p| within the non-hyperbolic filling bound",
        "horocusp area bound",
        Check::Le(int(p), bound),
    );
    let w1 = b.check("(ii) |q| >= 3", "lamination window", Check::Ge(int(q), int(3)));
    let w2 = b.check("(ii) |p| >= 1", "lamination window", Check::Ge(int(p), int(1)));
    let w3 = b.check("(ii) |p| <= 2|q| - 3", "lamination window", Check::Le(int(p), int(2 * q - 3)));
    let big_q = b.check("(iii) |q| >= 9", "large denominator hyperbolicity", Check::Ge(int(q), int(9)));
    Ok(b.finish(Formula::Any(vec![Formula::Not(Box::new(small)), Formula::All(vec![w1, w2, w3]), big_q])))
}

/// Satellite exclusion for `T(r,s)`: `p/q > rs + (3/7)max(r,s)` and either
/// `|p|` above the region threshold or `|q| ≥ 3`.
pub fn prop24_satellite_bound(r: i64, s: i64, slope: Slope) -> Result<Certificate> {
    check_pair(r, s)?;
    if slope.p() <= 0 {
        return Err(Error::NonPositiveSlope(slope.to_string()));
    }
    let mut b = Builder::new(format!("T({r},{s}) slope {slope}"));
    let cable_bound = int(r * s) + rat(3, 7) * int(r.max(s));
    b.value("cable_bound", fmt_rat(&cable_bound));
    b.value("threshold", fmt_rat(&region_threshold(r, s)));
    let above = b.check("p/q > rs + 3max(r,s)/7", "cable slope bound", Check::Gt(slope.value(), cable_bound));
    let big_p = b.check("|p| above region threshold", "large slope characterization", Check::Gt(int(slope.p().abs()), region_threshold(r, s)));
    let big_q = b.check("|q| >= 3", "lamination window", Check::Ge(int(slope.q()), int(3)));
    Ok(b.finish(Formula::All(vec![above, Formula::Any(vec![big_p, big_q])])))
}

/// `(n³ + 6n² + 10n + 4)`-surgery on `T(n²+3n+1, n+3)` and `T(n²+5n+5, n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub n: i64,
    pub p: i64,
    pub left: KnotDesc,
    pub right: KnotDesc,
    pub left_lens: Option<LensSpace>,
    pub right_lens: Option<LensSpace>,
    pub verified: bool,
    pub witness: Option<String>,
}

pub fn family_pair(n: i64) -> Result<FamilyRecord> {
    if n < 1 {
        return Err(Error::Invalid(format!("family index must be >= 1, got {n}")));
    }
    let p = n * n * n + 6 * n * n + 10 * n + 4;
    let k1 = TorusKnot::new(n * n + 3 * n + 1, n + 3)?;
    let k2 = TorusKnot::new(n * n + 5 * n + 5, n + 1)?;
    let slope = Slope::integer(p);
    let lens_of = |t: TorusKnot| -> Result<(Option<LensSpace>, i64)> {
        let dist = (p - t.r() * t.s()).abs();
        Ok(match classify_torus_surgery(t, slope)? {
            SurgeryClass::Lens { lens } => (Some(lens), dist),
            _ => (None, dist),
        })
    };
    let (l1, e1) = lens_of(k1)?;
    let (l2, e2) = lens_of(k2)?;
    let witness = match (l1, l2) {
        _ if e1 != 1 => Some(format!("|p - rs| = {e1} for {k1}")),
        _ if e2 != 1 => Some(format!("|p - rs| = {e2} for {k2}")),
        (Some(a), Some(b)) if !lens_oriented_homeo(&a, &b) => Some(format!("{a} and {b} are not homeomorphic")),
        (Some(_), Some(_)) => None,
        _ => Some("not a lens surgery".into()),
    };
    Ok(FamilyRecord {
        n,
        p,
        left: KnotDesc::Torus(k1),
        right: KnotDesc::Torus(k2),
        left_lens: l1,
        right_lens: l2,
        verified: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic_norm;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn region_examples() {
        assert!(thm13_region(5, 2, sl("33")).unwrap().verdict);
        assert!(!thm13_region(5, 2, sl("32")).unwrap().verdict);
        assert!(!thm13_region(5, 2, sl("10")).unwrap().verdict);
        assert_eq!(thm13_region(5, 2, sl("33")).unwrap().values["threshold"], "2160/67");
        assert!(thm13_region(2, 5, sl("33")).is_err());
        assert!(thm13_region(6, 4, sl("33")).is_err());
        for p in 1..200 {
            if thm13_region(5, 2, Slope::integer(p)).unwrap().verdict {
                assert!(p >= 33);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let c = thm14_membership(sl("19/2"));
        assert!(c.verdict);
        assert_eq!(c.values["clause"], "explicit list");
        let c = thm14_membership(sl("1/9"));
        assert!(c.verdict);
        assert_eq!(c.values["clause"], "|q| >= 9");
        assert!(!thm14_membership(sl("-7")).verdict);
        assert!(thm14_membership(sl("33")).verdict);
        assert!(thm14_membership(sl("-35/2")).verdict);
        assert!(thm14_membership(sl("-7/5")).verdict);
        for (p, q) in EXCEPTIONAL_SLOPES {
            assert!(thm14_membership(Slope::new(p, q).unwrap()).verdict);
        }
        let c = classify_torus_surgery(TorusKnot::new(5, 2).unwrap(), sl("10")).unwrap();
        assert_eq!(c, SurgeryClass::Reducible { r: 5, s: 2 });
    }

    #[test]
    fn profile_examples() {
        let p = constraint_profiles(sl("3/2"));
        assert_eq!(p.cases.len(), 1);
        assert_eq!(p.cases[0].genus, CaseGenus::Fixed(2));
        assert!(p.cases[0].fibred);
        assert_eq!(p.cases[0].alexander, "T^2 - T + 1 - T^-1 + T^-2");
        let p = constraint_profiles(sl("-5"));
        assert_eq!(p.cases.len(), 2);
        assert!(!p.cases[0].n_odd && !p.cases[0].n_not_div3);
        let p = constraint_profiles(sl("-4"));
        assert_eq!(p.cases.len(), 1);
        assert!(p.cases[0].n_odd);
        assert!(constraint_profiles(sl("-3")).cases[0].n_not_div3);
        assert_eq!(parametric_polynomial(1), TorusKnot::new(5, 2).unwrap().alexander());
    }

    // The filters must agree with branched-cover orders: the double cover
    // sees 5, the triple cover sees 1, matching T(5,2).
    #[test]
    fn profile_filters_match_branched_covers() {
        let t52 = TorusKnot::new(5, 2).unwrap().alexander();
        let norm = |d: &LaurentPoly, j| cyclotomic_norm(d, j).ok();
        let even = constraint_profiles(sl("-4"));
        let div3 = constraint_profiles(sl("-3"));
        for n in 1..=60 {
            let d = parametric_polynomial(n);
            assert!(d.is_symmetric() && d.eval_at_one() == 1.into());
            assert_eq!(even.cases[0].allows(n), norm(&d, 2) == norm(&t52, 2), "n={n}");
            assert_eq!(div3.cases[0].allows(n), norm(&d, 3) == norm(&t52, 3), "n={n}");
        }
        assert_ne!(norm(&genus_one_polynomial(), 2), norm(&t52, 2));
        assert_ne!(norm(&genus_one_polynomial(), 3), norm(&t52, 3));
    }

    #[test]
    fn hyperbolic_examples() {
        let c = hyperbolic_exclusions(sl("33"), 2).unwrap();
        assert!(!c.trail[0].holds);
        assert!(c.verdict);
        assert_eq!(c.values["non_hyperbolic_bound"], "2160/67");
        let c = hyperbolic_exclusions(sl("1/5"), 3).unwrap();
        assert!(c.trail[1..4].iter().all(|e| e.holds));
        let c = hyperbolic_exclusions(sl("4/9"), 2).unwrap();
        assert!(c.trail[4].holds);
        assert!(hyperbolic_exclusions(sl("1"), 0).is_err());
        assert!(!hyperbolic_exclusions(sl("7"), 2).unwrap().verdict);
    }

    #[test]
    fn satellite_examples() {
        let c = prop24_satellite_bound(5, 2, sl("33")).unwrap();
        assert!(c.verdict && c.trail[1].holds);
        assert!(!prop24_satellite_bound(5, 2, sl("11/3")).unwrap().verdict);
        let c = prop24_satellite_bound(5, 2, sl("37/3")).unwrap();
        assert!(c.verdict && c.trail[1].holds && c.trail[2].holds);
        assert!(prop24_satellite_bound(5, 2, sl("-3")).is_err());
    }

    #[test]
    fn family_examples() {
        let f = family_pair(1).unwrap();
        assert_eq!((f.p, f.left.to_string(), f.right.to_string()), (21, "T(5,4)".into(), "T(11,2)".into()));
        assert!(f.verified);
        let f = family_pair(2).unwrap();
        assert_eq!((f.p, f.left.to_string(), f.right.to_string()), (56, "T(11,5)".into(), "T(19,3)".into()));
        assert!(f.verified);
        assert!(family_pair(50).unwrap().verified);
        assert!(family_pair(0).is_err());
    }

    #[test]
    fn certificates_replay() {
        let mut certs = vec![thm14_membership(sl("19/2")), thm14_membership(sl("-7"))];
        for s in ["33", "32", "1/5", "37/3", "11/3", "-40/3"] {
            certs.push(thm13_region(5, 2, sl(s)).unwrap());
            certs.push(thm14_membership(sl(s)));
            certs.push(hyperbolic_exclusions(sl(s), 2).unwrap());
            if !s.starts_with('-') {
                certs.push(prop24_satellite_bound(5, 2, sl(s)).unwrap());
            }
        }
        for c in &certs {
            assert!(c.replay(), "{}", c.subject);
            let mut forged = c.clone();
            forged.verdict = !forged.verdict;
            assert!(!forged.replay());
        }
    }
}
