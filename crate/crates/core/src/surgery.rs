//! Mapping-cone formulas for `S³_{p/q}(K)`, `p/q > 0`: correction terms,
//! `HF_red` ranks and graded groups, and affine matching of profiles.
//!
//! Spin^c structures are indexed by `i ∈ Z/p`; spin^c `i` sees the
//! complexes `A_{k(s)}` with `k(s) = ⌊(i + ps)/q⌋`.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{fmt_rat, gcd, int, modulo, Rational, Slope};
use crate::cfk::{self, CfkComplex};
use crate::classify::cable_slope_transfer;
use crate::knots::{lspace_form, torsion_coeff, KnotDesc, TorusKnot};
use crate::lens::{lens_d_invariants, DProfile};
use crate::{Error, Result};

/// `V_k` for `k ≥ 0`, zero from the stored length on. Negative indices use
/// `V_{-k} = V_k + k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VSequence {
    values: Vec<i64>,
}

impl VSequence {
    pub fn new(mut values: Vec<i64>) -> Result<Self> {
        while values.last() == Some(&0) {
            values.pop();
        }
        if values.iter().any(|&v| v < 0) {
            return Err(Error::Invalid("V_k must be non-negative".into()));
        }
        let s = VSequence { values };
        for k in 0..=s.values.len() as i64 {
            let (a, b) = (s.v(k), s.v(k + 1));
            if !(a >= b && b >= a - 1) {
                return Err(Error::Invalid(format!("V_{k} = {a}, V_{} = {b} breaks monotonicity", k + 1)));
            }
        }
        Ok(s)
    }

    pub fn v(&self, k: i64) -> i64 {
        if k < 0 {
            self.v(-k) - k
        } else {
            self.values.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// `H_k = V_{-k}`.
    pub fn h(&self, k: i64) -> i64 {
        self.v(-k)
    }

    /// First index from which `V` vanishes.
    pub fn support(&self) -> i64 {
        self.values.len() as i64
    }
}

/// `V_k = t_k`, valid for polynomials of L-space form: the kernel of `v_k`
/// is then a single tower with Euler characteristic `t_k`.
pub fn v_from_polynomial(delta: &crate::arith::LaurentPoly) -> Result<VSequence> {
    let form = lspace_form(delta).ok_or(Error::RequiresExplicitComplex)?;
    VSequence::new((0..=form.degree()).map(|k| torsion_coeff(delta, k)).collect())
}

/// `V_k`, `H_k` and the graded reduced groups `A_red,k` of one knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloerData {
    pub v: VSequence,
    /// nonempty `A_red,k`, gradings relative to the tower bottom
    reduced: BTreeMap<i64, Vec<(i64, usize)>>,
}

impl FloerData {
    pub fn from_polynomial(delta: &crate::arith::LaurentPoly) -> Result<Self> {
        Ok(FloerData { v: v_from_polynomial(delta)?, reduced: BTreeMap::new() })
    }

    pub fn from_complex(c: &CfkComplex) -> Result<Self> {
        let g = cfk::genus(c)?;
        let results: Vec<_> =
            (-g..=g).into_par_iter().map(|k| cfk::a_plus(c, k)).collect::<Result<Vec<_>>>()?;
        let by_k: BTreeMap<i64, _> = results.into_iter().map(|r| (r.k, r)).collect();
        let v = VSequence::new((0..=g).map(|k| by_k[&k].big_v).collect())?;
        // H_k - V_k = k, i.e. the engine's negative side agrees with V_{-k} = V_k + k
        for (&k, r) in &by_k {
            if r.big_v != v.v(k) {
                return Err(Error::InvalidComplex(format!("V_{k} = {} but H_{} - V_{} != {}", r.big_v, -k, -k, -k)));
            }
        }
        let reduced = by_k.into_iter().filter(|(_, r)| !r.reduced.is_empty()).map(|(k, r)| (k, r.reduced)).collect();
        Ok(FloerData { v, reduced })
    }

    /// Positive torus knots use `V_k = t_k`; negative torus knots and explicit
    /// complexes go through the chain-level engine. Cables have no data of
    /// their own (see [`resolve`]).
    pub fn for_knot(knot: &KnotDesc) -> Result<Self> {
        match knot {
            KnotDesc::Torus(t) if t.is_positive() => Self::from_polynomial(&t.alexander()),
            KnotDesc::Torus(t) => {
                let form = lspace_form(&t.alexander()).expect("torus knots have L-space form");
                Self::from_complex(&cfk::mirror(&cfk::staircase(&form)))
            }
            KnotDesc::Explicit(c) => Self::from_complex(c),
            KnotDesc::Cable { .. } => Err(Error::RequiresExplicitComplex),
        }
    }

    pub fn reduced(&self, k: i64) -> &[(i64, usize)] {
        self.reduced.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn reduced_dim(&self, k: i64) -> i64 {
        self.reduced(k).iter().map(|&(_, d)| d as i64).sum()
    }

    /// Largest `|k|` with nontrivial kernel data.
    fn reach(&self) -> i64 {
        let r = self.reduced.keys().map(|k| k.abs() + 1).max().unwrap_or(0);
        r.max(self.v.support())
    }
}

/// Data and slope actually used for `S³_{p/q}(K)`. Cables are replaced by
/// their companion at `p/(q b²)` when `|p - qab| = 1`.
pub fn resolve(knot: &KnotDesc, slope: Slope) -> Result<(Arc<FloerData>, Slope)> {
    if slope.p() <= 0 {
        return Err(Error::NonPositiveSlope(slope.to_string()));
    }
    match knot {
        KnotDesc::Cable { a, b, companion } => {
            let s = cable_slope_transfer(*a, *b, slope)?.ok_or(Error::RequiresExplicitComplex)?;
            resolve(&KnotDesc::Torus(*companion), s)
        }
        _ => Ok((floer_data_cached(knot)?, slope)),
    }
}

fn floer_data_cached(knot: &KnotDesc) -> Result<Arc<FloerData>> {
    use std::sync::{OnceLock, RwLock};
    static MEMO: OnceLock<RwLock<HashMap<TorusKnot, Arc<FloerData>>>> = OnceLock::new();
    let Some(t) = knot.as_torus() else {
        return Ok(Arc::new(FloerData::for_knot(knot)?));
    };
    let memo = MEMO.get_or_init(Default::default);
    if let Some(hit) = memo.read().unwrap().get(&t) {
        return Ok(hit.clone());
    }
    let data = Arc::new(FloerData::for_knot(knot)?);
    Ok(memo.write().unwrap().entry(t).or_insert(data).clone())
}

fn k_of(p: i64, q: i64, i: i64, s: i64) -> i64 {
    (i + p * s).div_euclid(q)
}

/// `δ_i = max{V_{⌊i/q⌋}, V_{⌊(p+q-1-i)/q⌋}}`.
pub fn delta_i(p: i64, q: i64, i: i64, v: &VSequence) -> i64 {
    v.v(i.div_euclid(q)).max(v.v((p + q - 1 - i).div_euclid(q)))
}

/// `0` if `V_{⌊i/q⌋} ≥ H_{⌊(i-p)/q⌋}`, else `-1`; then `δ_i = min{V, H}` at `k(s_i)`.
pub fn s_i(p: i64, q: i64, i: i64, v: &VSequence) -> i64 {
    if v.v(k_of(p, q, i, 0)) >= v.h(k_of(p, q, i, -1)) {
        0
    } else {
        -1
    }
}

/// `d(S³_{p/q}(K), i) = d(L(p,q), i) - 2δ_i`.
pub fn surgery_d_invariants(knot: &KnotDesc, slope: Slope) -> Result<DProfile> {
    let (data, slope) = resolve(knot, slope)?;
    Ok(d_profile_from(&data.v, slope))
}

pub fn d_profile_from(v: &VSequence, slope: Slope) -> DProfile {
    let (p, q) = (slope.p(), slope.q());
    let lens = lens_d_invariants(p, q).expect("reduced slope");
    DProfile::new((0..p).map(|i| &lens[i as usize] - int(2 * delta_i(p, q, i, v))).collect())
}

/// `q(dim A_red,0 + V_0 + 2 Σ_{k≥1} (dim A_red,k + V_k)) - Σ_i δ_i`.
pub fn hf_red_rank(knot: &KnotDesc, slope: Slope) -> Result<i64> {
    let (data, slope) = resolve(knot, slope)?;
    Ok(rank_from(&data, slope))
}

pub fn rank_from(data: &FloerData, slope: Slope) -> i64 {
    let (p, q) = (slope.p(), slope.q());
    let tail: i64 = (1..=data.reach()).map(|k| data.reduced_dim(k) + data.v.v(k)).sum();
    let total = q * (data.reduced_dim(0) + data.v.v(0) + 2 * tail);
    total - (0..p).map(|i| delta_i(p, q, i, &data.v)).sum::<i64>()
}

/// One spin^c summand: `HF^+ = T^+_{(d)} ⊕ HF_red`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinCGroup {
    pub d: Rational,
    /// `(absolute grading, dim)`, ascending, gradings distinct
    pub reduced: Vec<(Rational, usize)>,
}

impl SpinCGroup {
    pub fn reduced_dim(&self) -> usize {
        self.reduced.iter().map(|&(_, d)| d).sum()
    }

    /// Reduced part with gradings relative to `d`.
    pub fn shifted(&self) -> Vec<(Rational, usize)> {
        self.reduced.iter().map(|(g, n)| (g - &self.d, *n)).collect()
    }
}

impl Serialize for SpinCGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpinCGroup", 2)?;
        st.serialize_field("d", &fmt_rat(&self.d))?;
        let red: Vec<(String, usize)> = self.reduced.iter().map(|(g, n)| (fmt_rat(g), *n)).collect();
        st.serialize_field("reduced", &red)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedProfile {
    pub slope: Slope,
    pub groups: Vec<SpinCGroup>,
}

impl GradedProfile {
    pub fn total_reduced_dim(&self) -> usize {
        self.groups.iter().map(SpinCGroup::reduced_dim).sum()
    }

    pub fn d_profile(&self) -> DProfile {
        DProfile::new(self.groups.iter().map(|g| g.d.clone()).collect())
    }

    /// Per spin^c reduced groups with gradings shifted down by `d`.
    pub fn shifted(&self) -> Vec<Vec<(Rational, usize)>> {
        self.groups.iter().map(SpinCGroup::shifted).collect()
    }
}

/// Graded `HF^+(S³_{p/q}(K))` per spin^c structure.
///
/// Gradings: `gr(0, 1) = d(L(p,q), i) - 1` and `gr(s+1, 1) = gr(s, 1) + 2k(s)`
/// for the bottom of `B_s`. A class of relative grading `x` in `A_{k(s)}` sits
/// at `x + 1 + gr(s, 1) - 2V_{k(s)}`, so that `v` and `h` both lower grading
/// by one. Reduced part: all `A_red,k(s)`, plus the tower kernels
/// `T_{min(V,H)}` at every `s ≠ s_i`.
pub fn hf_red_graded(knot: &KnotDesc, slope: Slope) -> Result<GradedProfile> {
    let (data, slope) = resolve(knot, slope)?;
    Ok(graded_from(&data, slope))
}

pub fn graded_from(data: &FloerData, slope: Slope) -> GradedProfile {
    let (p, q) = (slope.p(), slope.q());
    let lens = lens_d_invariants(p, q).expect("reduced slope");
    let reach = data.reach() + 1;
    let groups = (0..p)
        .into_par_iter()
        .map(|i| {
            let v = &data.v;
            let s_lo = (-reach * q - i).div_euclid(p) - 1;
            let s_hi = (reach * q - i).div_euclid(p) + 1;
            // gr(s, 1) for s in s_lo..=s_hi
            let mut gr: BTreeMap<i64, Rational> = BTreeMap::new();
            gr.insert(0, &lens[i as usize] - int(1));
            for s in 0..s_hi {
                let next = &gr[&s] + int(2 * k_of(p, q, i, s));
                gr.insert(s + 1, next);
            }
            for s in (s_lo..0).rev() {
                let prev = &gr[&(s + 1)] - int(2 * k_of(p, q, i, s));
                gr.insert(s, prev);
            }
            let place = |s: i64, x: i64| int(x + 1 - 2 * v.v(k_of(p, q, i, s))) + &gr[&s];

            let si = s_i(p, q, i, v);
            let d = place(si, 0);
            let mut red: BTreeMap<Rational, usize> = BTreeMap::new();
            for s in s_lo..=s_hi {
                let k = k_of(p, q, i, s);
                for &(x, n) in data.reduced(k) {
                    *red.entry(place(s, x)).or_default() += n;
                }
                if s != si {
                    for j in 0..v.v(k).min(v.h(k)) {
                        *red.entry(place(s, 2 * j)).or_default() += 1;
                    }
                }
            }
            SpinCGroup { d, reduced: red.into_iter().collect() }
        })
        .collect();
    GradedProfile { slope, groups }
}

/// `J(i) = (q - 1 - i) mod p`.
pub fn conjugation(p: i64, q: i64, i: i64) -> i64 {
    modulo(q - 1 - i, p)
}

/// `i ↦ a·i + b` on `Z/p`, `a` a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineMap {
    pub a: i64,
    pub b: i64,
}

impl AffineMap {
    pub fn apply(&self, i: i64, p: i64) -> i64 {
        ((self.a as i128 * i as i128 + self.b as i128).rem_euclid(p as i128)) as i64
    }
}

/// All affine bijections `φ` of `Z/p` with `A(i) = B(φ(i))` for every `i`,
/// sorted by `(a, b)`.
///
/// Candidates come from one adjacent anchor pair `i0, i0+1`: `φ(i0)` and
/// `φ(i0+1)` must carry the same values, and fix `φ`.
pub fn affine_matchings<T: Eq + Hash>(a: &[T], b: &[T]) -> Vec<AffineMap> {
    let p = a.len();
    if p != b.len() || p == 0 {
        return Vec::new();
    }
    if p == 1 {
        return if a[0] == b[0] { vec![AffineMap { a: 1, b: 0 }] } else { Vec::new() };
    }
    let mut where_b: HashMap<&T, Vec<usize>> = HashMap::new();
    for (j, x) in b.iter().enumerate() {
        where_b.entry(x).or_default().push(j);
    }
    let mut count_a: HashMap<&T, usize> = HashMap::new();
    for x in a {
        *count_a.entry(x).or_default() += 1;
    }
    if count_a.len() != where_b.len() || count_a.iter().any(|(x, &n)| where_b.get(x).map_or(0, Vec::len) != n) {
        return Vec::new();
    }
    let mult = |i: usize| where_b[&a[i]].len();
    let i0 = (0..p).min_by_key(|&i| mult(i) * mult((i + 1) % p)).unwrap();
    let (p64, i0_64) = (p as i64, i0 as i64);
    let mut out = Vec::new();
    for &x in &where_b[&a[i0]] {
        for &y in &where_b[&a[(i0 + 1) % p]] {
            let slope = modulo(y as i64 - x as i64, p64);
            if gcd(slope, p64) != 1 {
                continue;
            }
            let map = AffineMap { a: slope, b: modulo(x as i64 - slope * i0_64 % p64, p64) };
            if (0..p).all(|i| a[i] == b[map.apply(i as i64, p64) as usize]) {
                out.push(map);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All affine bijections of `Z/p` sending the set `from` into the set `to`.
pub fn affine_maps_into(p: i64, from: &[i64], to: &[i64]) -> Vec<AffineMap> {
    let target: std::collections::HashSet<i64> = to.iter().map(|&x| modulo(x, p)).collect();
    let Some((&f0, rest)) = from.split_first() else {
        return (1..p.max(2)).filter(|&a| gcd(a, p) == 1).flat_map(|a| (0..p).map(move |b| AffineMap { a, b })).collect();
    };
    let f1 = rest.first().copied();
    let mut out = Vec::new();
    for &y0 in &target {
        for a in (0..p).filter(|&a| gcd(a, p) == 1) {
            let b = modulo(y0 - a * f0 % p, p);
            let map = AffineMap { a, b };
            if f1.is_some_and(|f| !target.contains(&map.apply(f, p))) {
                continue;
            }
            if from.iter().all(|&f| target.contains(&map.apply(f, p))) {
                out.push(map);
            }
        }
    }
    out.sort();
    out
}
