use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::arith::LaurentPoly;
use crate::knots::LSpaceForm;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub alexander: i64,
    pub maslov: i64,
}

/// `∂ src ∋ U^upower · dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub upower: i64,
}

/// Finitely generated model of `CFK^∞` over `F[U, U^-1]`, `F = Z/2`.
///
/// Invariants checked on construction: every arrow lowers Maslov grading by
/// one and respects both filtrations, `∂² = 0`, the generator bigradings are
/// symmetric under `(a, m) ↦ (-a, m - 2a)`, and the `k = 0` part of `∂` has
/// homology `F` in grading 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfkComplex {
    name: String,
    gens: Vec<Generator>,
    arrows: Vec<Arrow>,
}

impl CfkComplex {
    pub fn new(name: impl Into<String>, gens: Vec<Generator>, arrows: Vec<Arrow>) -> Result<Self> {
        let c = CfkComplex { name: name.into(), gens, arrows };
        c.validate()?;
        Ok(c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        if self.gens.is_empty() {
            return bad("no generators".into());
        }
        let mut names = HashMap::new();
        for (i, g) in self.gens.iter().enumerate() {
            if names.insert(g.name.as_str(), i).is_some() {
                return bad(format!("duplicate generator {}", g.name));
            }
        }
        for a in &self.arrows {
            let (s, d) = (&self.gens[a.src], &self.gens[a.dst]);
            if a.upower < 0 || a.upower < d.alexander - s.alexander {
                return bad(format!("{} -> {} ^{} breaks the filtration", s.name, d.name, a.upower));
            }
            if d.maslov - 2 * a.upower != s.maslov - 1 {
                return bad(format!("{} -> {} ^{} does not lower grading by one", s.name, d.name, a.upower));
            }
        }
        let mut square: HashMap<(usize, usize, i64), u32> = HashMap::new();
        for a in &self.arrows {
            for b in self.arrows.iter().filter(|b| b.src == a.dst) {
                *square.entry((a.src, b.dst, a.upower + b.upower)).or_default() += 1;
            }
        }
        if let Some((&(s, d, k), _)) = square.iter().find(|(_, &n)| n % 2 == 1) {
            return bad(format!("∂² ≠ 0: {} reaches U^{k}·{} an odd number of times", self.gens[s].name, self.gens[d].name));
        }
        let mut bigradings: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for g in &self.gens {
            *bigradings.entry((g.alexander, g.maslov)).or_default() += 1;
            *bigradings.entry((-g.alexander, g.maslov - 2 * g.alexander)).or_default() -= 1;
        }
        if bigradings.values().any(|&n| n != 0) {
            return bad("bigradings are not symmetric under (a, m) -> (-a, m - 2a)".into());
        }
        let vertical = self.vertical_homology();
        if vertical != [(0, 1)] {
            return bad(format!("U = 0 homology is {vertical:?}, expected F at grading 0"));
        }
        Ok(())
    }

    /// Homology of the `U`-power-zero part of `∂`, as `(grading, dim)`.
    fn vertical_homology(&self) -> Vec<(i64, usize)> {
        use super::gf2::{BitVec, Echelon};
        let mut by_grading: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.gens.iter().enumerate() {
            by_grading.entry(g.maslov).or_default().push(i);
        }
        let pos: HashMap<usize, usize> =
            by_grading.values().flat_map(|v| v.iter().enumerate().map(|(k, &i)| (i, k))).collect();
        let mut rank: BTreeMap<i64, usize> = BTreeMap::new();
        for (&m, ids) in &by_grading {
            let target = by_grading.get(&(m - 1)).map_or(0, Vec::len);
            let mut e = Echelon::default();
            for &i in ids {
                let mut v = BitVec::zeros(target);
                for a in self.arrows.iter().filter(|a| a.src == i && a.upower == 0) {
                    v.flip(pos[&a.dst]);
                }
                e.insert(v);
            }
            rank.insert(m, e.rank());
        }
        by_grading
            .iter()
            .map(|(&m, ids)| (m, ids.len() - rank[&m] - rank.get(&(m + 1)).copied().unwrap_or(0)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    /// `Σ (-1)^m T^a` over generators.
    pub fn euler_polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.gens.iter().map(|g| (g.alexander, if g.maslov % 2 == 0 { 1 } else { -1 })))
    }

    pub fn maslov_span(&self) -> (i64, i64) {
        let ms = self.gens.iter().map(|g| g.maslov);
        (ms.clone().min().unwrap(), ms.max().unwrap())
    }

    pub fn alexander_span(&self) -> (i64, i64) {
        let a = self.gens.iter().map(|g| g.alexander);
        (a.clone().min().unwrap(), a.max().unwrap())
    }

    /// Parses lines `name a m` and `src -> dst ^k` (`^k` optional, default 0).
    /// `#` starts a comment.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        let mut pending = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: {raw:?}", n + 1));
            if let Some((src, rest)) = line.split_once("->") {
                let mut parts = rest.split_whitespace();
                let dst = parts.next().ok_or_else(bad)?;
                let k = match parts.next() {
                    Some(p) => p.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                    None => 0,
                };
                if parts.next().is_some() {
                    return Err(bad());
                }
                pending.push((src.trim().to_string(), dst.to_string(), k, n + 1));
            } else {
                let f: Vec<&str> = line.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(bad());
                }
                gens.push(Generator {
                    name: f[0].to_string(),
                    alexander: f[1].parse().map_err(|_| bad())?,
                    maslov: f[2].parse().map_err(|_| bad())?,
                });
            }
        }
        let index: HashMap<&str, usize> = gens.iter().enumerate().map(|(i, g)| (g.name.as_str(), i)).collect();
        let mut arrows = Vec::new();
        for (s, d, k, line) in &pending {
            let look = |x: &str| {
                index.get(x).copied().ok_or_else(|| Error::Parse(format!("line {line}: unknown generator {x}")))
            };
            arrows.push(Arrow { src: look(s)?, dst: look(d)?, upower: *k });
        }
        CfkComplex::new(name, gens, arrows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.gens {
            writeln!(out, "{} {} {}", g.name, g.alexander, g.maslov).unwrap();
        }
        for a in &self.arrows {
            writeln!(out, "{} -> {} ^{}", self.gens[a.src].name, self.gens[a.dst].name, a.upower).unwrap();
        }
        out
    }
}

/// Dual complex: arrows reversed with the same `U`-power, `(a, m) ↦ (-a, -m)`.
pub fn mirror(c: &CfkComplex) -> CfkComplex {
    let gens = c
        .gens
        .iter()
        .map(|g| Generator { name: g.name.clone(), alexander: -g.alexander, maslov: -g.maslov })
        .collect();
    let arrows = c.arrows.iter().map(|a| Arrow { src: a.dst, dst: a.src, upower: a.upower }).collect();
    let name = match c.name.strip_prefix("mirror:") {
        Some(inner) => inner.to_string(),
        None => format!("mirror:{}", c.name),
    };
    CfkComplex::new(name, gens, arrows).expect("dual of a valid complex is valid")
}

/// Zig-zag complex of an L-space knot. Generators `x_0 .. x_2k` sit at the
/// descending exponents of `Δ`; odd `x_j` maps to `U^{a_{j-1}-a_j} x_{j-1}`
/// and to `x_{j+1}`.
pub fn staircase(form: &LSpaceForm) -> CfkComplex {
    let mut exps: Vec<i64> = form.exponents.iter().rev().copied().collect();
    exps.push(0);
    exps.extend(form.exponents.iter().map(|n| -n));
    let mut gens: Vec<Generator> = Vec::with_capacity(exps.len());
    let mut arrows = Vec::new();
    for (j, &a) in exps.iter().enumerate() {
        let m = match j {
            0 => 0,
            _ if j % 2 == 1 => gens[j - 1].maslov - 2 * (exps[j - 1] - a) + 1,
            _ => gens[j - 1].maslov - 1,
        };
        gens.push(Generator { name: format!("x{j}"), alexander: a, maslov: m });
        if j % 2 == 1 {
            arrows.push(Arrow { src: j, dst: j - 1, upower: exps[j - 1] - a });
            arrows.push(Arrow { src: j, dst: j + 1, upower: 0 });
        }
    }
    let name = format!(
        "staircase:{}",
        form.exponents.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
    );
    CfkComplex::new(name, gens, arrows).expect("staircase of an L-space form is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{lspace_form, TorusKnot};

    #[test]
    fn staircase_of_t52_matches_preset() {
        let form = lspace_form(&TorusKnot::new(5, 2).unwrap().alexander()).unwrap();
        let c = staircase(&form);
        let preset = super::super::preset("T52").unwrap();
        assert_eq!(c.generators(), preset.generators());
        assert_eq!(c.arrows().len(), 4);
        let mut a: Vec<_> = c.arrows().to_vec();
        let mut b: Vec<_> = preset.arrows().to_vec();
        a.sort_by_key(|x| (x.src, x.dst));
        b.sort_by_key(|x| (x.src, x.dst));
        assert_eq!(a, b);
        assert_eq!(c.euler_polynomial(), TorusKnot::new(5, 2).unwrap().alexander());
    }

    #[test]
    fn small_staircases() {
        let unknot = staircase(&LSpaceForm { exponents: vec![] });
        assert_eq!(unknot.generators().len(), 1);
        assert!(unknot.arrows().is_empty());
        let trefoil = staircase(&lspace_form(&TorusKnot::new(3, 2).unwrap().alexander()).unwrap());
        assert_eq!(trefoil.generators().len(), 3);
    }

    #[test]
    fn mirror_matches_dual_preset_and_is_an_involution() {
        let t52 = super::super::preset("T52").unwrap();
        let m = mirror(&t52);
        let dual = super::super::preset("T5m2").unwrap();
        let grades = |c: &CfkComplex| c.generators().iter().map(|g| (g.alexander, g.maslov)).collect::<Vec<_>>();
        assert_eq!(grades(&m), grades(&dual));
        assert_eq!(mirror(&m), t52);
        let u = super::super::preset("unknot").unwrap();
        assert_eq!(grades(&mirror(&u)), grades(&u));
    }

    #[test]
    fn validation_rejects_bad_complexes() {
        assert!(CfkComplex::parse("t", "a 0 0\nb 0 -1\na -> b").is_err());
        assert!(CfkComplex::parse("t", "a 1 0\n").is_err());
        assert!(CfkComplex::parse("t", "a 0 0\na -> z ^0").is_err());
        assert!(CfkComplex::parse("t", "a 0 0\nb 0 0\n").is_err());
        // wrong grading drop
        assert!(CfkComplex::parse("t", "x0 1 0\nx1 0 -2\nx2 -1 -2\nx1 -> x0 ^1\nx1 -> x2 ^0").is_err());
        assert!(CfkComplex::parse("t", "x0 1 0\nx1 0 -1\nx2 -1 -2\nx1 -> x0 ^1\nx1 -> x2 ^0").is_ok());
        let c = CfkComplex::parse("t", "u 0 0 # lone generator\n").unwrap();
        assert_eq!(CfkComplex::parse("t", &c.to_text()).unwrap(), c);
    }
}
