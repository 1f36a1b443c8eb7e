//! Homology of `A_k^+ = C{i ≥ 0 or j ≥ k}` by truncated GF(2) elimination.
//!
//! An element `U^n·x` of `CFK^∞` sits at filtration `(-n, A(x) - n)` and
//! Maslov grading `m(x) - 2n`, so `A_k^+` is spanned by `U^n·x` with
//! `n ≤ max(0, A(x) - k)`. Cutting at `n ≥ -N` gives a subcomplex whose
//! homology is exact in gradings `≤ m_min + 2N - 1`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::gf2::{kernel, BitVec, Echelon};
use super::CfkComplex;
use crate::{Error, Result};

/// Homology of `A_k^+`: the tower `T^+` plus a finite reduced part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AkResult {
    pub k: i64,
    /// `V_k`: `v_k` acts on the tower as `U^{V_k}`.
    pub big_v: i64,
    /// `(grading, dim)` with the tower bottom at grading 0, ascending.
    pub reduced: Vec<(i64, usize)>,
}

impl AkResult {
    pub fn reduced_dim(&self) -> usize {
        self.reduced.iter().map(|&(_, d)| d).sum()
    }

    pub fn reduced_dim_at(&self, grading: i64) -> usize {
        self.reduced.iter().filter(|&&(g, _)| g == grading).map(|&(_, d)| d).sum()
    }

    /// `χ(ker v_k) = V_k + Σ (-1)^g dim A_red,k`.
    pub fn kernel_euler(&self) -> i64 {
        self.big_v + self.reduced.iter().map(|&(g, d)| if g % 2 == 0 { d as i64 } else { -(d as i64) }).sum::<i64>()
    }

    pub fn kernel_is_zero(&self) -> bool {
        self.big_v == 0 && self.reduced.is_empty()
    }
}

type Cell = (usize, i64);

/// The span of `U^n·x` with `floor ≤ n ≤ ceil[x]`, graded by Maslov grading.
struct Truncation<'a> {
    c: &'a CfkComplex,
    ceil: Vec<i64>,
    cells: BTreeMap<i64, Vec<Cell>>,
    pos: HashMap<Cell, usize>,
    /// image of `∂` from grading `g + 1`, keyed by `g`
    images: BTreeMap<i64, Echelon>,
}

impl<'a> Truncation<'a> {
    fn new(c: &'a CfkComplex, ceil: Vec<i64>, floor: i64) -> Self {
        let mut cells: BTreeMap<i64, Vec<Cell>> = BTreeMap::new();
        for (x, g) in c.generators().iter().enumerate() {
            for n in floor..=ceil[x] {
                cells.entry(g.maslov - 2 * n).or_default().push((x, n));
            }
        }
        let pos = cells.values().flat_map(|v| v.iter().enumerate().map(|(i, &cell)| (cell, i))).collect();
        let mut t = Truncation { c, ceil, cells, pos, images: BTreeMap::new() };
        let gradings: Vec<i64> = t.cells.keys().copied().collect();
        for g in gradings {
            let mut e = Echelon::default();
            for &cell in &t.cells[&g] {
                e.insert(t.boundary(cell));
            }
            t.images.insert(g - 1, e);
        }
        t
    }

    fn len(&self, g: i64) -> usize {
        self.cells.get(&g).map_or(0, Vec::len)
    }

    fn boundary(&self, (x, n): Cell) -> BitVec {
        let g = self.c.generators()[x].maslov - 2 * n;
        let mut v = BitVec::zeros(self.len(g - 1));
        for a in self.c.arrows().iter().filter(|a| a.src == x) {
            let m = n + a.upower;
            if m <= self.ceil[a.dst] {
                v.flip(self.pos[&(a.dst, m)]);
            }
        }
        v
    }

    fn rank_into(&self, g: i64) -> usize {
        self.images.get(&g).map_or(0, Echelon::rank)
    }

    fn homology_dim(&self, g: i64) -> usize {
        self.len(g) - self.rank_into(g - 1) - self.rank_into(g)
    }

    fn to_bits(&self, g: i64, chain: &[Cell]) -> BitVec {
        let mut v = BitVec::zeros(self.len(g));
        for c in chain {
            v.flip(self.pos[c]);
        }
        v
    }

    fn is_cycle(&self, g: i64, chain: &[Cell]) -> bool {
        let mut v = BitVec::zeros(self.len(g - 1));
        for &c in chain {
            v.xor(&self.boundary(c));
        }
        v.is_zero()
    }

    fn is_boundary(&self, g: i64, chain: &[Cell]) -> bool {
        chain.is_empty() || self.images.get(&g).is_some_and(|e| e.contains(&self.to_bits(g, chain)))
    }

    /// A cycle in grading `g` that is not a boundary.
    fn nonzero_class(&self, g: i64) -> Option<Vec<Cell>> {
        let cells = self.cells.get(&g)?;
        let imgs: Vec<BitVec> = cells.iter().map(|&c| self.boundary(c)).collect();
        kernel(&imgs, self.len(g - 1))
            .into_iter()
            .map(|z| z.ones().map(|i| cells[i]).collect::<Vec<_>>())
            .find(|z| !self.is_boundary(g, z))
    }

    fn apply_u(&self, chain: &[Cell]) -> Vec<Cell> {
        chain.iter().filter(|&&(x, n)| n < self.ceil[x]).map(|&(x, n)| (x, n + 1)).collect()
    }

    /// Lowest grading of the `U`-orbit of a nonzero class.
    fn orbit_bottom(&self, mut g: i64, mut z: Vec<Cell>) -> i64 {
        loop {
            let w = self.apply_u(&z);
            if self.is_boundary(g - 2, &w) {
                return g;
            }
            z = w;
            g -= 2;
        }
    }
}

fn a_plus_at_depth(c: &CfkComplex, k: i64, depth: i64) -> Result<AkResult> {
    let (m_min, _) = c.maslov_span();
    let top = m_min + 2 * depth - 1;
    let ceil_a: Vec<i64> = c.generators().iter().map(|g| (g.alexander - k).max(0)).collect();
    let a = Truncation::new(c, ceil_a, -depth);
    let b = Truncation::new(c, vec![0; c.generators().len()], -depth);

    let g_top = match (a.homology_dim(top), a.homology_dim(top - 1)) {
        (1, 0) => top,
        (0, 1) => top - 1,
        _ => return Err(Error::Truncation(depth)),
    };
    let z = a.nonzero_class(g_top).ok_or(Error::Truncation(depth))?;
    let g_a = a.orbit_bottom(g_top, z.clone());

    let projected: Vec<Cell> = z.into_iter().filter(|&(_, n)| n <= 0).collect();
    if !b.is_cycle(g_top, &projected) || b.is_boundary(g_top, &projected) {
        return Err(Error::Truncation(depth));
    }
    let g_b = b.orbit_bottom(g_top, projected);
    if g_b != 0 {
        return Err(Error::InvalidComplex(format!("tower of C{{i >= 0}} bottoms out at {g_b}, not 0")));
    }
    if (g_b - g_a) % 2 != 0 || g_a > g_b {
        return Err(Error::Truncation(depth));
    }

    let mut reduced = Vec::new();
    for (&g, _) in a.cells.range(..=top) {
        let tower = (g >= g_a && (g - g_a) % 2 == 0) as usize;
        let dim = a.homology_dim(g);
        if dim < tower {
            return Err(Error::Truncation(depth));
        }
        if dim > tower {
            reduced.push((g - g_a, dim - tower));
        }
    }
    Ok(AkResult { k, big_v: (g_b - g_a) / 2, reduced })
}

fn default_depth(c: &CfkComplex) -> i64 {
    let (m0, m1) = c.maslov_span();
    let (a0, a1) = c.alexander_span();
    (m1 - m0) + (a1 - a0) + 4
}

const MAX_DOUBLINGS: u32 = 6;

/// `H_*(A_k^+)`, accepted once depths `N` and `2N` agree.
pub fn a_plus(c: &CfkComplex, k: i64) -> Result<AkResult> {
    let mut depth = default_depth(c);
    let mut prev = a_plus_at_depth(c, k, depth).ok();
    for _ in 0..MAX_DOUBLINGS {
        depth *= 2;
        let next = a_plus_at_depth(c, k, depth);
        if let (Some(p), Ok(n)) = (&prev, &next) {
            if p == n {
                return next;
            }
        }
        if let Err(Error::InvalidComplex(m)) = next {
            return Err(Error::InvalidComplex(m));
        }
        prev = next.ok();
    }
    Err(Error::Truncation(depth))
}

/// `H_k = V_{-k}`.
pub fn big_h(c: &CfkComplex, k: i64) -> Result<i64> {
    Ok(a_plus(c, -k)?.big_v)
}

/// `1 + max{k : ker v_k ≠ 0}`.
pub fn genus(c: &CfkComplex) -> Result<i64> {
    let (_, a_max) = c.alexander_span();
    let mut k = a_max;
    loop {
        if !a_plus(c, k)?.kernel_is_zero() {
            return Ok(k + 1);
        }
        k -= 1;
    }
}
