//! The quiver Gamma on the repetition grid, families indexed by `J`, the
//! type-A subquiver families, Kostant partitions and graded nilpotent orbits.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ar_quiver::{ext1_dim, DeltaVertex, DynkinQuiver, Happel, HeightFunction, IndecObject};
use crate::denominators::Monomial;
use crate::error::{Error, Result};
use crate::quantum_cartan::CTildeTable;
use crate::root_system::{build_cartan_with_parity, Family, LieType, RootVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaArrow<V> {
    pub from: V,
    pub to: V,
    pub mult: u32,
}

/// A finite full subquiver of Gamma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaWindow {
    pub vertices: Vec<DeltaVertex>,
    pub arrows: Vec<GammaArrow<DeltaVertex>>,
}

impl GammaWindow {
    pub fn arrow_mult(&self, from: DeltaVertex, to: DeltaVertex) -> u32 {
        self.arrows.iter().find(|a| a.from == from && a.to == to).map_or(0, |a| a.mult)
    }
}

/// Full subquiver of Gamma on `vertices`: `dim Ext^1(H(x), H(y))` arrows `x -> y`.
pub fn gamma_on(t: &CTildeTable, vertices: Vec<DeltaVertex>) -> GammaWindow {
    let mut arrows = Vec::new();
    for &x in &vertices {
        for &y in &vertices {
            let mult = ext1_dim(t, y, x);
            if mult > 0 {
                arrows.push(GammaArrow { from: x, to: y, mult });
            }
        }
    }
    GammaWindow { vertices, arrows }
}

/// All grid vertices with `p_lo <= p <= p_hi`, ordered by `(p, i)`. An empty
/// range gives the empty quiver.
pub fn gamma_window(t: &CTildeTable, p_lo: i64, p_hi: i64) -> GammaWindow {
    let cd = t.cartan();
    let mut vertices = Vec::new();
    for p in p_lo..=p_hi {
        for i in cd.vertices() {
            if let Ok(v) = DeltaVertex::new(cd, i, p) {
                vertices.push(v);
            }
        }
    }
    gamma_on(t, vertices)
}

/// An injective map from an interval `[j_lo, j_hi]` of `J` into the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMap {
    j_lo: i64,
    xs: Vec<DeltaVertex>,
}

impl FamilyMap {
    pub fn new(j_lo: i64, xs: Vec<DeltaVertex>) -> Result<Self> {
        let distinct: HashSet<_> = xs.iter().collect();
        if distinct.len() != xs.len() {
            return Err(Error::Precondition("family map is not injective".into()));
        }
        Ok(FamilyMap { j_lo, xs })
    }

    pub fn j_lo(&self) -> i64 {
        self.j_lo
    }

    /// Last index; `j_lo - 1` for the empty family.
    pub fn j_hi(&self) -> i64 {
        self.j_lo + self.xs.len() as i64 - 1
    }

    pub fn get(&self, j: i64) -> Option<DeltaVertex> {
        usize::try_from(j - self.j_lo).ok().and_then(|k| self.xs.get(k).copied())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, DeltaVertex)> + '_ {
        self.xs.iter().enumerate().map(move |(k, &x)| (self.j_lo + k as i64, x))
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Gamma restricted to the image of a family, with vertices renamed by `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaJ {
    pub vertices: Vec<(i64, DeltaVertex)>,
    pub arrows: Vec<GammaArrow<i64>>,
}

pub fn gamma_j(t: &CTildeTable, fam: &FamilyMap) -> GammaJ {
    let mut arrows = Vec::new();
    for (j, x) in fam.iter() {
        for (k, y) in fam.iter() {
            let mult = ext1_dim(t, y, x);
            if mult > 0 {
                arrows.push(GammaArrow { from: j, to: k, mult });
            }
        }
    }
    GammaJ { vertices: fam.iter().collect(), arrows }
}

/// Whether `gamma_j(fam)` is the chain `j -> j+1` with simple arrows.
pub fn verify_a_infinity(t: &CTildeTable, fam: &FamilyMap) -> bool {
    let g = gamma_j(t, fam);
    let expected: Vec<GammaArrow<i64>> =
        (fam.j_lo()..fam.j_hi()).map(|j| GammaArrow { from: j, to: j + 1, mult: 1 }).collect();
    let mut got = g.arrows;
    got.sort();
    got == expected
}

/// The `A_infinity` root `alpha(j; l) = alpha_j + ... + alpha_{j+l-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JRoot {
    pub start: i64,
    pub len: u32,
}

impl JRoot {
    pub fn new(start: i64, len: u32) -> Self {
        assert!(len >= 1, "roots have positive length");
        JRoot { start, len }
    }

    pub fn end(&self) -> i64 {
        self.start + i64::from(self.len) - 1
    }

    pub fn contains(&self, j: i64) -> bool {
        self.start <= j && j <= self.end()
    }
}

impl fmt::Display for JRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a({};{})", self.start, self.len)
    }
}

/// Value of `x(alpha)`: a grid vertex, or zero for roots of length `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XRoot {
    Vertex(DeltaVertex),
    Zero,
}

impl XRoot {
    pub fn monomial(&self) -> Monomial {
        match self {
            XRoot::Vertex(x) => Monomial::y_at(*x),
            XRoot::Zero => Monomial::one(),
        }
    }
}

/// The type-A family attached to `(Q, xi, N)`: the subquiver `Q'` on
/// `1..N-1` must be the path `1 -> 2 -> ... -> N-1`.
#[derive(Debug, Clone)]
pub struct TypeAConfig {
    frame: Happel,
    sub: Happel,
    cap: usize,
}

impl TypeAConfig {
    pub fn new(q: &DynkinQuiver, xi: &HeightFunction, cap: usize) -> Result<Self> {
        let cd = q.cartan();
        if cap < 2 || cap > cd.rank() + 1 {
            return Err(Error::Precondition(format!("N = {cap} outside 2..={}", cd.rank() + 1)));
        }
        let m = cap - 1;
        let inner: Vec<(usize, usize)> =
            q.arrows().iter().copied().filter(|&(s, t)| s <= m && t <= m).collect();
        let path: Vec<(usize, usize)> = (1..m).map(|i| (i, i + 1)).collect();
        let mut sorted = inner.clone();
        sorted.sort();
        if sorted != path {
            return Err(Error::Precondition(format!(
                "subquiver on 1..={m} is not the monotone path 1 -> ... -> {m}"
            )));
        }
        let sub_cd = build_cartan_with_parity(LieType::new(Family::A, m)?, cd.parity_choice());
        let sub_q = DynkinQuiver::new(sub_cd, inner)?;
        let sub_xi = HeightFunction::new(&sub_q, xi.values()[..m].to_vec())?;
        Ok(TypeAConfig { frame: Happel::new(q.clone(), xi.clone())?, sub: Happel::new(sub_q, sub_xi)?, cap })
    }

    /// Monotone orientation with `xi_1 = -2`, the normalization of the closed forms.
    pub fn standard(cd: &crate::root_system::CartanData, cap: usize) -> Result<Self> {
        let q = DynkinQuiver::monotone(cd);
        let xi = HeightFunction::anchored(&q, 1, -2)?;
        TypeAConfig::new(&q, &xi, cap)
    }

    pub fn frame(&self) -> &Happel {
        &self.frame
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `x(j) = H^{-1}(S_i[-2k])` for `j = i + kN`, `H^{-1}(M_theta[-2k+1])` for `j = kN`.
    pub fn x(&self, j: i64) -> DeltaVertex {
        let n = self.cartan_rank();
        let cap = self.cap as i64;
        let (k, i) = (j.div_euclid(cap), j.rem_euclid(cap));
        let obj = if i == 0 {
            let mut theta = vec![0; n];
            theta[..self.cap - 1].fill(1);
            IndecObject::new(RootVec(theta), -2 * k + 1)
        } else {
            IndecObject::new(RootVec::simple(n, i as usize), -2 * k)
        };
        self.frame.happel_inverse(&obj).expect("positive root")
    }

    fn cartan_rank(&self) -> usize {
        self.frame.cartan().rank()
    }

    pub fn family(&self, j_lo: i64, j_hi: i64) -> Result<FamilyMap> {
        FamilyMap::new(j_lo, (j_lo..=j_hi).map(|j| self.x(j)).collect())
    }

    /// `x(alpha(j; l))`: the vertex of `H_{Q'}(l, xi_l - 2j + 2)` transported
    /// into the grid of `Q`, or zero when `l = N`.
    pub fn x_of_root(&self, root: JRoot) -> Result<XRoot> {
        let l = root.len as usize;
        if l > self.cap {
            return Err(Error::OutOfRange(format!("root length {l} exceeds N = {}", self.cap)));
        }
        if l == self.cap {
            return Ok(XRoot::Zero);
        }
        let p = self.sub.height().get(l) - 2 * root.start + 2;
        let local = self.sub.happel_object(DeltaVertex { i: l, p })?;
        let mut coords = local.root.0;
        coords.resize(self.cartan_rank(), 0);
        let obj = IndecObject::new(RootVec(coords), local.shift);
        Ok(XRoot::Vertex(self.frame.happel_inverse(&obj)?))
    }

    /// `m_nu = prod Y_{x(alpha)}^{nu_alpha}`.
    pub fn m_nu(&self, nu: &KostantPartition) -> Result<Monomial> {
        let mut m = Monomial::one();
        for (&root, &c) in &nu.nu {
            m = m.mul(&self.x_of_root(root)?.monomial().pow(i64::from(c)));
        }
        Ok(m)
    }
}

pub fn type_a_family(
    q: &DynkinQuiver,
    xi: &HeightFunction,
    cap: usize,
    j_lo: i64,
    j_hi: i64,
) -> Result<FamilyMap> {
    TypeAConfig::new(q, xi, cap)?.family(j_lo, j_hi)
}

pub fn x_of_root(q: &DynkinQuiver, xi: &HeightFunction, cap: usize, root: JRoot) -> Result<XRoot> {
    TypeAConfig::new(q, xi, cap)?.x_of_root(root)
}

/// A multiset of `A_infinity` roots summing to `beta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KostantPartition {
    pub nu: BTreeMap<JRoot, u32>,
    pub beta: BTreeMap<i64, u32>,
}

impl KostantPartition {
    /// The partition consisting of a single root.
    pub fn single(root: JRoot) -> Self {
        let beta = (root.start..=root.end()).map(|j| (j, 1)).collect();
        KostantPartition { nu: BTreeMap::from([(root, 1)]), beta }
    }

    pub fn weight(&self) -> BTreeMap<i64, u32> {
        let mut w = BTreeMap::new();
        for (root, &c) in &self.nu {
            for j in root.start..=root.end() {
                *w.entry(j).or_insert(0) += c;
            }
        }
        w
    }

    pub fn max_len(&self) -> u32 {
        self.nu.keys().map(|r| r.len).max().unwrap_or(0)
    }
}

impl fmt::Display for KostantPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.nu.iter().map(|(r, &c)| if c == 1 { r.to_string() } else { format!("{c}*{r}") }).collect();
        write!(f, "{{{}}}", parts.join(" + "))
    }
}

fn strip_zeros(beta: &BTreeMap<i64, u32>) -> BTreeMap<i64, u32> {
    beta.iter().filter(|(_, &d)| d > 0).map(|(&j, &d)| (j, d)).collect()
}

/// All Kostant partitions of `beta` using roots of length at most `max_len`
/// (unbounded for `None`). Intervals are chosen leftmost-first with lengths
/// nonincreasing at a common start, so each multiset appears once.
pub fn kostant_partitions(beta: &BTreeMap<i64, u32>, max_len: Option<u32>) -> Vec<KostantPartition> {
    let beta = strip_zeros(beta);
    let (Some(&lo), Some(&hi)) = (beta.keys().next(), beta.keys().next_back()) else {
        return vec![KostantPartition { nu: BTreeMap::new(), beta }];
    };
    let mut residual: Vec<u32> = (lo..=hi).map(|j| beta.get(&j).copied().unwrap_or(0)).collect();
    let mut acc = Vec::new();
    let mut out = Vec::new();
    enumerate(&mut residual, lo, max_len, None, &mut acc, &mut out, &beta);
    out
}

fn enumerate(
    residual: &mut [u32],
    lo: i64,
    max_len: Option<u32>,
    last: Option<(usize, u32)>,
    acc: &mut Vec<JRoot>,
    out: &mut Vec<KostantPartition>,
    beta: &BTreeMap<i64, u32>,
) {
    let Some(start) = residual.iter().position(|&d| d > 0) else {
        let mut nu = BTreeMap::new();
        for r in acc.iter() {
            *nu.entry(*r).or_insert(0) += 1;
        }
        out.push(KostantPartition { nu, beta: beta.clone() });
        return;
    };
    let room = residual[start..].iter().take_while(|&&d| d > 0).count() as u32;
    let mut cap = max_len.map_or(room, |m| m.min(room));
    if let Some((s, l)) = last {
        if s == start {
            cap = cap.min(l);
        }
    }
    for len in (1..=cap).rev() {
        let span = start..start + len as usize;
        residual[span.clone()].iter_mut().for_each(|d| *d -= 1);
        acc.push(JRoot::new(lo + start as i64, len));
        enumerate(residual, lo, max_len, Some((start, len)), acc, out, beta);
        acc.pop();
        residual[span].iter_mut().for_each(|d| *d += 1);
    }
}

/// `dim Hom(M_[a,b], M_[c,d])` over the monotone `A_infinity` quiver: 1 iff `c <= a <= d <= b`.
pub fn interval_hom(x: JRoot, y: JRoot) -> u32 {
    u32::from(y.start <= x.start && x.start <= y.end() && y.end() <= x.end())
}

/// One entry per `nu` in `KP_{<=N}(beta)` with the dimension of its orbit.
pub fn orbit_census(beta: &BTreeMap<i64, u32>, cap: u32) -> Vec<(KostantPartition, u64)> {
    let dim_g: u64 = beta.values().map(|&d| u64::from(d) * u64::from(d)).sum();
    kostant_partitions(beta, Some(cap))
        .into_iter()
        .map(|nu| {
            let mut end = 0u64;
            for (&a, &ca) in &nu.nu {
                for (&b, &cb) in &nu.nu {
                    end += u64::from(ca) * u64::from(cb) * u64::from(interval_hom(a, b));
                }
            }
            (nu, dim_g - end)
        })
        .collect()
}

/// Every `beta` supported on `[j_lo, j_hi]` with total weight between 1 and `max_weight`.
pub fn betas_up_to(j_lo: i64, j_hi: i64, max_weight: u32) -> Vec<BTreeMap<i64, u32>> {
    let width = (j_hi - j_lo + 1).max(0) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0u32; width];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, j_lo: i64, out: &mut Vec<BTreeMap<i64, u32>>) {
        if k == cur.len() {
            let b: BTreeMap<i64, u32> =
                cur.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, &d)| (j_lo + i as i64, d)).collect();
            if !b.is_empty() {
                out.push(b);
            }
            return;
        }
        for d in 0..=left {
            cur[k] = d;
            rec(k + 1, left - d, cur, j_lo, out);
        }
        cur[k] = 0;
    }
    rec(0, max_weight, &mut cur, j_lo, &mut out);
    out
}
