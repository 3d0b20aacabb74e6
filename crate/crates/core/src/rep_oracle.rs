//! Explicit representations of Dynkin quivers over the rationals.
//!
//! Hom and Ext^1 come from the intertwiner map
//! `Phi(f)_a = N_a f_s - f_t M_a` (`a: s -> t`): Hom is its kernel and Ext^1
//! its cokernel. Decomposition solves the Hom-count system against all
//! indecomposables.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ar_quiver::{DynkinQuiver, HeightFunction};
use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix, Rat};
use crate::root_system::{simple_reflection, RootVec};

const DEFAULT_SEED: u64 = 0x5eed_1ab5_c0de_2024;
const RANDOM_ATTEMPTS: u64 = 16;

/// Base seed for [`indec_rep`]; `RMX_SEED` overrides it.
pub fn base_seed() -> u64 {
    static SEED: OnceLock<u64> = OnceLock::new();
    *SEED.get_or_init(|| {
        std::env::var("RMX_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep {
    q: DynkinQuiver,
    dims: Vec<usize>,
    // indexed like q.arrows(); shape dims[target] x dims[source]
    mats: Vec<Matrix>,
}

impl QuiverRep {
    pub fn new(q: DynkinQuiver, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        let n = q.cartan().rank();
        if dims.len() != n || mats.len() != q.arrows().len() {
            return Err(Error::Precondition("representation data has the wrong length".into()));
        }
        for (&(s, t), m) in q.arrows().iter().zip(&mats) {
            if m.rows() != dims[t - 1] || m.cols() != dims[s - 1] {
                return Err(Error::Precondition(format!("matrix on {s}->{t} has the wrong shape")));
            }
        }
        Ok(QuiverRep { q, dims, mats })
    }

    pub fn zero(q: &DynkinQuiver) -> Self {
        let n = q.cartan().rank();
        let mats = q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        QuiverRep { q: q.clone(), dims: vec![0; n], mats }
    }

    pub fn simple(q: &DynkinQuiver, i: usize) -> Self {
        let n = q.cartan().rank();
        let mut dims = vec![0; n];
        dims[i - 1] = 1;
        let mats = q.arrows().iter().map(|&(s, t)| Matrix::zeros(dims[t - 1], dims[s - 1])).collect();
        QuiverRep { q: q.clone(), dims, mats }
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.q
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i - 1]
    }

    pub fn dim_vector(&self) -> RootVec {
        RootVec(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> QuiverRep {
        assert_eq!(self.q, other.q, "direct sum over different quivers");
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                m
            })
            .collect();
        QuiverRep { q: self.q.clone(), dims, mats }
    }
}

/// A basis of `Hom(M, N)`; each element is one matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomBasis {
    pub dimension: usize,
    pub basis: Vec<Vec<Matrix>>,
}

struct Intertwiner {
    phi: Matrix,
    var_offsets: Vec<usize>,
    eq_offsets: Vec<usize>,
}

fn same_quiver(m: &QuiverRep, n: &QuiverRep) -> Result<()> {
    if m.q != n.q {
        return Err(Error::Precondition("representations of different quivers".into()));
    }
    Ok(())
}

fn intertwiner(m: &QuiverRep, n: &QuiverRep) -> Intertwiner {
    let mut var_offsets = Vec::with_capacity(m.dims.len());
    let mut nvars = 0;
    for u in 0..m.dims.len() {
        var_offsets.push(nvars);
        nvars += n.dims[u] * m.dims[u];
    }
    let mut eq_offsets = Vec::with_capacity(m.mats.len());
    let mut neqs = 0;
    for &(s, t) in m.q.arrows() {
        eq_offsets.push(neqs);
        neqs += n.dims[t - 1] * m.dims[s - 1];
    }
    let mut phi = Matrix::zeros(neqs, nvars);
    for (k, &(s, t)) in m.q.arrows().iter().enumerate() {
        let (s, t) = (s - 1, t - 1);
        let (ma, na) = (&m.mats[k], &n.mats[k]);
        let (ms, mt, ns, nt) = (m.dims[s], m.dims[t], n.dims[s], n.dims[t]);
        for r in 0..nt {
            for c in 0..ms {
                let row = eq_offsets[k] + r * ms + c;
                // (N_a f_s)[r, c] = sum_l N_a[r, l] f_s[l, c]
                for l in 0..ns {
                    let v = &na[(r, l)];
                    if !v.is_zero() {
                        phi[(row, var_offsets[s] + l * ms + c)] += v;
                    }
                }
                // (f_t M_a)[r, c] = sum_l f_t[r, l] M_a[l, c]
                for l in 0..mt {
                    let v = &ma[(l, c)];
                    if !v.is_zero() {
                        phi[(row, var_offsets[t] + r * mt + l)] -= v;
                    }
                }
            }
        }
    }
    Intertwiner { phi, var_offsets, eq_offsets }
}

/// `(dim Hom(M, N), dim Ext^1(M, N))` from a single rank computation.
pub fn hom_ext_dims(m: &QuiverRep, n: &QuiverRep) -> Result<(usize, usize)> {
    same_quiver(m, n)?;
    let sys = intertwiner(m, n);
    let rank = sys.phi.rank();
    Ok((sys.phi.cols() - rank, sys.phi.rows() - rank))
}

pub fn hom_dim_rep(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    hom_ext_dims(m, n).map(|(h, _)| h)
}

pub fn ext1_dim_rep(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    hom_ext_dims(m, n).map(|(_, e)| e)
}

pub fn hom_basis(m: &QuiverRep, n: &QuiverRep) -> Result<HomBasis> {
    same_quiver(m, n)?;
    let sys = intertwiner(m, n);
    let basis: Vec<Vec<Matrix>> = sys
        .phi
        .nullspace()
        .into_iter()
        .map(|v| {
            (0..m.dims.len())
                .map(|u| {
                    let (rows, cols) = (n.dims[u], m.dims[u]);
                    let start = sys.var_offsets[u];
                    Matrix::from_rows(rows, cols, v[start..start + rows * cols].to_vec())
                })
                .collect()
        })
        .collect();
    Ok(HomBasis { dimension: basis.len(), basis })
}

/// The middle term of a non-split extension `0 -> sub -> E -> quot -> 0`.
pub fn nonsplit_extension(sub: &QuiverRep, quot: &QuiverRep) -> Result<QuiverRep> {
    same_quiver(sub, quot)?;
    let sys = intertwiner(quot, sub);
    let coker = sys.phi.left_nullspace();
    if coker.len() != 1 {
        return Err(Error::ExtNotOneDimensional(coker.len()));
    }
    // a coordinate vector outside im(Phi) represents the nonzero class
    let pick = coker[0].iter().position(|v| !v.is_zero()).expect("nonzero cokernel functional");
    let q = &sub.q;
    let dims: Vec<usize> = sub.dims.iter().zip(&quot.dims).map(|(a, b)| a + b).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            let (s, t) = (s - 1, t - 1);
            let mut b = Matrix::zeros(dims[t], dims[s]);
            b.set_block(0, 0, &sub.mats[k]);
            b.set_block(sub.dims[t], sub.dims[s], &quot.mats[k]);
            let (rows, cols) = (sub.dims[t], quot.dims[s]);
            let start = sys.eq_offsets[k];
            if (start..start + rows * cols).contains(&pick) {
                let off = pick - start;
                b[(off / cols, sub.dims[s] + off % cols)] = Rat::one();
            }
            b
        })
        .collect();
    Ok(QuiverRep { q: q.clone(), dims, mats })
}

fn check_morphism(m: &QuiverRep, n: &QuiverRep, g: &[Matrix]) -> Result<()> {
    same_quiver(m, n)?;
    let ok = g.len() == m.dims.len()
        && g.iter().enumerate().all(|(u, gu)| gu.rows() == n.dims[u] && gu.cols() == m.dims[u]);
    if !ok {
        return Err(Error::Precondition("morphism has the wrong shape".into()));
    }
    Ok(())
}

/// The kernel of `g: M -> N` as a subrepresentation of `M`.
pub fn kernel_rep(m: &QuiverRep, n: &QuiverRep, g: &[Matrix]) -> Result<QuiverRep> {
    check_morphism(m, n, g)?;
    let incl: Vec<Matrix> =
        g.iter().enumerate().map(|(u, gu)| Matrix::from_columns(m.dims[u], &gu.nullspace())).collect();
    let mut mats = Vec::with_capacity(m.mats.len());
    for (k, &(s, t)) in m.q.arrows().iter().enumerate() {
        let left = incl[t - 1].left_inverse().expect("kernel basis has full column rank");
        mats.push(left.mul(&m.mats[k]).mul(&incl[s - 1]));
    }
    let dims = incl.iter().map(Matrix::cols).collect();
    Ok(QuiverRep { q: m.q.clone(), dims, mats })
}

/// The cokernel of `g: M -> N` as a quotient of `N`.
pub fn cokernel_rep(m: &QuiverRep, n: &QuiverRep, g: &[Matrix]) -> Result<QuiverRep> {
    check_morphism(m, n, g)?;
    let proj: Vec<Matrix> = g
        .iter()
        .enumerate()
        .map(|(u, gu)| {
            let rows = gu.left_nullspace();
            let c = rows.len();
            Matrix::from_rows(c, n.dims[u], rows.into_iter().flatten().collect())
        })
        .collect();
    let mut mats = Vec::with_capacity(n.mats.len());
    for (k, &(s, t)) in n.q.arrows().iter().enumerate() {
        let right = proj[s - 1].right_inverse().expect("projection has full row rank");
        mats.push(proj[t - 1].mul(&n.mats[k]).mul(&right));
    }
    let dims = g.iter().enumerate().map(|(u, gu)| n.dims[u] - gu.rank()).collect();
    Ok(QuiverRep { q: n.q.clone(), dims, mats })
}

/// BGP reflection at `i`: `F+` if `i` is a sink, `F-` if it is a source. The
/// result lives on `q.reflected_at(i)`.
pub fn reflection_functor(r: &QuiverRep, i: usize) -> Result<QuiverRep> {
    let q = &r.q;
    q.cartan().check_vertex(i)?;
    let touching: Vec<usize> =
        (0..q.arrows().len()).filter(|&k| q.arrows()[k].0 == i || q.arrows()[k].1 == i).collect();
    let other = |k: usize| {
        let (s, t) = q.arrows()[k];
        if s == i {
            t
        } else {
            s
        }
    };
    let total: usize = touching.iter().map(|&k| r.dims[other(k) - 1]).sum();
    let di = r.dims[i - 1];
    let mut mats = r.mats.clone();
    let mut dims = r.dims.clone();
    if q.is_sink(i) {
        // kernel of the sum map  (+)_j V_j -> V_i
        let mut h = Matrix::zeros(di, total);
        let mut col = 0;
        for &k in &touching {
            h.set_block(0, col, &r.mats[k]);
            col += r.dims[other(k) - 1];
        }
        let kern = Matrix::from_columns(total, &h.nullspace());
        let mut row = 0;
        for &k in &touching {
            let dj = r.dims[other(k) - 1];
            mats[k] = kern.block(row, 0, dj, kern.cols());
            row += dj;
        }
        dims[i - 1] = kern.cols();
    } else if q.is_source(i) {
        // cokernel of the diagonal map  V_i -> (+)_j V_j
        let mut h = Matrix::zeros(total, di);
        let mut row = 0;
        for &k in &touching {
            h.set_block(row, 0, &r.mats[k]);
            row += r.dims[other(k) - 1];
        }
        let rows = h.left_nullspace();
        let c = rows.len();
        let proj = Matrix::from_rows(c, total, rows.into_iter().flatten().collect());
        let mut col = 0;
        for &k in &touching {
            let dj = r.dims[other(k) - 1];
            mats[k] = proj.block(0, col, c, dj);
            col += dj;
        }
        dims[i - 1] = c;
    } else {
        return Err(Error::NotSinkOrSource(i));
    }
    Ok(QuiverRep { q: q.reflected_at(i), dims, mats })
}

fn mix(mut h: u64, v: u64) -> u64 {
    h ^= v.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^ (h >> 31)
}

fn rep_seed(q: &DynkinQuiver, alpha: &RootVec, base: u64) -> u64 {
    let mut h = mix(base, q.cartan().rank() as u64);
    for &(s, t) in q.arrows() {
        h = mix(h, (s as u64) << 32 | t as u64);
    }
    for &a in &alpha.0 {
        h = mix(h, a as u64);
    }
    h
}

fn check_root(q: &DynkinQuiver, alpha: &RootVec) -> Result<()> {
    if !q.cartan().is_positive_root(alpha) {
        return Err(Error::NotPositiveRoot(alpha.0.clone()));
    }
    Ok(())
}

/// An indecomposable representation of dimension `alpha`, certified by
/// `dim End = 1`.
pub fn indec_rep(q: &DynkinQuiver, alpha: &RootVec) -> Result<QuiverRep> {
    indec_rep_with_seed(q, alpha, base_seed())
}

pub fn indec_rep_with_seed(q: &DynkinQuiver, alpha: &RootVec, seed: u64) -> Result<QuiverRep> {
    check_root(q, alpha)?;
    if alpha.height() == 1 {
        let i = alpha.0.iter().position(|&a| a == 1).expect("simple root") + 1;
        return Ok(QuiverRep::simple(q, i));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rep_seed(q, alpha, seed));
    let dims: Vec<usize> = alpha.0.iter().map(|&a| a as usize).collect();
    for _ in 0..RANDOM_ATTEMPTS {
        let mats = q
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let (r, c) = (dims[t - 1], dims[s - 1]);
                let data = (0..r * c).map(|_| rat(rng.gen_range(-2..=2))).collect();
                Matrix::from_rows(r, c, data)
            })
            .collect();
        let rep = QuiverRep { q: q.clone(), dims: dims.clone(), mats };
        if hom_dim_rep(&rep, &rep)? == 1 {
            return Ok(rep);
        }
    }
    indec_rep_bgp(q, alpha)
}

/// Deterministic construction: reflect at sinks until `alpha` becomes simple,
/// then apply the inverse reflection functors to the simple representation.
pub fn indec_rep_bgp(q: &DynkinQuiver, alpha: &RootVec) -> Result<QuiverRep> {
    check_root(q, alpha)?;
    let cd = q.cartan();
    let mut xi = HeightFunction::standard(q).values().to_vec();
    let mut cur = q.clone();
    let mut v = alpha.clone();
    let mut seq = Vec::new();
    let limit = cd.rank() * cd.coxeter_number();
    let sink = loop {
        let i = cd.vertices().min_by_key(|&i| (xi[i - 1], i)).expect("nonempty");
        debug_assert!(cur.is_sink(i));
        if v == RootVec::simple(cd.rank(), i) {
            break i;
        }
        if seq.len() > limit {
            return Err(Error::Decomposition("reflection sequence did not terminate".into()));
        }
        v = simple_reflection(cd, i, &v);
        seq.push(i);
        cur = cur.reflected_at(i);
        xi[i - 1] += 2;
    };
    let mut rep = QuiverRep::simple(&cur, sink);
    for &i in seq.iter().rev() {
        rep = reflection_functor(&rep, i)?;
    }
    debug_assert_eq!(&rep.q, q);
    Ok(rep)
}

/// Krull-Schmidt decomposition by Hom counts, with the indecomposables and
/// their Hom matrix cached per quiver.
pub struct Decomposer {
    q: DynkinQuiver,
    roots: Vec<RootVec>,
    reps: Vec<QuiverRep>,
    index: HashMap<RootVec, usize>,
    hom_cache: Mutex<HashMap<(usize, usize), usize>>,
}

impl Decomposer {
    pub fn new(q: &DynkinQuiver) -> Result<Self> {
        let roots = q.cartan().positive_roots().to_vec();
        let reps = roots.iter().map(|a| indec_rep(q, a)).collect::<Result<Vec<_>>>()?;
        let index = roots.iter().enumerate().map(|(k, a)| (a.clone(), k)).collect();
        Ok(Decomposer { q: q.clone(), roots, reps, index, hom_cache: Mutex::new(HashMap::new()) })
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.q
    }

    pub fn rep(&self, alpha: &RootVec) -> Result<&QuiverRep> {
        self.index.get(alpha).map(|&k| &self.reps[k]).ok_or_else(|| Error::NotPositiveRoot(alpha.0.clone()))
    }

    fn hom_between(&self, a: usize, b: usize) -> Result<usize> {
        if let Some(&h) = self.hom_cache.lock().expect("cache lock").get(&(a, b)) {
            return Ok(h);
        }
        let h = hom_dim_rep(&self.reps[a], &self.reps[b])?;
        self.hom_cache.lock().expect("cache lock").insert((a, b), h);
        Ok(h)
    }

    pub fn decompose(&self, r: &QuiverRep) -> Result<BTreeMap<RootVec, usize>> {
        if r.q != self.q {
            return Err(Error::Precondition("representation of a different quiver".into()));
        }
        let dims = r.dim_vector();
        let cand: Vec<usize> = (0..self.roots.len())
            .filter(|&k| self.roots[k].0.iter().zip(&dims.0).all(|(a, d)| a <= d))
            .collect();
        if cand.is_empty() {
            return if r.is_zero() {
                Ok(BTreeMap::new())
            } else {
                Err(Error::Decomposition("no roots fit the dimension vector".into()))
            };
        }
        let m = cand.len();
        let mut h = Matrix::zeros(m, m);
        let mut v = Vec::with_capacity(m);
        for (x, &g) in cand.iter().enumerate() {
            for (y, &d) in cand.iter().enumerate() {
                h[(x, y)] = rat(self.hom_between(g, d)? as i64);
            }
            v.push(rat(hom_dim_rep(&self.reps[g], r)? as i64));
        }
        let inv = h.inverse().ok_or_else(|| Error::Decomposition("Hom matrix is singular".into()))?;
        let mu = inv.mul(&Matrix::from_columns(m, &[v]));
        let mut out = BTreeMap::new();
        let mut total = RootVec::zero(dims.len());
        for (x, &g) in cand.iter().enumerate() {
            let c = &mu[(x, 0)];
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Decomposition(format!("multiplicity {c} is not a natural number")));
            }
            let c: i64 = c.to_integer().try_into().expect("small multiplicity");
            if c > 0 {
                total = &total + &self.roots[g].scaled(c);
                out.insert(self.roots[g].clone(), c as usize);
            }
        }
        if total != dims {
            return Err(Error::Decomposition("multiplicities do not add up to the dimension".into()));
        }
        Ok(out)
    }
}

pub fn decompose(r: &QuiverRep) -> Result<BTreeMap<RootVec, usize>> {
    Decomposer::new(&r.q)?.decompose(r)
}
