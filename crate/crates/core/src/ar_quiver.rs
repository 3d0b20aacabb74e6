//! Dynkin quivers, height functions, the Coxeter transformation, and the
//! Happel bijection between the repetition quiver and indecomposable objects
//! of the derived category, computed by knitting on `(root, shift)` pairs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum_cartan::CTildeTable;
use crate::root_system::{simple_reflection, CartanData, RootVec};

/// A vertex `(i, p)` of the repetition quiver; `p - eps_i` is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaVertex {
    pub i: usize,
    pub p: i64,
}

impl DeltaVertex {
    pub fn new(cd: &CartanData, i: usize, p: i64) -> Result<Self> {
        cd.check_vertex(i)?;
        if (p - i64::from(cd.parity(i))).rem_euclid(2) != 0 {
            return Err(Error::ParityMismatch { vertex: i, p });
        }
        Ok(DeltaVertex { i, p })
    }

    pub fn validate(&self, cd: &CartanData) -> Result<()> {
        DeltaVertex::new(cd, self.i, self.p).map(|_| ())
    }
}

impl fmt::Display for DeltaVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.p)
    }
}

impl FromStr for DeltaVertex {
    type Err = Error;

    /// Parses `"i,p"`. Parity is not checked here.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::OutOfRange(format!("expected `i,p`, got `{s}`"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let i = a.trim().parse().map_err(|_| bad())?;
        let p = b.trim().parse().map_err(|_| bad())?;
        Ok(DeltaVertex { i, p })
    }
}

/// An indecomposable object `M_root[shift]` of the derived category.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndecObject {
    pub root: RootVec,
    pub shift: i64,
}

impl IndecObject {
    pub fn new(root: RootVec, shift: i64) -> Self {
        IndecObject { root, shift }
    }

    /// Dimension vector with the sign `(-1)^shift`.
    pub fn signed_dim(&self) -> RootVec {
        if self.shift.rem_euclid(2) == 0 {
            self.root.clone()
        } else {
            -&self.root
        }
    }
}

impl fmt::Display for IndecObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}[{}]", self.root, self.shift)
    }
}

/// An orientation of the Dynkin diagram: one arrow `(source, target)` per edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinQuiver {
    cd: CartanData,
    arrows: Vec<(usize, usize)>,
}

impl std::hash::Hash for CartanData {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.lie_type().hash(state);
        self.parity_choice().hash(state);
    }
}

impl DynkinQuiver {
    /// Arrows are stored in the order of `cd.adjacency()`.
    pub fn new(cd: CartanData, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(cd.adjacency().len());
        for &(a, b) in cd.adjacency() {
            let found: Vec<_> =
                arrows.iter().filter(|&&(u, v)| (u, v) == (a, b) || (u, v) == (b, a)).collect();
            match found.as_slice() {
                [one] => sorted.push(**one),
                [] => return Err(Error::InvalidQuiver(format!("edge {a}-{b} has no arrow"))),
                _ => return Err(Error::InvalidQuiver(format!("edge {a}-{b} oriented twice"))),
            }
        }
        if arrows.len() != sorted.len() {
            return Err(Error::InvalidQuiver(format!(
                "{} arrows given for {} edges",
                arrows.len(),
                sorted.len()
            )));
        }
        Ok(DynkinQuiver { cd, arrows: sorted })
    }

    /// Every edge `i - j` with `i < j` oriented `i -> j`. In types A, D, E this
    /// is the orientation `1 -> 2 -> ...` with the branch arrows pointing away
    /// from the branch vertex.
    pub fn monotone(cd: &CartanData) -> Self {
        let arrows = cd.adjacency().to_vec();
        DynkinQuiver { cd: cd.clone(), arrows }
    }

    /// Every arrow reversed relative to [`DynkinQuiver::monotone`].
    pub fn anti_monotone(cd: &CartanData) -> Self {
        let arrows = cd.adjacency().iter().map(|&(a, b)| (b, a)).collect();
        DynkinQuiver { cd: cd.clone(), arrows }
    }

    /// Sink-source orientation whose sources are the vertices with parity `source_parity`.
    pub fn sink_source(cd: &CartanData, source_parity: u8) -> Self {
        let arrows = cd
            .adjacency()
            .iter()
            .map(|&(a, b)| if cd.parity(a) == source_parity { (a, b) } else { (b, a) })
            .collect();
        DynkinQuiver { cd: cd.clone(), arrows }
    }

    pub fn random(cd: &CartanData, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arrows =
            cd.adjacency().iter().map(|&(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) }).collect();
        DynkinQuiver { cd: cd.clone(), arrows }
    }

    /// All `2^(#edges)` orientations, in a fixed order starting with the monotone one.
    pub fn all_orientations(cd: &CartanData) -> Vec<Self> {
        let edges = cd.adjacency();
        (0u64..1 << edges.len())
            .map(|mask| {
                let arrows = edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if mask >> k & 1 == 0 { (a, b) } else { (b, a) })
                    .collect();
                DynkinQuiver { cd: cd.clone(), arrows }
            })
            .collect()
    }

    /// Parses a comma-separated list of directed edges such as `"2>1,2>3"`.
    pub fn parse(cd: &CartanData, text: &str) -> Result<Self> {
        let mut arrows = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) =
                part.split_once('>').ok_or_else(|| Error::InvalidQuiver(format!("bad arrow `{part}`")))?;
            let a: usize =
                a.trim().parse().map_err(|_| Error::InvalidQuiver(format!("bad arrow `{part}`")))?;
            let b: usize =
                b.trim().parse().map_err(|_| Error::InvalidQuiver(format!("bad arrow `{part}`")))?;
            arrows.push((a, b));
        }
        DynkinQuiver::new(cd.clone(), arrows)
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cd
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn has_arrow(&self, u: usize, v: usize) -> bool {
        self.arrows.contains(&(u, v))
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(u, _)| u != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(_, v)| v != i)
    }

    /// The quiver with every arrow at `i` reversed.
    pub fn reflected_at(&self, i: usize) -> Self {
        let arrows =
            self.arrows.iter().map(|&(u, v)| if u == i || v == i { (v, u) } else { (u, v) }).collect();
        DynkinQuiver { cd: self.cd.clone(), arrows }
    }

    pub fn describe(&self) -> String {
        self.arrows.iter().map(|(u, v)| format!("{u}>{v}")).collect::<Vec<_>>().join(",")
    }
}

/// A height function: `xi_i - eps_i` even and `xi_i = xi_j + 1` whenever `i -> j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightFunction(Vec<i64>);

impl HeightFunction {
    pub fn new(q: &DynkinQuiver, values: Vec<i64>) -> Result<Self> {
        let cd = q.cartan();
        if values.len() != cd.rank() {
            return Err(Error::InvalidHeight(format!("{} values for rank {}", values.len(), cd.rank())));
        }
        for i in cd.vertices() {
            if (values[i - 1] - i64::from(cd.parity(i))).rem_euclid(2) != 0 {
                return Err(Error::InvalidHeight(format!("xi_{i} has the wrong parity")));
            }
        }
        for &(u, v) in q.arrows() {
            if values[u - 1] != values[v - 1] + 1 {
                return Err(Error::InvalidHeight(format!("xi_{u} != xi_{v} + 1")));
            }
        }
        Ok(HeightFunction(values))
    }

    /// The unique height function with `xi_vertex = value`.
    pub fn anchored(q: &DynkinQuiver, vertex: usize, value: i64) -> Result<Self> {
        let cd = q.cartan();
        cd.check_vertex(vertex)?;
        let n = cd.rank();
        let mut vals: Vec<Option<i64>> = vec![None; n];
        vals[vertex - 1] = Some(value);
        let mut stack = vec![vertex];
        while let Some(u) = stack.pop() {
            let xu = vals[u - 1].expect("visited");
            for &w in cd.neighbors(u) {
                if vals[w - 1].is_none() {
                    vals[w - 1] = Some(if q.has_arrow(u, w) { xu - 1 } else { xu + 1 });
                    stack.push(w);
                }
            }
        }
        HeightFunction::new(q, vals.into_iter().map(|v| v.expect("connected")).collect())
    }

    /// The height function with `xi_1 = eps_1`.
    pub fn standard(q: &DynkinQuiver) -> Self {
        let e1 = i64::from(q.cartan().parity(1));
        HeightFunction::anchored(q, 1, e1).expect("parity of the anchor matches")
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// Shifts every value by the even integer `by`.
    pub fn shifted(&self, by: i64) -> Result<Self> {
        if by.rem_euclid(2) != 0 {
            return Err(Error::InvalidHeight(format!("shift {by} is odd")));
        }
        Ok(HeightFunction(self.0.iter().map(|x| x + by).collect()))
    }
}

/// Vertices sorted by `xi` descending, ties broken by vertex index. The
/// Coxeter element is `tau = r_{w[0]} r_{w[1]} ... r_{w[n-1]}`.
pub fn coxeter_word(q: &DynkinQuiver, xi: &HeightFunction) -> Vec<usize> {
    let mut word: Vec<usize> = q.cartan().vertices().collect();
    word.sort_by_key(|&i| (std::cmp::Reverse(xi.get(i)), i));
    word
}

/// Applies `tau^times` (or `tau^{-|times|}`) to `v`.
pub fn coxeter_apply(cd: &CartanData, word: &[usize], v: &RootVec, times: i64) -> RootVec {
    let mut out = v.clone();
    if times >= 0 {
        for _ in 0..times {
            for &i in word.iter().rev() {
                out = simple_reflection(cd, i, &out);
            }
        }
    } else {
        for _ in 0..-times {
            for &i in word {
                out = simple_reflection(cd, i, &out);
            }
        }
    }
    out
}

/// Dimension vector of the injective hull of `S_i`: the sum of `alpha_j` over
/// all `j` with an oriented path `j -> ... -> i`.
pub fn gamma_vector(q: &DynkinQuiver, i: usize) -> RootVec {
    let n = q.cartan().rank();
    let mut reached = vec![false; n];
    reached[i - 1] = true;
    let mut stack = vec![i];
    while let Some(v) = stack.pop() {
        for &(a, b) in q.arrows() {
            if b == v && !reached[a - 1] {
                reached[a - 1] = true;
                stack.push(a);
            }
        }
    }
    RootVec(reached.into_iter().map(i64::from).collect())
}

/// `<a, b> = sum_i a_i b_i - sum_{u -> v} a_u b_v`.
pub fn euler_form(q: &DynkinQuiver, a: &RootVec, b: &RootVec) -> i64 {
    let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    let off: i64 = q.arrows().iter().map(|&(u, v)| a.0[u - 1] * b.0[v - 1]).sum();
    diag - off
}

/// A Dynkin quiver together with a height function, with the data needed to
/// evaluate the Happel bijection in both directions.
#[derive(Debug, Clone)]
pub struct Happel {
    q: DynkinQuiver,
    xi: HeightFunction,
    word: Vec<usize>,
    gamma: Vec<RootVec>,
    // positions of the shift-0 objects (modules)
    modules: HashMap<RootVec, DeltaVertex>,
}

impl Happel {
    pub fn new(q: DynkinQuiver, xi: HeightFunction) -> Result<Self> {
        let xi = HeightFunction::new(&q, xi.0)?;
        let word = coxeter_word(&q, &xi);
        let gamma = q.cartan().vertices().map(|i| gamma_vector(&q, i)).collect();
        let mut frame = Happel { q, xi, word, gamma, modules: HashMap::new() };
        let cd = frame.q.cartan().clone();
        for i in cd.vertices() {
            let mut obj = IndecObject::new(frame.gamma(i).clone(), 0);
            let mut p = frame.xi.get(i);
            while obj.shift == 0 {
                frame.modules.insert(obj.root.clone(), DeltaVertex { i, p });
                obj = frame.tau_object(&obj, 1);
                p -= 2;
            }
        }
        debug_assert_eq!(frame.modules.len(), cd.positive_roots().len());
        Ok(frame)
    }

    /// The frame of `q` with its standard height function.
    pub fn standard(q: DynkinQuiver) -> Self {
        let xi = HeightFunction::standard(&q);
        Happel::new(q, xi).expect("standard height function is valid")
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.q
    }

    pub fn cartan(&self) -> &CartanData {
        self.q.cartan()
    }

    pub fn height(&self) -> &HeightFunction {
        &self.xi
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn gamma(&self, i: usize) -> &RootVec {
        &self.gamma[i - 1]
    }

    pub fn tau(&self, v: &RootVec, times: i64) -> RootVec {
        coxeter_apply(self.q.cartan(), &self.word, v, times)
    }

    /// Knitting step: `tau` on `(root, shift)`, with a sign flip lowering the
    /// shift by one (`tau P_i = I_i[-1]`); negative `times` runs backwards.
    pub fn tau_object(&self, obj: &IndecObject, times: i64) -> IndecObject {
        let mut cur = obj.clone();
        let (step, dshift) = if times >= 0 { (1, -1) } else { (-1, 1) };
        for _ in 0..times.abs() {
            let v = self.tau(&cur.root, step);
            cur = if v.is_nonnegative() {
                IndecObject::new(v, cur.shift)
            } else {
                IndecObject::new(-v, cur.shift + dshift)
            };
        }
        cur
    }

    /// `H_Q(i, p) = tau^{(xi_i - p)/2}(I_i)`, by walking from `(gamma_i, 0)`.
    pub fn happel_object(&self, x: DeltaVertex) -> Result<IndecObject> {
        let cd = self.q.cartan();
        x.validate(cd)?;
        let steps = (self.xi.get(x.i) - x.p) / 2;
        Ok(self.tau_object(&IndecObject::new(self.gamma(x.i).clone(), 0), steps))
    }

    /// The unique `(i, p)` with `H_Q(i, p) = obj`. Modules are located on the
    /// tau-orbits of the injectives; shifts are handled with
    /// `H(i, p)[1] = H(i*, p + h)`.
    pub fn happel_inverse(&self, obj: &IndecObject) -> Result<DeltaVertex> {
        let base = self.modules.get(&obj.root).ok_or_else(|| Error::NotPositiveRoot(obj.root.0.clone()))?;
        let cd = self.q.cartan();
        let h = cd.coxeter_number() as i64;
        let i = if obj.shift.rem_euclid(2) == 0 { base.i } else { cd.star(base.i) };
        Ok(DeltaVertex { i, p: base.p + h * obj.shift })
    }
}

/// `dim Ext^1(H(y), H(x))` for `x = (i, p)`, `y = (j, r)`: `c~_ij(r - p - 1)`
/// when `1 <= r - p - 1 <= h - 1`, else `0`. Independent of the quiver.
pub fn ext1_dim(t: &CTildeTable, x: DeltaVertex, y: DeltaVertex) -> u32 {
    let h = t.cartan().coxeter_number() as i64;
    let d = y.p - x.p - 1;
    if (1..=h - 1).contains(&d) {
        let v = t.get(x.i, y.i, d);
        debug_assert!(v >= 0);
        v as u32
    } else {
        0
    }
}

/// `dim Hom(H(x), H(y))`: `c~_ij(r - p + 1)` when `0 <= r - p <= h - 2`, else `0`.
pub fn hom_dim(t: &CTildeTable, x: DeltaVertex, y: DeltaVertex) -> u32 {
    let h = t.cartan().coxeter_number() as i64;
    let d = y.p - x.p;
    if (0..=h - 2).contains(&d) {
        let v = t.get(x.i, y.i, d + 1);
        debug_assert!(v >= 0);
        v as u32
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum_cartan::ctilde_table;
    use crate::root_system::{build_cartan, Family, LieType};

    fn cd(f: Family, n: usize) -> CartanData {
        build_cartan(LieType::new(f, n).unwrap())
    }

    fn a2_frame() -> Happel {
        let c = cd(Family::A, 2);
        let q = DynkinQuiver::new(c, vec![(2, 1)]).unwrap();
        let xi = HeightFunction::new(&q, vec![0, 1]).unwrap();
        Happel::new(q, xi).unwrap()
    }

    fn r(v: &[i64]) -> RootVec {
        RootVec(v.to_vec())
    }

    #[test]
    fn quiver_validation() {
        let c = cd(Family::A, 3);
        assert!(DynkinQuiver::new(c.clone(), vec![(1, 2)]).is_err());
        assert!(DynkinQuiver::new(c.clone(), vec![(1, 2), (2, 1), (2, 3)]).is_err());
        assert!(DynkinQuiver::new(c.clone(), vec![(1, 3), (2, 3)]).is_err());
        let q = DynkinQuiver::parse(&c, "2>1, 2>3").unwrap();
        assert!(q.is_source(2) && q.is_sink(1) && q.is_sink(3));
        assert!(DynkinQuiver::parse(&c, "2-1").is_err());
        assert_eq!(DynkinQuiver::all_orientations(&c).len(), 4);
    }

    #[test]
    fn height_functions() {
        let c = cd(Family::A, 2);
        let q = DynkinQuiver::new(c.clone(), vec![(2, 1)]).unwrap();
        assert!(HeightFunction::new(&q, vec![0, 1]).is_ok());
        assert!(HeightFunction::new(&q, vec![0, -1]).is_err());
        assert!(HeightFunction::new(&q, vec![1, 2]).is_err());
        let mono = DynkinQuiver::monotone(&c);
        let xi = HeightFunction::anchored(&mono, 1, -2).unwrap();
        assert_eq!(xi.values(), &[-2, -3]);
        assert!(HeightFunction::anchored(&mono, 1, -1).is_err());
    }

    #[test]
    fn coxeter_words() {
        let f = a2_frame();
        assert_eq!(f.word(), &[2, 1]);
        let c = cd(Family::A, 2);
        let mono = DynkinQuiver::monotone(&c);
        let xi = HeightFunction::new(&mono, vec![-2, -3]).unwrap();
        assert_eq!(coxeter_word(&mono, &xi), vec![1, 2]);
    }

    #[test]
    fn coxeter_action() {
        let f = a2_frame();
        assert_eq!(f.tau(&r(&[1, 1]), 1), r(&[0, -1]));
        for v in [r(&[1, 0]), r(&[3, -7])] {
            assert_eq!(f.tau(&f.tau(&v, 1), -1), v);
            assert_eq!(f.tau(&v, 3), v);
        }
    }

    #[test]
    fn gamma_vectors() {
        let f = a2_frame();
        assert_eq!(f.gamma(1), &r(&[1, 1]));
        assert_eq!(f.gamma(2), &r(&[0, 1]));
        let c = cd(Family::D, 4);
        let q = DynkinQuiver::sink_source(&c, 1);
        // vertex 2 has parity 1 so it is a source; 1, 3, 4 are sinks
        assert_eq!(gamma_vector(&q, 1), r(&[1, 1, 0, 0]));
        assert_eq!(gamma_vector(&q, 2), r(&[0, 1, 0, 0]));
    }

    #[test]
    fn knitting_steps() {
        let f = a2_frame();
        let obj = IndecObject::new(r(&[1, 1]), 0);
        assert_eq!(f.tau_object(&obj, 1), IndecObject::new(r(&[0, 1]), -1));
        assert_eq!(f.tau_object(&obj, 0), obj);
        assert_eq!(f.tau_object(&obj, 3), IndecObject::new(r(&[1, 1]), -2));
        assert_eq!(f.tau_object(&f.tau_object(&obj, 5), -5), obj);
    }

    #[test]
    fn happel_examples() {
        let f = a2_frame();
        let c = f.cartan().clone();
        let x10 = DeltaVertex::new(&c, 1, 0).unwrap();
        let x2m1 = DeltaVertex::new(&c, 2, -1).unwrap();
        let x1m2 = DeltaVertex::new(&c, 1, -2).unwrap();
        assert_eq!(f.happel_object(x10).unwrap(), IndecObject::new(r(&[1, 1]), 0));
        assert_eq!(f.happel_object(x2m1).unwrap(), IndecObject::new(r(&[1, 0]), 0));
        assert_eq!(f.happel_object(x1m2).unwrap(), IndecObject::new(r(&[0, 1]), -1));
        for x in [x10, x2m1, x1m2] {
            assert_eq!(f.happel_inverse(&f.happel_object(x).unwrap()).unwrap(), x);
        }
        assert!(f.happel_object(DeltaVertex { i: 1, p: 1 }).is_err());

        let mono = DynkinQuiver::monotone(&c);
        let g = Happel::new(mono.clone(), HeightFunction::new(&mono, vec![-2, -3]).unwrap()).unwrap();
        assert_eq!(g.happel_inverse(&IndecObject::new(r(&[1, 0]), 0)).unwrap(), DeltaVertex { i: 1, p: -2 });
    }

    #[test]
    fn happel_round_trip_small_types() {
        for (fam, n) in [(Family::A, 3), (Family::D, 4), (Family::E, 6)] {
            let c = cd(fam, n);
            let h = c.coxeter_number() as i64;
            for q in [DynkinQuiver::monotone(&c), DynkinQuiver::random(&c, 7)] {
                let f = Happel::standard(q);
                for i in c.vertices() {
                    for p in -2 * h..=2 * h {
                        if let Ok(x) = DeltaVertex::new(&c, i, p) {
                            let obj = f.happel_object(x).unwrap();
                            assert_eq!(f.happel_inverse(&obj).unwrap(), x);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn euler_form_values() {
        let f = a2_frame();
        let q = f.quiver();
        assert_eq!(euler_form(q, &r(&[0, 1]), &r(&[1, 0])), -1);
        assert_eq!(euler_form(q, &r(&[1, 0]), &r(&[0, 1])), 0);
        for ty in LieType::all_up_to_rank(6) {
            let c = build_cartan(ty);
            let q = DynkinQuiver::random(&c, 3);
            for a in c.positive_roots() {
                assert_eq!(euler_form(&q, a, a), 1);
            }
        }
    }

    #[test]
    fn ext_and_hom_windows() {
        let c = cd(Family::A, 2);
        let t = ctilde_table(&c, 6).unwrap();
        let v = |i, p| DeltaVertex::new(&c, i, p).unwrap();
        assert_eq!(ext1_dim(&t, v(2, -1), v(2, 1)), 1);
        assert_eq!(ext1_dim(&t, v(1, 0), v(2, 3)), 1);
        assert_eq!(ext1_dim(&t, v(2, 1), v(2, -1)), 0);
        assert_eq!(ext1_dim(&t, v(1, 0), v(1, 0)), 0);
        assert_eq!(hom_dim(&t, v(1, 0), v(2, 1)), 1);
        assert_eq!(hom_dim(&t, v(1, 0), v(1, 0)), 1);
        assert_eq!(hom_dim(&t, v(2, 1), v(1, 0)), 0);
    }

    #[test]
    fn delta_vertex_parsing() {
        assert_eq!("2,-1".parse::<DeltaVertex>().unwrap(), DeltaVertex { i: 2, p: -1 });
        assert!("2;1".parse::<DeltaVertex>().is_err());
        assert_eq!(DeltaVertex { i: 3, p: -4 }.to_string(), "3,-4");
    }
}
