//! Simply-laced Cartan data: Cartan matrices of type ADE, positive roots,
//! simple reflections, the Coxeter number and the involution `i -> i*`
//! induced by the longest Weyl group element.
//!
//! Vertices are 1-based throughout the public API. The labeling is fixed:
//!
//! * `A_n`: the path `1 - 2 - ... - n`;
//! * `D_n`: the path `1 - ... - (n-2)` with `n-1` and `n` both attached to `n-2`;
//! * `E_n`: the path `1 - ... - (n-1)` with `n` attached to `3`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// A Dynkin type of family A, D or E together with a valid rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every supported type with rank at most `max_rank`, in the order
    /// `A_1, ..., D_4, ..., E_6, ...`.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            out.push(LieType { family: Family::A, rank: n });
        }
        for n in 4..=max_rank {
            out.push(LieType { family: Family::D, rank: n });
        }
        for n in 6..=max_rank.min(8) {
            out.push(LieType { family: Family::E, rank: n });
        }
        out
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Which of the two parity functions is in use. `Standard` has `eps_1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum ParityChoice {
    #[default]
    Standard,
    Flipped,
}

impl FromStr for ParityChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" | "0" => Ok(ParityChoice::Standard),
            "flipped" | "1" => Ok(ParityChoice::Flipped),
            other => Err(Error::OutOfRange(format!("parity `{other}`"))),
        }
    }
}

/// A vector in the root lattice, written in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(n: usize) -> Self {
        RootVec(vec![0; n])
    }

    /// The simple root `alpha_i` (1-based `i`).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        RootVec(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|&c| c <= 0)
    }

    /// Pairing `(v, varpi_j)`: reads off the `j`-th simple-root coordinate.
    pub fn pair_fundamental(&self, j: usize) -> i64 {
        self.0[j - 1]
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &RootVec {
    type Output = RootVec;
    fn add(self, rhs: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVec {
    type Output = RootVec;
    fn sub(self, rhs: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        -&self
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A vector in the weight lattice, written in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVec(pub Vec<i64>);

impl WeightVec {
    /// Pairing with a root-basis vector, using `(alpha_i, varpi_j) = delta_ij`.
    pub fn pair_root(&self, v: &RootVec) -> i64 {
        self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }
}

/// Immutable Cartan data of a simply-laced type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    ty: LieType,
    parity_choice: ParityChoice,
    cartan: Vec<Vec<i64>>,
    adjacency: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    coxeter_number: usize,
    star: Vec<usize>,
    parity: Vec<u8>,
    positive_roots: Vec<RootVec>,
    root_index: HashMap<RootVec, usize>,
}

fn edges_of(ty: LieType) -> Vec<(usize, usize)> {
    let n = ty.rank();
    match ty.family() {
        Family::A => (1..n).map(|i| (i, i + 1)).collect(),
        Family::D => {
            let mut e: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 2, n - 1));
            e.push((n - 2, n));
            e
        }
        Family::E => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
            e.push((3, n));
            e
        }
    }
}

/// Builds the Cartan data of `ty` with the standard parity function.
pub fn build_cartan(ty: LieType) -> CartanData {
    build_cartan_with_parity(ty, ParityChoice::Standard)
}

pub fn build_cartan_with_parity(ty: LieType, parity_choice: ParityChoice) -> CartanData {
    let n = ty.rank();
    let mut adjacency = edges_of(ty);
    adjacency.sort_unstable();
    let mut cartan = vec![vec![0i64; n]; n];
    let mut neighbors = vec![Vec::new(); n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in &adjacency {
        cartan[a - 1][b - 1] = -1;
        cartan[b - 1][a - 1] = -1;
        neighbors[a - 1].push(b);
        neighbors[b - 1].push(a);
    }
    for nb in &mut neighbors {
        nb.sort_unstable();
    }

    // graph distance from vertex 1
    let mut dist = vec![usize::MAX; n];
    dist[0] = 0;
    let mut queue = VecDeque::from([1usize]);
    while let Some(v) = queue.pop_front() {
        for &w in &neighbors[v - 1] {
            if dist[w - 1] == usize::MAX {
                dist[w - 1] = dist[v - 1] + 1;
                queue.push_back(w);
            }
        }
    }
    let flip = u8::from(parity_choice == ParityChoice::Flipped);
    let parity = dist.iter().map(|d| (*d % 2) as u8 ^ flip).collect();

    let mut cd = CartanData {
        ty,
        parity_choice,
        cartan,
        adjacency,
        neighbors,
        coxeter_number: 0,
        star: Vec::new(),
        parity,
        positive_roots: Vec::new(),
        root_index: HashMap::new(),
    };
    cd.positive_roots = enumerate_positive_roots(&cd);
    cd.root_index = cd.positive_roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
    cd.coxeter_number = 2 * cd.positive_roots.len() / n;
    let word = longest_element_word(&cd);
    cd.star = (1..=n)
        .map(|i| {
            let image = apply_word(&cd, &word, &RootVec::simple(n, i));
            let neg = -image;
            (1..=n)
                .find(|&j| neg == RootVec::simple(n, j))
                .expect("w0 maps simple roots to negative simple roots")
        })
        .collect();
    cd
}

impl CartanData {
    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn parity_choice(&self) -> ParityChoice {
        self.parity_choice
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// Unordered edges `(i, j)` with `i < j`, sorted.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    pub fn adjacency_set(&self) -> BTreeSet<(usize, usize)> {
        self.adjacency.iter().copied().collect()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i - 1]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i - 1][j - 1] == -1
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    pub fn star(&self, i: usize) -> usize {
        self.star[i - 1]
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i - 1]
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    pub fn is_positive_root(&self, v: &RootVec) -> bool {
        self.root_index.contains_key(v)
    }

    pub fn root_position(&self, v: &RootVec) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: i, rank: self.rank() })
        }
    }

    /// Rewrites a root-lattice vector in the fundamental weight basis,
    /// using `alpha_i = sum_j c_ij varpi_j`.
    pub fn to_weight(&self, v: &RootVec) -> WeightVec {
        let n = self.rank();
        WeightVec((0..n).map(|j| (0..n).map(|i| v.0[i] * self.cartan[i][j]).sum()).collect())
    }

    /// The highest root (the unique positive root of maximal height).
    pub fn highest_root(&self) -> &RootVec {
        self.positive_roots.iter().max_by_key(|r| r.height()).expect("root systems are non-empty")
    }
}

/// Positive roots, sorted lexicographically on coordinates.
pub fn positive_roots(cd: &CartanData) -> Vec<RootVec> {
    cd.positive_roots.clone()
}

fn enumerate_positive_roots(cd: &CartanData) -> Vec<RootVec> {
    let n = cd.rank();
    let mut seen: BTreeSet<RootVec> = BTreeSet::new();
    let mut queue: VecDeque<RootVec> = VecDeque::new();
    for i in 1..=n {
        let a = RootVec::simple(n, i);
        seen.insert(a.clone());
        queue.push_back(a);
    }
    while let Some(v) = queue.pop_front() {
        for i in 1..=n {
            let w = simple_reflection(cd, i, &v);
            if w.is_nonnegative() && !w.is_zero() && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// `r_i(v) = v - (sum_j c_ij v_j) alpha_i`.
pub fn simple_reflection(cd: &CartanData, i: usize, v: &RootVec) -> RootVec {
    let row = &cd.cartan[i - 1];
    let pairing: i64 = row.iter().zip(&v.0).map(|(c, x)| c * x).sum();
    let mut out = v.clone();
    out.0[i - 1] -= pairing;
    out
}

/// Applies `r_{w[0]}` first, then `r_{w[1]}`, and so on.
pub(crate) fn apply_word(cd: &CartanData, word: &[usize], v: &RootVec) -> RootVec {
    word.iter().fold(v.clone(), |acc, &i| simple_reflection(cd, i, &acc))
}

/// A word for `w0`, listed in application order. Obtained by walking the
/// regular dominant vector `2 rho` down to `-2 rho` one reflection at a time.
fn longest_element_word(cd: &CartanData) -> Vec<usize> {
    let n = cd.rank();
    let mut v = cd.positive_roots.iter().fold(RootVec::zero(n), |acc, r| &acc + r);
    let mut word = Vec::new();
    loop {
        let next = (1..=n).find(|&i| {
            let pairing: i64 = cd.cartan[i - 1].iter().zip(&v.0).map(|(c, x)| c * x).sum();
            pairing > 0
        });
        match next {
            Some(i) => {
                v = simple_reflection(cd, i, &v);
                word.push(i);
            }
            None => break,
        }
    }
    word
}

pub fn coxeter_number(cd: &CartanData) -> usize {
    cd.coxeter_number
}

pub fn star_involution(cd: &CartanData, i: usize) -> usize {
    cd.star(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(f: Family, n: usize) -> CartanData {
        build_cartan(LieType::new(f, n).unwrap())
    }

    #[test]
    fn rank_bounds() {
        assert!(LieType::new(Family::A, 0).is_err());
        assert!(LieType::new(Family::D, 3).is_err());
        assert!(LieType::new(Family::E, 9).is_err());
        assert!(LieType::new(Family::E, 5).is_err());
        assert!(LieType::new(Family::D, 4).is_ok());
    }

    #[test]
    fn a2_cartan_matrix() {
        assert_eq!(cd(Family::A, 2).cartan(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn d4_and_e6_adjacency() {
        assert_eq!(cd(Family::D, 4).adjacency(), &[(1, 2), (2, 3), (2, 4)]);
        assert_eq!(cd(Family::E, 6).adjacency(), &[(1, 2), (2, 3), (3, 4), (3, 6), (4, 5)]);
    }

    #[test]
    fn root_counts_and_coxeter_numbers() {
        let a2 = cd(Family::A, 2);
        assert_eq!(a2.positive_roots(), &[RootVec(vec![0, 1]), RootVec(vec![1, 0]), RootVec(vec![1, 1])]);
        assert_eq!(cd(Family::D, 4).positive_roots().len(), 12);
        assert_eq!(cd(Family::E, 8).positive_roots().len(), 120);
        for n in 1..=9 {
            assert_eq!(cd(Family::A, n).coxeter_number(), n + 1);
        }
        for n in 4..=9 {
            assert_eq!(cd(Family::D, n).coxeter_number(), 2 * n - 2);
        }
        assert_eq!(cd(Family::E, 6).coxeter_number(), 12);
        assert_eq!(cd(Family::E, 7).coxeter_number(), 18);
        assert_eq!(cd(Family::E, 8).coxeter_number(), 30);
    }

    #[test]
    fn reflections() {
        let a2 = cd(Family::A, 2);
        let a1 = RootVec(vec![1, 0]);
        assert_eq!(simple_reflection(&a2, 1, &a1), RootVec(vec![-1, 0]));
        assert_eq!(simple_reflection(&a2, 1, &RootVec(vec![0, 1])), RootVec(vec![1, 1]));
    }

    #[test]
    fn star_values() {
        assert_eq!(cd(Family::A, 3).star(1), 3);
        assert_eq!(cd(Family::D, 5).star(4), 5);
        assert_eq!(cd(Family::D, 4).star(3), 3);
        assert_eq!(cd(Family::E, 6).star(5), 1);
        assert_eq!(cd(Family::E, 7).star(6), 6);
    }

    #[test]
    fn parity_alternates_along_edges() {
        for ty in LieType::all_up_to_rank(8) {
            for choice in [ParityChoice::Standard, ParityChoice::Flipped] {
                let c = build_cartan_with_parity(ty, choice);
                for &(a, b) in c.adjacency() {
                    assert_ne!(c.parity(a), c.parity(b));
                }
                assert_eq!(c.parity(1), u8::from(choice == ParityChoice::Flipped));
            }
        }
    }

    #[test]
    fn structural_invariants_all_types() {
        for ty in LieType::all_up_to_rank(8) {
            let c = build_cartan(ty);
            let n = c.rank();
            let h = c.coxeter_number();
            assert_eq!(c.positive_roots().len(), n * h / 2, "{ty}");
            for i in 1..=n {
                let s = c.star(i);
                assert_eq!(c.star(s), i);
                for j in 1..=n {
                    assert_eq!(c.adjacent(i, j), c.adjacent(s, c.star(j)));
                    assert_eq!(c.entry(i, j), c.entry(j, i));
                }
            }
            for r in c.positive_roots() {
                for i in 1..=n {
                    let w = simple_reflection(&c, i, r);
                    assert!(c.is_positive_root(&w) || w == -RootVec::simple(n, i), "{ty}: r_{i}{r} = {w}");
                }
            }
        }
    }

    #[test]
    fn weight_pairing() {
        let a2 = cd(Family::A, 2);
        let w = a2.to_weight(&RootVec(vec![1, 0]));
        assert_eq!(w, WeightVec(vec![2, -1]));
        assert_eq!(WeightVec(vec![0, 1]).pair_root(&RootVec(vec![3, 5])), 5);
    }
}
