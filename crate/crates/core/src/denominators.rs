//! Denominators of normalized R-matrices, pole orders, Y/A-monomials and the
//! middle terms of the simple-pole triangles.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::ar_quiver::{ext1_dim, DeltaVertex, DynkinQuiver, Happel, HeightFunction, IndecObject};
use crate::error::{Error, Result};
use crate::quantum_cartan::{default_table, CTildeTable};
use crate::rep_oracle::{cokernel_rep, hom_basis, kernel_rep, nonsplit_extension, Decomposer};
use crate::root_system::{CartanData, RootVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// roots at `q^e`
    #[default]
    Q,
    /// roots at `(-q)^e`
    MinusQ,
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Convention::Q),
            "minus-q" | "minus_q" | "-q" => Ok(Convention::MinusQ),
            _ => Err(Error::OutOfRange(format!("unknown convention `{s}`"))),
        }
    }
}

/// `d_ij(u) = prod_e (u - q^e)^{m_e}`, stored as exponent -> multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Denominator {
    pub factors: BTreeMap<u32, u32>,
    pub convention: Convention,
}

impl Denominator {
    pub fn degree(&self) -> u32 {
        self.factors.values().sum()
    }

    /// Zero order at `u = q^e` (or `(-q)^e`).
    pub fn multiplicity(&self, e: u32) -> u32 {
        self.factors.get(&e).copied().unwrap_or(0)
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let base = match self.convention {
            Convention::Q => "q",
            Convention::MinusQ => "(-q)",
        };
        for (e, m) in &self.factors {
            write!(f, "(u-{base}^{e})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Factors from a table with order at least `h - 1`.
pub fn denominator_from_table(
    t: &CTildeTable,
    i: usize,
    j: usize,
    convention: Convention,
) -> Result<Denominator> {
    let cd = t.cartan();
    cd.check_vertex(i)?;
    cd.check_vertex(j)?;
    let h = cd.coxeter_number();
    if t.order() + 1 < h {
        return Err(Error::TableTooShort { needed: h - 1, got: t.order() });
    }
    let factors = (1..h as i64)
        .filter_map(|l| {
            let c = t.get(i, j, l);
            (c > 0).then_some((l as u32 + 1, c as u32))
        })
        .collect();
    Ok(Denominator { factors, convention })
}

pub fn denominator(cd: &CartanData, i: usize, j: usize) -> Result<Denominator> {
    denominator_from_table(&default_table(cd), i, j, Convention::Q)
}

pub fn denominator_kashiwara(cd: &CartanData, i: usize, j: usize) -> Result<Denominator> {
    denominator_from_table(&default_table(cd), i, j, Convention::MinusQ)
}

/// Pole order of the normalized R-matrix at the pair `(x, y)`; equal to the
/// zero order of `d_ij(u)` at `u = q^{r-p}`.
pub fn pole_order(t: &CTildeTable, x: DeltaVertex, y: DeltaVertex) -> Result<u32> {
    x.validate(t.cartan())?;
    y.validate(t.cartan())?;
    Ok(ext1_dim(t, x, y))
}

pub fn is_tensor_irreducible(t: &CTildeTable, x: DeltaVertex, y: DeltaVertex) -> Result<bool> {
    Ok(pole_order(t, x, y)? == 0 && pole_order(t, y, x)? == 0)
}

/// A Laurent monomial in the variables `Y_(i,p)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<(usize, i64), i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn y(i: usize, p: i64) -> Self {
        Monomial(BTreeMap::from([((i, p), 1)]))
    }

    pub fn y_at(x: DeltaVertex) -> Self {
        Monomial::y(x.i, x.p)
    }

    pub fn from_exponents<I: IntoIterator<Item = ((usize, i64), i64)>>(it: I) -> Self {
        let mut m = Monomial::one();
        for (k, e) in it {
            m.add_exponent(k, e);
        }
        m
    }

    fn add_exponent(&mut self, key: (usize, i64), e: i64) {
        let v = self.0.entry(key).or_insert(0);
        *v += e;
        if *v == 0 {
            self.0.remove(&key);
        }
    }

    pub fn exponent(&self, i: usize, p: i64) -> i64 {
        self.0.get(&(i, p)).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<(usize, i64), i64> {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.values().all(|&e| e >= 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&k, &e) in &other.0 {
            out.add_exponent(k, e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(&key, &e)| (key, e * k)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Sum of all exponents.
    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&(i, p), &e)| if e == 1 { format!("Y[{i},{p}]") } else { format!("Y[{i},{p}]^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `A_(i,p) = Y_(i,p+1) Y_(i,p-1) prod_{j~i} Y_(j,p)^{-1}`.
pub fn a_monomial(cd: &CartanData, i: usize, p: i64) -> Monomial {
    let mut m = Monomial::from_exponents([((i, p + 1), 1), ((i, p - 1), 1)]);
    for &j in cd.neighbors(i) {
        m.add_exponent((j, p), -1);
    }
    m
}

/// `m <= m2` iff `m2 / m` is a product of A-monomials with nonnegative
/// exponents. The exponents are read off level by level from the top: the
/// highest `Y_(j,p)` in the residual can only come from `A_(j,p-1)`.
pub fn monomial_leq(cd: &CartanData, m: &Monomial, m2: &Monomial) -> bool {
    a_exponents(cd, &m2.mul(&m.inv())).map(|ns| ns.values().all(|&n| n >= 0)).unwrap_or(false)
}

/// The unique `n` with `r = prod A_(i,p)^{n_(i,p)}`, if it exists.
pub fn a_exponents(cd: &CartanData, r: &Monomial) -> Option<BTreeMap<(usize, i64), i64>> {
    let mut res = r.clone();
    let mut out = BTreeMap::new();
    let (Some(lo), Some(hi)) = (res.0.keys().map(|k| k.1).min(), res.0.keys().map(|k| k.1).max()) else {
        return Some(out);
    };
    let mut p = hi;
    while p >= lo + 2 {
        let level: Vec<(usize, i64)> =
            res.0.iter().filter(|(k, _)| k.1 == p).map(|(k, &e)| (k.0, e)).collect();
        for (j, e) in level {
            out.insert((j, p - 1), e);
            res = res.mul(&a_monomial(cd, j, p - 1).pow(-e));
        }
        p -= 1;
    }
    res.is_one().then_some(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DoreyCase {
    /// both objects in one heart: a non-split extension of modules
    Extension,
    /// `H(y)` one shift above `H(x)`: cone of a module map
    Cone,
}

/// The data behind one evaluation of [`dorey_middle_term`].
#[derive(Debug, Clone)]
pub struct DoreyOutcome {
    pub monomial: Monomial,
    pub quiver: DynkinQuiver,
    pub height: HeightFunction,
    pub case: DoreyCase,
    pub x_object: IndecObject,
    pub y_object: IndecObject,
    pub summands: Vec<(IndecObject, usize)>,
}

impl DoreyOutcome {
    /// Signed dimension vectors of the summands add up to those of the ends.
    pub fn conserves_dimension(&self) -> bool {
        let n = self.x_object.root.len();
        let mut total = RootVec::zero(n);
        for (obj, mult) in &self.summands {
            total = &total + &obj.signed_dim().scaled(*mult as i64);
        }
        total == &self.x_object.signed_dim() + &self.y_object.signed_dim()
    }
}

/// Evaluates middle terms over a family of Happel frames, caching the
/// indecomposable representations of each orientation.
pub struct DoreySolver {
    table: CTildeTable,
    frames: Vec<(usize, Happel)>,
    quivers: Vec<DynkinQuiver>,
    decomposers: Mutex<HashMap<usize, Arc<Decomposer>>>,
}

impl DoreySolver {
    /// Frames: `(q, xi)` first, then every orientation with its standard
    /// height function shifted by `2m` for `0 <= m < h`.
    pub fn new(q: &DynkinQuiver, xi: &HeightFunction) -> Result<Self> {
        let cd = q.cartan();
        let table = default_table(cd);
        let h = cd.coxeter_number() as i64;
        let quivers = DynkinQuiver::all_orientations(cd);
        let home = quivers.iter().position(|o| o == q).expect("every orientation is listed");
        let mut frames = vec![(home, Happel::new(q.clone(), xi.clone())?)];
        for (k, o) in quivers.iter().enumerate() {
            let base = HeightFunction::standard(o);
            for m in 0..h {
                frames.push((k, Happel::new(o.clone(), base.shifted(2 * m)?)?));
            }
        }
        Ok(DoreySolver { table, frames, quivers, decomposers: Mutex::new(HashMap::new()) })
    }

    pub fn standard(cd: &CartanData) -> Result<Self> {
        let q = DynkinQuiver::monotone(cd);
        let xi = HeightFunction::standard(&q);
        DoreySolver::new(&q, &xi)
    }

    pub fn table(&self) -> &CTildeTable {
        &self.table
    }

    fn decomposer(&self, k: usize) -> Result<Arc<Decomposer>> {
        if let Some(d) = self.decomposers.lock().expect("cache lock").get(&k) {
            return Ok(d.clone());
        }
        let d = Arc::new(Decomposer::new(&self.quivers[k])?);
        self.decomposers.lock().expect("cache lock").insert(k, d.clone());
        Ok(d)
    }

    fn check_pair(&self, x: DeltaVertex, y: DeltaVertex) -> Result<()> {
        let order = pole_order(&self.table, x, y)?;
        if order != 1 {
            return Err(Error::NotSimplePole(order));
        }
        Ok(())
    }

    /// The middle term in the first frame placing both objects in one heart,
    /// falling back to the cone construction in the first frame.
    pub fn outcome(&self, x: DeltaVertex, y: DeltaVertex) -> Result<DoreyOutcome> {
        self.check_pair(x, y)?;
        for (k, frame) in &self.frames {
            let (xo, yo) = (frame.happel_object(x)?, frame.happel_object(y)?);
            if xo.shift == yo.shift {
                return self.evaluate(*k, frame, xo, yo);
            }
        }
        let (k, frame) = &self.frames[0];
        let (xo, yo) = (frame.happel_object(x)?, frame.happel_object(y)?);
        if yo.shift == xo.shift + 1 {
            return self.evaluate(*k, frame, xo, yo);
        }
        Err(Error::NoCommonHeart)
    }

    pub fn middle_term(&self, x: DeltaVertex, y: DeltaVertex) -> Result<Monomial> {
        self.outcome(x, y).map(|o| o.monomial)
    }

    /// Every frame's evaluation, for checking independence of the choices.
    pub fn all_outcomes(&self, x: DeltaVertex, y: DeltaVertex) -> Result<Vec<DoreyOutcome>> {
        self.check_pair(x, y)?;
        let mut out = Vec::new();
        for (k, frame) in &self.frames {
            let (xo, yo) = (frame.happel_object(x)?, frame.happel_object(y)?);
            if xo.shift == yo.shift || yo.shift == xo.shift + 1 {
                out.push(self.evaluate(*k, frame, xo, yo)?);
            }
        }
        Ok(out)
    }

    fn evaluate(&self, k: usize, frame: &Happel, xo: IndecObject, yo: IndecObject) -> Result<DoreyOutcome> {
        let dec = self.decomposer(k)?;
        let (mx, my) = (dec.rep(&xo.root)?, dec.rep(&yo.root)?);
        let mut summands = Vec::new();
        let case = if xo.shift == yo.shift {
            let e = nonsplit_extension(mx, my)?;
            for (root, mult) in dec.decompose(&e)? {
                summands.push((IndecObject::new(root, xo.shift), mult));
            }
            DoreyCase::Extension
        } else {
            let hb = hom_basis(my, mx)?;
            if hb.dimension != 1 {
                return Err(Error::ExtNotOneDimensional(hb.dimension));
            }
            let g = &hb.basis[0];
            for (root, mult) in dec.decompose(&cokernel_rep(my, mx, g)?)? {
                summands.push((IndecObject::new(root, xo.shift), mult));
            }
            for (root, mult) in dec.decompose(&kernel_rep(my, mx, g)?)? {
                summands.push((IndecObject::new(root, yo.shift), mult));
            }
            DoreyCase::Cone
        };
        let mut monomial = Monomial::one();
        for (obj, mult) in &summands {
            monomial = monomial.mul(&Monomial::y_at(frame.happel_inverse(obj)?).pow(*mult as i64));
        }
        Ok(DoreyOutcome {
            monomial,
            quiver: frame.quiver().clone(),
            height: frame.height().clone(),
            case,
            x_object: xo,
            y_object: yo,
            summands,
        })
    }
}

/// `m_(y,x)`: the middle term of the non-split triangle
/// `H(x) -> E -> H(y) -> H(x)[1]` as a monomial in the Y variables.
pub fn dorey_middle_term(
    q: &DynkinQuiver,
    xi: &HeightFunction,
    x: DeltaVertex,
    y: DeltaVertex,
) -> Result<Monomial> {
    DoreySolver::new(q, xi)?.middle_term(x, y)
}
