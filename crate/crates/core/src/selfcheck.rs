//! The acceptance suite. Each criterion runs a family of exact checks and
//! reports how many ran, which failed, and how long it took.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ar_quiver::{
    euler_form, ext1_dim, hom_dim, DeltaVertex, DynkinQuiver, Happel, HeightFunction, IndecObject,
};
use crate::denominators::{denominator, denominator_kashiwara, monomial_leq, DoreySolver, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix};
use crate::quantum_cartan::{check_ctilde_identities, ctilde_coxeter_in, default_table, CTildeTable};
use crate::rep_oracle::{hom_ext_dims, indec_rep, Decomposer, QuiverRep};
use crate::root_system::{build_cartan_with_parity, CartanData, Family, LieType, ParityChoice, RootVec};
use crate::schur_weyl::{betas_up_to, orbit_census, JRoot, KostantPartition, TypeAConfig, XRoot};

const LISTED_FAILURES: usize = 20;
const E6_SAMPLES: usize = 200;
const ROUND_TRIPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// ranks up to 5
    Fast,
    /// ranks up to 8, E_6 samples included
    Full,
}

impl Scope {
    pub fn max_rank(self) -> usize {
        match self {
            Scope::Fast => 5,
            Scope::Full => 8,
        }
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Scope::Fast),
            "full" => Ok(Scope::Full),
            other => Err(Error::OutOfRange(format!("unknown scope `{other}`"))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Fast => "fast",
            Scope::Full => "full",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub failure_count: u64,
    /// The first few failures, in the order found.
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
    pub budget_ms: Option<u64>,
    pub note: Option<String>,
}

impl CriterionReport {
    pub fn summary_line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let budget = self.budget_ms.map(|b| format!(" (budget {b} ms)")).unwrap_or_default();
        let mut line = format!(
            "{verdict} [{:>2}] {}: {} checks, {} failed, {} ms{budget}",
            self.id, self.name, self.checks, self.failure_count, self.elapsed_ms
        );
        if let Some(first) = self.failures.first() {
            line.push_str(&format!("; first failure: {first}"));
        }
        line
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scope: Scope,
    pub passed: bool,
    pub elapsed_ms: u64,
    pub criteria: Vec<CriterionReport>,
}

/// Id, name and time budget in milliseconds of every criterion.
pub const CRITERIA: [(u8, &str, Option<u64>); 10] = [
    (1, "c~ by recurrence equals c~ through the Coxeter element", Some(10_000)),
    (2, "structural identities of c~ at order 2h", None),
    (3, "Ext^1 and Hom formulas agree with explicit representations", Some(60_000)),
    (4, "golden denominators", None),
    (5, "closed forms of the type-A families", None),
    (6, "Dorey middle terms", None),
    (7, "denominator zeros at q^k with k > 0 and k + eps_i + eps_j even", None),
    (8, "tau periodicity and the Nakayama shift", None),
    (9, "Kostant partitions, orbit census and m_nu", None),
    (10, "rep oracle coherence", None),
];

#[derive(Default)]
struct Tally {
    checks: u64,
    failure_count: u64,
    failures: Vec<String>,
    note: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < LISTED_FAILURES {
            self.failures.push(msg);
        }
    }

    /// Unwraps `r`, recording an error as a failed check.
    fn ok<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.fail(format!("{}: {e}", context()));
                None
            }
        }
    }

    fn finish(mut self, id: u8, start: Instant) -> CriterionReport {
        let (_, name, budget_ms) = CRITERIA[usize::from(id) - 1];
        let elapsed_ms = start.elapsed().as_millis() as u64;
        if let Some(b) = budget_ms {
            self.check(elapsed_ms < b, || format!("took {elapsed_ms} ms, budget {b} ms"));
        }
        CriterionReport {
            id,
            name: name.to_string(),
            passed: self.failure_count == 0,
            checks: self.checks,
            failure_count: self.failure_count,
            failures: self.failures,
            elapsed_ms,
            budget_ms,
            note: self.note,
        }
    }
}

pub fn run(scope: Scope) -> Report {
    let start = Instant::now();
    let criteria: Vec<CriterionReport> =
        CRITERIA.iter().map(|&(id, _, _)| run_criterion(id, scope).expect("known id")).collect();
    Report {
        scope,
        passed: criteria.iter().all(|c| c.passed),
        elapsed_ms: start.elapsed().as_millis() as u64,
        criteria,
    }
}

pub fn run_criterion(id: u8, scope: Scope) -> Result<CriterionReport> {
    let start = Instant::now();
    let mut t = Tally::default();
    match id {
        1 => dual_ctilde(scope, &mut t),
        2 => identity_suite(scope, &mut t),
        3 => ext_oracle(scope, &mut t),
        4 => golden_denominators(&mut t),
        5 => closed_forms(scope, &mut t),
        6 => dorey_checks(&mut t),
        7 => pole_positions(scope, &mut t),
        8 => tau_structure(scope, &mut t),
        9 => kostant_census(&mut t),
        10 => oracle_coherence(scope, &mut t),
        _ => return Err(Error::OutOfRange(format!("criterion {id} (expected 1..=10)"))),
    }
    Ok(t.finish(id, start))
}

/// The identity suite on a single table, reported as criterion 2.
pub fn check_table(table: &CTildeTable) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    identities_of(table, &mut t);
    t.finish(2, start)
}

fn cartan(f: Family, n: usize) -> CartanData {
    build_cartan_with_parity(LieType::new(f, n).expect("valid type"), ParityChoice::Standard)
}

/// Every type up to the scope's rank, with both parity functions.
fn cartans(scope: Scope) -> Vec<CartanData> {
    LieType::all_up_to_rank(scope.max_rank())
        .into_iter()
        .flat_map(|ty| {
            [ParityChoice::Standard, ParityChoice::Flipped].map(|p| build_cartan_with_parity(ty, p))
        })
        .collect()
}

fn label(cd: &CartanData) -> String {
    format!("{} {:?}", cd.lie_type(), cd.parity_choice())
}

fn orientations(cd: &CartanData) -> Vec<(&'static str, DynkinQuiver)> {
    let seed = 0x0f1e_u64 ^ (cd.rank() as u64) << 8 ^ u64::from(cd.lie_type().family().letter());
    vec![
        ("monotone", DynkinQuiver::monotone(cd)),
        ("sink-source", DynkinQuiver::sink_source(cd, 0)),
        ("random", DynkinQuiver::random(cd, seed)),
    ]
}

fn dual_ctilde(scope: Scope, t: &mut Tally) {
    for cd in cartans(scope) {
        let table = default_table(&cd);
        let order = table.order() as i64;
        for (name, q) in orientations(&cd) {
            let frame = Happel::standard(q);
            for i in cd.vertices() {
                for j in cd.vertices() {
                    for l in 1..=order {
                        let Some(v) = t.ok(ctilde_coxeter_in(&frame, i, j, l), || label(&cd)) else {
                            continue;
                        };
                        let want = table.get(i, j, l);
                        t.check(v == want, || {
                            format!("{} {name}: c~_{i}{j}({l}) = {want}, Coxeter gives {v}", label(&cd))
                        });
                    }
                }
            }
        }
    }
}

fn identity_suite(scope: Scope, t: &mut Tally) {
    for cd in cartans(scope) {
        identities_of(&default_table(&cd), t);
    }
}

fn identities_of(table: &CTildeTable, t: &mut Tally) {
    let cd = table.cartan();
    let Some(violations) = t.ok(check_ctilde_identities(table), || label(cd)) else {
        return;
    };
    t.check(violations.is_empty(), || format!("{}: {}", label(cd), violations[0]));
    for v in violations.iter().skip(1) {
        t.fail(format!("{}: {v}", label(cd)));
    }
}

/// Indecomposable representations and their Hom/Ext dimensions, cached per
/// orientation and ordered root pair.
struct OracleCache {
    quivers: Vec<DynkinQuiver>,
    reps: HashMap<(usize, RootVec), QuiverRep>,
    dims: HashMap<(usize, RootVec, RootVec), (usize, usize)>,
}

impl OracleCache {
    fn new(quivers: Vec<DynkinQuiver>) -> Self {
        OracleCache { quivers, reps: HashMap::new(), dims: HashMap::new() }
    }

    fn rep(&mut self, k: usize, a: &RootVec) -> Result<QuiverRep> {
        if let Some(r) = self.reps.get(&(k, a.clone())) {
            return Ok(r.clone());
        }
        let r = indec_rep(&self.quivers[k], a)?;
        self.reps.insert((k, a.clone()), r.clone());
        Ok(r)
    }

    /// `(dim Hom(M_a, M_b), dim Ext^1(M_a, M_b))`.
    fn hom_ext(&mut self, k: usize, a: &RootVec, b: &RootVec) -> Result<(usize, usize)> {
        let key = (k, a.clone(), b.clone());
        if let Some(&d) = self.dims.get(&key) {
            return Ok(d);
        }
        let d = hom_ext_dims(&self.rep(k, a)?, &self.rep(k, b)?)?;
        self.dims.insert(key, d);
        Ok(d)
    }

    /// `(dim Hom(X, Y), dim Ext^1(Y, X))` for `X = M_x[s]`, `Y = M_y[r]`.
    fn derived(&mut self, k: usize, x: &IndecObject, y: &IndecObject) -> Result<(usize, usize)> {
        let d = x.shift - y.shift;
        let hom = match d {
            0 => self.hom_ext(k, &x.root, &y.root)?.0,
            -1 => self.hom_ext(k, &x.root, &y.root)?.1,
            _ => 0,
        };
        let ext = match d {
            0 => self.hom_ext(k, &y.root, &x.root)?.1,
            -1 => self.hom_ext(k, &y.root, &x.root)?.0,
            _ => 0,
        };
        Ok((hom, ext))
    }
}

/// Every orientation paired with the heights `xi + 2m`, `0 <= m < h`.
fn all_frames(cd: &CartanData) -> Vec<(usize, Happel)> {
    let h = cd.coxeter_number() as i64;
    let mut frames = Vec::new();
    for (k, q) in DynkinQuiver::all_orientations(cd).into_iter().enumerate() {
        let xi = HeightFunction::standard(&q);
        for m in 0..h {
            let shifted = xi.shifted(2 * m).expect("even shift");
            frames.push((k, Happel::new(q.clone(), shifted).expect("valid height")));
        }
    }
    frames
}

fn window(cd: &CartanData, bound: i64) -> Vec<DeltaVertex> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        for i in cd.vertices() {
            if (p - i64::from(cd.parity(i))).rem_euclid(2) == 0 {
                out.push(DeltaVertex { i, p });
            }
        }
    }
    out
}

fn compare_formulas(
    t: &mut Tally,
    table: &CTildeTable,
    cache: &mut OracleCache,
    k: usize,
    (x, y): (DeltaVertex, DeltaVertex),
    (ox, oy): (&IndecObject, &IndecObject),
) {
    let cd = table.cartan();
    let Some((hom, ext)) = t.ok(cache.derived(k, ox, oy), || format!("{} {x} {y}", label(cd))) else {
        return;
    };
    let (fe, fh) = (ext1_dim(table, x, y) as usize, hom_dim(table, x, y) as usize);
    t.check(fe == ext && fh == hom, || {
        format!(
            "{} x={x} y={y} ({ox}, {oy}): formula ext {fe} hom {fh}, oracle ext {ext} hom {hom}",
            label(cd)
        )
    });
}

fn ext_oracle(scope: Scope, t: &mut Tally) {
    let mut heart = 0u64;
    let mut other = 0u64;
    let mut types = vec![cartan(Family::A, 3), cartan(Family::D, 4)];
    if scope == Scope::Full {
        types.extend([cartan(Family::A, 4), cartan(Family::D, 5)]);
    }
    let names: Vec<String> = types.iter().map(|cd| cd.lie_type().to_string()).collect();
    for cd in types {
        let table = default_table(&cd);
        let frames = all_frames(&cd);
        let mut cache = OracleCache::new(DynkinQuiver::all_orientations(&cd));
        let verts = window(&cd, 2 * cd.coxeter_number() as i64);
        let objects: Vec<Vec<IndecObject>> = frames
            .iter()
            .map(|(_, f)| verts.iter().map(|&v| f.happel_object(v).expect("valid vertex")).collect())
            .collect();
        for (a, &x) in verts.iter().enumerate() {
            for (b, &y) in verts.iter().enumerate() {
                let placed = objects.iter().position(|objs| objs[a].shift == objs[b].shift);
                let f = match placed {
                    Some(f) => {
                        heart += 1;
                        f
                    }
                    None => {
                        other += 1;
                        0
                    }
                };
                let k = frames[f].0;
                compare_formulas(t, &table, &mut cache, k, (x, y), (&objects[f][a], &objects[f][b]));
            }
        }
    }
    let mut sampled = 0;
    if scope == Scope::Full {
        sampled = e6_samples(t);
    }
    t.note = Some(format!(
        "{}: {heart} pairs in a common heart, {other} further pairs compared across shifts; \
         E6: {sampled} sampled common-heart pairs",
        names.join(", ")
    ));
}

fn e6_samples(t: &mut Tally) -> usize {
    let cd = cartan(Family::E, 6);
    let table = default_table(&cd);
    let h = cd.coxeter_number() as i64;
    let frames = all_frames(&cd);
    let mut cache = OracleCache::new(DynkinQuiver::all_orientations(&cd));
    let mut rng = ChaCha8Rng::seed_from_u64(0xe6);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < E6_SAMPLES && attempts < 50 * E6_SAMPLES {
        attempts += 1;
        let x = random_vertex(&cd, &mut rng, -2 * h, 2 * h);
        let centre = (x.p + rng.gen_range(-h..=h)).clamp(1 - 2 * h, 2 * h - 1);
        let y = random_vertex(&cd, &mut rng, centre - 1, centre + 1);
        let placement = frames.iter().find_map(|(k, f)| {
            let (ox, oy) = (f.happel_object(x).ok()?, f.happel_object(y).ok()?);
            (ox.shift == oy.shift).then_some((*k, ox, oy))
        });
        if let Some((k, ox, oy)) = placement {
            accepted += 1;
            compare_formulas(t, &table, &mut cache, k, (x, y), (&ox, &oy));
        }
    }
    t.check(accepted == E6_SAMPLES, || format!("only {accepted} placeable E6 pairs found"));
    accepted
}

/// A parity-valid vertex with `lo <= p <= hi` (the range must hold at least two values).
fn random_vertex(cd: &CartanData, rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> DeltaVertex {
    let i = rng.gen_range(1..=cd.rank());
    loop {
        let p = rng.gen_range(lo..=hi);
        if (p - i64::from(cd.parity(i))).rem_euclid(2) == 0 {
            return DeltaVertex { i, p };
        }
    }
}

fn golden_denominators(t: &mut Tally) {
    let goldens = [
        (Family::A, 1, 1, 1, 2),
        (Family::A, 2, 1, 1, 2),
        (Family::A, 2, 2, 2, 2),
        (Family::A, 2, 1, 2, 3),
        (Family::A, 2, 2, 1, 3),
    ];
    for (f, n, i, j, e) in goldens {
        let cd = cartan(f, n);
        let want = BTreeMap::from([(e, 1)]);
        for (route, d) in [("table", denominator(&cd, i, j)), ("series", denominator_kashiwara(&cd, i, j))] {
            let Some(d) = t.ok(d, || format!("{} d_{i}{j}", cd.lie_type())) else {
                continue;
            };
            t.check(d.factors == want, || {
                format!("{} d_{i}{j} by {route}: got {d}, want (u-q^{e})", cd.lie_type())
            });
        }
    }
}

/// The closed forms with `xi_1 = -2`. For `E_n` at `j = kn` the literal
/// first branch is replaced by the second branch at `i = n`.
fn closed_form(cd: &CartanData, cap: usize, j: i64) -> DeltaVertex {
    let v = |i: usize, p: i64| DeltaVertex { i, p };
    let h = cd.coxeter_number() as i64;
    let n = cd.rank() as i64;
    let s = if cd.rank() >= 2 { cd.star(cd.rank() - 1) } else { 1 };
    let (k, i) = (j.div_euclid(cap as i64), j.rem_euclid(cap as i64));
    match cd.lie_type().family() {
        Family::A => v(1, -2 * j),
        Family::D if i == 0 => v(s, n - 2 - 2 * k * h),
        Family::D if i == n - 1 => v(s, -3 * n + 4 - 2 * k * h),
        Family::D => v(1, -2 * i - 2 * k * h),
        Family::E if i == 0 => v(s, -n + h - 2 * k * h),
        Family::E if i <= 3 => v(1, -2 * i - 2 * k * h),
        Family::E => v(s, n - h - 2 * i - 2 * k * h),
    }
}

fn closed_forms(scope: Scope, t: &mut Tally) {
    let max = scope.max_rank();
    let mut configs: Vec<(CartanData, usize)> = (1..=max).map(|n| (cartan(Family::A, n), n + 1)).collect();
    configs.extend([4, 5].into_iter().filter(|&n| n <= max).map(|n| (cartan(Family::D, n), n)));
    configs.extend((6..=max).map(|n| (cartan(Family::E, n), n)));
    for (cd, cap) in configs {
        let Some(cfg) = t.ok(TypeAConfig::standard(&cd, cap), || label(&cd)) else {
            continue;
        };
        for j in -8i64..=8 {
            let got = cfg.x(j);
            let want = closed_form(&cd, cap, j);
            t.check(got == want, || format!("{} x({j}) = {got}, closed form {want}", cd.lie_type()));
            let boundary = cd.lie_type().family() == Family::E && j.rem_euclid(cap as i64) == 0;
            if boundary {
                let k = j.div_euclid(cap as i64);
                let h = cd.coxeter_number() as i64;
                let literal = DeltaVertex { i: 1, p: -2 * k * h };
                let outside = cfg.frame().happel_object(literal).is_ok_and(|o| o.root.0[cd.rank() - 1] != 0);
                t.check(outside, || {
                    format!("{} literal x({j}) = {literal} lies in the subquiver image", cd.lie_type())
                });
            }
        }
    }
    if scope == Scope::Full {
        t.note = Some(
            "E_n at j = kn: the first branch is applied on 1 <= i <= 3 and the second on \
             4 <= i <= n; the literal value (1, -2kh) is checked to lie outside the image of \
             the subquiver"
                .into(),
        );
    }
}

fn dorey_checks(t: &mut Tally) {
    let v = |i: usize, p: i64| DeltaVertex { i, p };
    let cases = [
        (cartan(Family::A, 2), v(2, -1), v(2, 1), Monomial::y(1, 0)),
        (cartan(Family::A, 1), v(1, 0), v(1, 2), Monomial::one()),
    ];
    for (cd, x, y, want) in cases {
        let got = DoreySolver::standard(&cd).and_then(|s| s.middle_term(x, y));
        if let Some(got) = t.ok(got, || format!("{} dorey({x}, {y})", cd.lie_type())) {
            t.check(got == want, || format!("{} dorey({x}, {y}) = {got}, want {want}", cd.lie_type()));
        }
    }
    for cd in [cartan(Family::A, 3), cartan(Family::D, 4)] {
        dorey_a(&cd, 4, t);
    }
}

/// `dorey(x(a''), x(a')) = Y_{x(a' + a'')}` for every splitting with `l <= N`.
fn dorey_a(cd: &CartanData, cap: u32, t: &mut Tally) {
    let Some(cfg) = t.ok(TypeAConfig::standard(cd, cap as usize), || label(cd)) else {
        return;
    };
    let frame = cfg.frame();
    let Some(solver) = t.ok(DoreySolver::new(frame.quiver(), frame.height()), || label(cd)) else {
        return;
    };
    for j in -8i64..=8 {
        for l1 in 1..cap {
            for l2 in 1..=cap - l1 {
                let a1 = JRoot::new(j, l1);
                let a2 = JRoot::new(j + i64::from(l1), l2);
                let (Ok(XRoot::Vertex(x1)), Ok(XRoot::Vertex(x2))) = (cfg.x_of_root(a1), cfg.x_of_root(a2))
                else {
                    t.fail(format!("{}: no vertex for {a1} or {a2}", cd.lie_type()));
                    continue;
                };
                let want = cfg.x_of_root(JRoot::new(j, l1 + l2)).map(|r| r.monomial());
                let got = solver.middle_term(x2, x1);
                match (got, want) {
                    (Ok(got), Ok(want)) => t.check(got == want, || {
                        format!("{} {a1} + {a2}: dorey gives {got}, want {want}", cd.lie_type())
                    }),
                    (Err(e), _) | (_, Err(e)) => t.fail(format!("{} {a1} + {a2}: {e}", cd.lie_type())),
                }
            }
        }
    }
}

fn pole_positions(scope: Scope, t: &mut Tally) {
    for cd in cartans(scope) {
        for i in cd.vertices() {
            for j in cd.vertices() {
                let Some(d) = t.ok(denominator(&cd, i, j), || label(&cd)) else {
                    continue;
                };
                let parity = u32::from(cd.parity(i)) + u32::from(cd.parity(j));
                for (&k, &m) in &d.factors {
                    t.check(k > 0 && m > 0 && (k + parity) % 2 == 0, || {
                        format!("{} d_{i}{j} has a zero at q^{k} (multiplicity {m})", label(&cd))
                    });
                }
                if let Some(back) = t.ok(denominator(&cd, j, i), || label(&cd)) {
                    t.check(back.factors == d.factors, || format!("{} d_{i}{j} != d_{j}{i}", label(&cd)));
                }
            }
        }
    }
}

fn tau_structure(scope: Scope, t: &mut Tally) {
    for cd in cartans(scope) {
        let n = cd.rank();
        let h = cd.coxeter_number() as i64;
        for (name, q) in orientations(&cd) {
            let frame = Happel::standard(q);
            let simple = (1..=n).map(|i| RootVec::simple(n, i));
            for v in simple.chain(cd.positive_roots().iter().cloned()) {
                let back = frame.tau(&frame.tau(&v, 1), -1);
                t.check(frame.tau(&v, h) == v && back == v, || {
                    format!("{} {name}: tau^h or tau^-1 tau moves {v}", label(&cd))
                });
            }
            for a in cd.positive_roots() {
                let obj = IndecObject::new(a.clone(), 0);
                let got = frame.tau_object(&obj, h);
                t.check(got == IndecObject::new(a.clone(), -2), || {
                    format!("{} {name}: tau^h {obj} = {got}", label(&cd))
                });
            }
            for x in window(&cd, 3 * h) {
                let bumped = DeltaVertex { i: cd.star(x.i), p: x.p + h };
                let pair = frame.happel_object(x).and_then(|a| Ok((a, frame.happel_object(bumped)?)));
                let Some((a, b)) = t.ok(pair, || format!("{} {name} {x}", label(&cd))) else {
                    continue;
                };
                t.check(b == IndecObject::new(a.root.clone(), a.shift + 1), || {
                    format!("{} {name}: H({x})[1] = {a}[1] but H({bumped}) = {b}", label(&cd))
                });
                t.check(frame.happel_inverse(&a).is_ok_and(|y| y == x), || {
                    format!("{} {name}: H^-1 H({x}) != {x}", label(&cd))
                });
            }
        }
    }
}

fn kostant_census(t: &mut Tally) {
    const CAP: u32 = 4;
    let (lo, hi) = (0i64, 9i64);
    let cd = cartan(Family::A, 3);
    let Some(cfg) = t.ok(TypeAConfig::standard(&cd, CAP as usize), || label(&cd)) else {
        return;
    };
    let frame = cfg.frame();
    let Some(solver) = t.ok(DoreySolver::new(frame.quiver(), frame.height()), || label(&cd)) else {
        return;
    };

    // m_{delta(alpha)} against x(alpha) built one simple root at a time by Dorey's rule
    for j in lo..=hi {
        let mut cur = XRoot::Vertex(cfg.x(j));
        for l in 1..=CAP {
            let alpha = JRoot::new(j, l);
            match cfg.m_nu(&KostantPartition::single(alpha)) {
                Ok(m) => t.check(m == cur.monomial(), || {
                    format!("m_delta({alpha}) = {m}, Dorey fold gives {}", cur.monomial())
                }),
                Err(e) => t.fail(format!("m_delta({alpha}): {e}")),
            }
            if l == CAP {
                break;
            }
            let XRoot::Vertex(c) = cur else {
                t.fail(format!("Dorey fold vanished before {alpha}"));
                break;
            };
            let next = solver.middle_term(cfg.x(j + i64::from(l)), c);
            let Some(m) = t.ok(next, || format!("Dorey fold at {alpha}")) else {
                break;
            };
            match single_y(&m) {
                Some(x) => cur = x,
                None => {
                    t.fail(format!("Dorey fold at {alpha} gives {m}"));
                    break;
                }
            }
        }
    }

    let width = (hi - lo + 1) as usize;
    let big = DynkinQuiver::monotone(&cartan(Family::A, width));
    let mut homs: HashMap<(JRoot, JRoot), u64> = HashMap::new();
    let interval_rep = |r: JRoot| {
        let coords = (lo..=hi).map(|j| i64::from(r.contains(j))).collect();
        indec_rep(&big, &RootVec(coords))
    };
    let mut reps: HashMap<JRoot, QuiverRep> = HashMap::new();
    for j in lo..=hi {
        for l in 1..=CAP.min((hi - j + 1) as u32) {
            let r = JRoot::new(j, l);
            if let Some(rep) = t.ok(interval_rep(r), || format!("interval {r}")) {
                reps.insert(r, rep);
            }
        }
    }

    let mut partitions = 0u64;
    for beta in betas_up_to(lo, hi, 5) {
        let census = orbit_census(&beta, CAP);
        let brute = brute_force_kp_count(&beta, CAP);
        t.check(census.len() as u64 == brute, || {
            format!("beta {beta:?}: census has {} orbits, brute force {brute}", census.len())
        });
        let d_beta = beta
            .iter()
            .fold(Monomial::one(), |m, (&j, &d)| m.mul(&Monomial::y_at(cfg.x(j)).pow(i64::from(d))));
        let dim_g: u64 = beta.values().map(|&d| u64::from(d * d)).sum();
        let mut seen = BTreeSet::new();
        for (nu, dim) in census {
            partitions += 1;
            let Some(m) = t.ok(cfg.m_nu(&nu), || format!("m_nu for {nu}")) else {
                continue;
            };
            t.check(monomial_leq(&cd, &m, &d_beta), || format!("m_nu = {m} not below Y^D = {d_beta}"));
            t.check(seen.insert(m.clone()), || format!("m_nu = {m} repeats within beta {beta:?}"));
            let mut end = 0u64;
            for (&a, &ca) in &nu.nu {
                for (&b, &cb) in &nu.nu {
                    let hom = *homs.entry((a, b)).or_insert_with(|| {
                        hom_ext_dims(&reps[&a], &reps[&b]).map_or(u64::MAX, |(h, _)| h as u64)
                    });
                    end = end.saturating_add(u64::from(ca * cb).saturating_mul(hom));
                }
            }
            t.check(dim_g.checked_sub(end) == Some(dim), || {
                format!("orbit of {nu}: interval formula {dim}, oracle gives dim End = {end}")
            });
        }
    }
    t.note = Some(format!("A3, N = 4, j in [{lo}, {hi}]: {partitions} partitions of weight <= 5"));
}

fn single_y(m: &Monomial) -> Option<XRoot> {
    if m.is_one() {
        return Some(XRoot::Zero);
    }
    match m.exponents().iter().collect::<Vec<_>>().as_slice() {
        [(&(i, p), &1)] => Some(XRoot::Vertex(DeltaVertex { i, p })),
        _ => None,
    }
}

/// `|KP_{<=cap}(beta)|` by choosing a multiplicity for every short interval in turn.
fn brute_force_kp_count(beta: &BTreeMap<i64, u32>, cap: u32) -> u64 {
    let (Some(&lo), Some(&hi)) = (beta.keys().next(), beta.keys().next_back()) else {
        return 1;
    };
    let mut residual: Vec<u32> = (lo..=hi).map(|j| beta.get(&j).copied().unwrap_or(0)).collect();
    let intervals: Vec<(usize, usize)> = (0..residual.len())
        .flat_map(|s| (1..=cap as usize).map(move |l| (s, l)))
        .filter(|&(s, l)| s + l <= residual.len())
        .collect();

    fn rec(k: usize, intervals: &[(usize, usize)], residual: &mut [u32]) -> u64 {
        let Some(&(s, l)) = intervals.get(k) else {
            return u64::from(residual.iter().all(|&d| d == 0));
        };
        let mut total = rec(k + 1, intervals, residual);
        let mut taken = 0;
        while residual[s..s + l].iter().all(|&d| d > 0) {
            residual[s..s + l].iter_mut().for_each(|d| *d -= 1);
            taken += 1;
            total += rec(k + 1, intervals, residual);
        }
        residual[s..s + l].iter_mut().for_each(|d| *d += taken);
        total
    }
    rec(0, &intervals, &mut residual)
}

fn oracle_coherence(scope: Scope, t: &mut Tally) {
    let mut cases: Vec<(CartanData, Vec<DynkinQuiver>)> = [cartan(Family::A, 3), cartan(Family::D, 4)]
        .into_iter()
        .map(|cd| {
            let qs = DynkinQuiver::all_orientations(&cd);
            (cd, qs)
        })
        .collect();
    if scope == Scope::Full {
        let d5 = cartan(Family::D, 5);
        cases.push((d5.clone(), DynkinQuiver::all_orientations(&d5)));
        let e6 = cartan(Family::E, 6);
        let qs = orientations(&e6).into_iter().map(|(_, q)| q).collect();
        cases.push((e6, qs));
    }
    for (cd, quivers) in cases {
        for q in quivers {
            let reps: Vec<_> = cd.positive_roots().iter().map(|a| indec_rep(&q, a)).collect();
            for (a, ra) in cd.positive_roots().iter().zip(&reps) {
                for (b, rb) in cd.positive_roots().iter().zip(&reps) {
                    let (Ok(ra), Ok(rb)) = (ra, rb) else {
                        t.fail(format!(
                            "{} {}: no representation for {a} or {b}",
                            cd.lie_type(),
                            q.describe()
                        ));
                        continue;
                    };
                    let Some((hom, ext)) = t.ok(hom_ext_dims(ra, rb), || format!("{a} {b}")) else {
                        continue;
                    };
                    let chi = euler_form(&q, a, b);
                    t.check(hom as i64 - ext as i64 == chi, || {
                        format!(
                            "{} {}: hom {hom} - ext {ext} != <{a},{b}> = {chi}",
                            cd.lie_type(),
                            q.describe()
                        )
                    });
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0);
    let types = [(Family::A, 3), (Family::A, 4), (Family::D, 4), (Family::D, 5)];
    let mut decomposers: HashMap<DynkinQuiver, Decomposer> = HashMap::new();
    for case in 0..ROUND_TRIPS {
        let (f, n) = types[rng.gen_range(0..types.len())];
        let cd = cartan(f, n);
        let q = DynkinQuiver::random(&cd, rng.gen());
        let roots = cd.positive_roots();
        let mut want: BTreeMap<RootVec, usize> = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=4) {
            *want.entry(roots[rng.gen_range(0..roots.len())].clone()).or_insert(0) += 1;
        }
        if !decomposers.contains_key(&q) {
            let Some(d) = t.ok(Decomposer::new(&q), || q.describe()) else {
                continue;
            };
            decomposers.insert(q.clone(), d);
        }
        let dec = &decomposers[&q];
        let mut sum = QuiverRep::zero(&q);
        for (a, &m) in &want {
            let Ok(r) = dec.rep(a) else {
                t.fail(format!("no representation for {a}"));
                continue;
            };
            for _ in 0..m {
                sum = sum.direct_sum(r);
            }
        }
        let hidden = scramble(&sum, &mut rng);
        let got = dec.decompose(&hidden);
        t.check(got.as_ref() == Ok(&want), || {
            format!("round trip {case} on {} {}: {want:?} came back as {got:?}", cd.lie_type(), q.describe())
        });
    }
}

/// The same representation after a random change of basis at every vertex.
fn scramble(r: &QuiverRep, rng: &mut ChaCha8Rng) -> QuiverRep {
    let bases: Vec<(Matrix, Matrix)> = r
        .dims()
        .iter()
        .map(|&d| loop {
            let g = Matrix::from_rows(d, d, (0..d * d).map(|_| rat(rng.gen_range(-2..=2))).collect());
            if let Some(inv) = g.inverse() {
                break (g, inv);
            }
        })
        .collect();
    let mats = r
        .quiver()
        .arrows()
        .iter()
        .zip(r.mats())
        .map(|(&(s, tgt), m)| bases[tgt - 1].0.mul(m).mul(&bases[s - 1].1))
        .collect();
    QuiverRep::new(r.quiver().clone(), r.dims().to_vec(), mats).expect("shapes are preserved")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_counts() {
        assert_eq!(brute_force_kp_count(&BTreeMap::from([(0, 1), (1, 1)]), 4), 2);
        assert_eq!(brute_force_kp_count(&BTreeMap::from([(0, 2), (1, 2)]), 4), 3);
        assert_eq!(brute_force_kp_count(&BTreeMap::from([(0, 1), (1, 1)]), 1), 1);
        assert_eq!(brute_force_kp_count(&BTreeMap::new(), 2), 1);
    }

    #[test]
    fn corrupted_table_names_the_identity() {
        let cd = cartan(Family::A, 2);
        let good = default_table(&cd);
        let n = cd.rank();
        let order = good.order() as i64;
        let raw: Vec<Vec<Vec<i64>>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| (1..=order).map(|l| good.get(i, j, l) + i64::from(l == 3 && i == j)).collect())
                    .collect()
            })
            .collect();
        let bad = CTildeTable::from_raw(cd, raw).unwrap();
        let report = check_table(&bad);
        assert!(!report.passed);
        assert!(report.failures.iter().any(|f| f.contains("identity (")));
        assert!(check_table(&good).passed);
    }

    #[test]
    fn scope_parsing_and_unknown_criterion() {
        assert_eq!("fast".parse::<Scope>().unwrap(), Scope::Fast);
        assert!("medium".parse::<Scope>().is_err());
        assert!(run_criterion(11, Scope::Fast).is_err());
    }

    #[test]
    fn cheap_criteria_pass() {
        for id in [4, 6] {
            let r = run_criterion(id, Scope::Fast).unwrap();
            assert!(r.passed, "{}", r.summary_line());
        }
    }
}
