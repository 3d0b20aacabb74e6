use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use rmx_core::ar_quiver::{
    euler_form, ext1_dim, hom_dim, DeltaVertex, DynkinQuiver, Happel, HeightFunction, IndecObject,
};
use rmx_core::denominators::{denominator, pole_order, DoreySolver};
use rmx_core::quantum_cartan::{default_table, CTildeTable};
use rmx_core::rep_oracle::{decompose, hom_ext_dims, indec_rep, QuiverRep};
use rmx_core::root_system::{
    build_cartan, build_cartan_with_parity, CartanData, Family, LieType, ParityChoice, RootVec,
};

const TYPES: [(Family, usize); 11] = [
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 5),
    (Family::A, 8),
    (Family::D, 4),
    (Family::D, 5),
    (Family::D, 7),
    (Family::E, 6),
    (Family::E, 7),
    (Family::E, 8),
];

fn cd(k: usize) -> CartanData {
    let (f, n) = TYPES[k % TYPES.len()];
    build_cartan(LieType::new(f, n).unwrap())
}

fn small(f: Family, n: usize) -> CartanData {
    build_cartan(LieType::new(f, n).unwrap())
}

/// A parity-valid vertex near `p`.
fn vertex(cd: &CartanData, i: usize, p: i64) -> DeltaVertex {
    let i = 1 + i % cd.rank();
    let p = if (p - i64::from(cd.parity(i))).rem_euclid(2) == 0 { p } else { p + 1 };
    DeltaVertex { i, p }
}

fn frame(cd: &CartanData, seed: u64, lift: i64) -> Happel {
    let q = DynkinQuiver::random(cd, seed);
    let xi = HeightFunction::standard(&q).shifted(2 * lift).unwrap();
    Happel::new(q, xi).unwrap()
}

struct Placed {
    table: CTildeTable,
    frame: Happel,
    reps: BTreeMap<RootVec, QuiverRep>,
}

fn placed(cd: &CartanData, seed: u64) -> Placed {
    let frame = frame(cd, seed, 0);
    let reps =
        cd.positive_roots().iter().map(|a| (a.clone(), indec_rep(frame.quiver(), a).unwrap())).collect();
    Placed { table: default_table(cd), frame, reps }
}

/// A solver with every simple-pole pair in `|p| <= h`.
type SolverCase = (CartanData, DoreySolver, Vec<(DeltaVertex, DeltaVertex)>);

fn solvers() -> &'static [SolverCase] {
    static CELL: OnceLock<Vec<SolverCase>> = OnceLock::new();
    CELL.get_or_init(|| {
        [small(Family::A, 3), small(Family::D, 4)]
            .into_iter()
            .map(|c| {
                let solver = DoreySolver::standard(&c).unwrap();
                let h = c.coxeter_number() as i64;
                let verts: Vec<DeltaVertex> = (-h..=h)
                    .flat_map(|p| c.vertices().map(move |i| (i, p)))
                    .filter(|&(i, p)| (p - i64::from(c.parity(i))).rem_euclid(2) == 0)
                    .map(|(i, p)| DeltaVertex { i, p })
                    .collect();
                let mut pairs = Vec::new();
                for &x in &verts {
                    for &y in &verts {
                        if pole_order(solver.table(), x, y).unwrap() == 1 {
                            pairs.push((x, y));
                        }
                    }
                }
                (c, solver, pairs)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn happel_round_trip(k in 0usize..11, seed in any::<u64>(), lift in -3i64..3, i in 0usize..8, p in -60i64..60) {
        let c = cd(k);
        let f = frame(&c, seed, lift);
        let x = vertex(&c, i, p);
        let obj = f.happel_object(x).unwrap();
        prop_assert!(c.is_positive_root(&obj.root));
        prop_assert_eq!(f.happel_inverse(&obj).unwrap(), x);
    }

    #[test]
    fn tau_has_an_inverse(k in 0usize..11, seed in any::<u64>(), coords in prop::collection::vec(-5i64..5, 8), times in -40i64..40) {
        let c = cd(k);
        let f = frame(&c, seed, 0);
        let v = RootVec(coords[..c.rank()].to_vec());
        prop_assert_eq!(f.tau(&f.tau(&v, times), -times), v.clone());
        let h = c.coxeter_number() as i64;
        prop_assert_eq!(f.tau(&v, h), v);
    }

    #[test]
    fn nakayama_shift(k in 0usize..11, seed in any::<u64>(), i in 0usize..8, p in -90i64..90) {
        let c = cd(k);
        let f = frame(&c, seed, 0);
        let x = vertex(&c, i, p);
        let h = c.coxeter_number() as i64;
        let a = f.happel_object(x).unwrap();
        let b = f.happel_object(DeltaVertex { i: c.star(x.i), p: x.p + h }).unwrap();
        prop_assert_eq!(b, IndecObject::new(a.root, a.shift + 1));
    }

    #[test]
    fn formulas_agree_with_the_oracle_in_any_frame(which in 0usize..3, seed in any::<u64>(), lift in -3i64..3, i in 0usize..5, j in 0usize..5, p in -12i64..12, r in -12i64..12) {
        let c = [small(Family::A, 3), small(Family::A, 4), small(Family::D, 4)][which].clone();
        let f = frame(&c, seed, lift);
        let t = default_table(&c);
        let (x, y) = (vertex(&c, i, p), vertex(&c, j, r));
        let (ox, oy) = (f.happel_object(x).unwrap(), f.happel_object(y).unwrap());
        let rep = |a: &RootVec| indec_rep(f.quiver(), a).unwrap();
        let (mx, my) = (rep(&ox.root), rep(&oy.root));
        // Hom(M_x[s], M_y[u]) and Ext^1(M_y[u], M_x[s]) only see u - s in {0, 1}
        let (hom, ext) = match oy.shift - ox.shift {
            0 => (hom_ext_dims(&mx, &my).unwrap().0, hom_ext_dims(&my, &mx).unwrap().1),
            1 => (hom_ext_dims(&mx, &my).unwrap().1, hom_ext_dims(&my, &mx).unwrap().0),
            _ => (0, 0),
        };
        prop_assert_eq!(hom_dim(&t, x, y) as usize, hom);
        prop_assert_eq!(ext1_dim(&t, x, y) as usize, ext);
    }

    #[test]
    fn hom_minus_ext_is_the_euler_form(which in 0usize..2, seed in any::<u64>(), i in 0usize..4, j in 0usize..4, p in -12i64..12, r in -12i64..12) {
        let c = [small(Family::A, 3), small(Family::D, 4)][which].clone();
        let pl = placed(&c, seed);
        let (x, y) = (vertex(&c, i, p), vertex(&c, j, r));
        let (ox, oy) = (pl.frame.happel_object(x).unwrap(), pl.frame.happel_object(y).unwrap());
        prop_assume!(ox.shift == oy.shift);
        let hom = i64::from(hom_dim(&pl.table, x, y));
        let ext = i64::from(ext1_dim(&pl.table, y, x));
        prop_assert_eq!(hom - ext, euler_form(pl.frame.quiver(), &ox.root, &oy.root));
        let (h_rep, e_rep) = hom_ext_dims(&pl.reps[&ox.root], &pl.reps[&oy.root]).unwrap();
        prop_assert_eq!((hom, ext), (h_rep as i64, e_rep as i64));
    }

    #[test]
    fn decompose_round_trip(which in 0usize..3, seed in any::<u64>(), picks in prop::collection::vec(0usize..100, 1..4)) {
        let c = [small(Family::A, 3), small(Family::A, 4), small(Family::D, 4)][which].clone();
        let q = DynkinQuiver::random(&c, seed);
        let roots = c.positive_roots();
        let mut want = BTreeMap::new();
        let mut sum = QuiverRep::zero(&q);
        for k in picks {
            let a = &roots[k % roots.len()];
            *want.entry(a.clone()).or_insert(0usize) += 1;
            sum = sum.direct_sum(&indec_rep(&q, a).unwrap());
        }
        prop_assert_eq!(decompose(&sum).unwrap(), want);
    }

    #[test]
    fn denominators_are_symmetric(k in 0usize..11, i in 0usize..8, j in 0usize..8) {
        let c = cd(k);
        let (i, j) = (1 + i % c.rank(), 1 + j % c.rank());
        let d = denominator(&c, i, j).unwrap();
        prop_assert_eq!(&d.factors, &denominator(&c, j, i).unwrap().factors);
        prop_assert_eq!(&d.factors, &denominator(&c, c.star(i), c.star(j)).unwrap().factors);
    }

    #[test]
    fn parity_choice_does_not_change_denominators(k in 0usize..11, i in 0usize..8, j in 0usize..8) {
        let (f, n) = TYPES[k];
        let ty = LieType::new(f, n).unwrap();
        let a = build_cartan_with_parity(ty, ParityChoice::Standard);
        let b = build_cartan_with_parity(ty, ParityChoice::Flipped);
        let (i, j) = (1 + i % n, 1 + j % n);
        prop_assert_eq!(denominator(&a, i, j).unwrap().factors, denominator(&b, i, j).unwrap().factors);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dorey_choices_agree(which in 0usize..2, pick in any::<prop::sample::Index>()) {
        let (_, solver, pairs) = &solvers()[which];
        let &(x, y) = pick.get(pairs);
        let outcomes = solver.all_outcomes(x, y).unwrap();
        prop_assert!(!outcomes.is_empty());
        for o in &outcomes {
            prop_assert_eq!(&o.monomial, &outcomes[0].monomial);
            prop_assert!(o.conserves_dimension());
        }
        prop_assert_eq!(solver.middle_term(x, y).unwrap(), outcomes[0].monomial.clone());
    }
}
