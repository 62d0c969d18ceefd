mod common;

use arimat::arimat::{
    arith_power, classify, find_multiplicative_basis, gcd_consistency, labelled_power, labelled_to_list, verify_axioms,
    EdgeKind, LabelledEdge, LiftSearch,
};
use arimat::format;
use arimat::gpcheck::{gp_r_check, power_nonrep_certificate, u24_instance};
use arimat::{ArimatError, Caps, GroupList, IntMatrix, LabelledGraph, Matrix, MatroidView, Subset};
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// gcd of the `r x r` minors of the columns `cols`, `r` their rank.
fn brute_multiplicity(m: &IntMatrix, cols: Subset) -> BigInt {
    let rows: Vec<Vec<i64>> = m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
    let q = rational_rows(&Matrix::from_i64(&rows));
    let r = column_rank(&q, cols);
    if r == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    for rs in Subset::full(m.rows()).k_subsets(r) {
        for cs in cols.k_subsets(r) {
            let sub: Vec<_> = rs.iter().map(|i| cs.iter().map(|j| q[i][j].clone()).collect()).collect();
            g = g.gcd(cofactor_det(&sub).numer());
        }
    }
    g
}

/// `[I | B] D` with signed interval columns in `B` and nonzero diagonal `D`.
fn multiplicative_regular() -> impl Strategy<Value = GroupList> {
    (1usize..=3, 0usize..=3).prop_flat_map(|(d, extra)| {
        let col = (0..d, 0..d, prop::bool::ANY).prop_map(move |(a, b, neg)| {
            let (lo, hi) = (a.min(b), a.max(b));
            (0..d).map(|i| if i < lo || i > hi { 0 } else if neg { -1 } else { 1 }).collect::<Vec<i64>>()
        });
        let dg = proptest::collection::vec(prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), d + extra);
        (proptest::collection::vec(col, extra), dg).prop_map(move |(cols, dg)| {
            let rows: Vec<Vec<i64>> = (0..d)
                .map(|i| (0..d).map(|j| i64::from(i == j)).chain(cols.iter().map(|c| c[i])).enumerate().map(|(j, x)| x * dg[j]).collect())
                .collect();
            GroupList::from_i64(&rows)
        })
    })
}

fn torsion_list() -> impl Strategy<Value = GroupList> {
    (int_rows(1..=2, 2..=4, -2, 2), 1usize..=2).prop_flat_map(|(free, t)| {
        let n = free[0].len();
        (
            Just(free),
            proptest::collection::vec(proptest::collection::vec(0i64..6, n), t),
            proptest::collection::vec(2i64..=4, t),
        )
            .prop_map(|(free, tors, moduli)| {
                GroupList::new(
                    IntMatrix::from_i64(&free),
                    IntMatrix::from_i64(&tors),
                    moduli.into_iter().map(BigInt::from).collect(),
                )
                .unwrap()
            })
    })
}

fn labelled_graph() -> impl Strategy<Value = LabelledGraph> {
    (2usize..=4)
        .prop_flat_map(|v| {
            let edge = (0..v, 1..v, 1i64..=3, prop::bool::weighted(0.3)).prop_map(move |(a, off, l, dotted)| LabelledEdge {
                tail: a,
                head: (a + off) % v,
                label: BigInt::from(l),
                kind: if dotted { EdgeKind::Dotted } else { EdgeKind::Regular },
            });
            (Just(v), proptest::collection::vec(edge, 1..=5))
        })
        .prop_filter_map("no regular edge", |(v, mut edges)| {
            edges[0].kind = EdgeKind::Regular;
            LabelledGraph::new(v, edges).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicities_are_gcds_of_minors(rows in int_rows(1..=3, 1..=5, -3, 3)) {
        let gl = GroupList::from_i64(&rows);
        let t = gl.full_table(&Caps::default()).unwrap();
        for a in gl.ground().subsets() {
            prop_assert_eq!(t.m(a), &brute_multiplicity(gl.free(), a));
        }
        prop_assert!(gcd_consistency(&t).is_empty());
    }

    #[test]
    fn basis_multiplicity_is_absolute_determinant(rows in full_rank_rows(2..=3, 2..=5, -3, 3)) {
        let gl = GroupList::from_i64(&rows);
        let x = Matrix::from_i64(&rows);
        let t = gl.full_table(&Caps::default()).unwrap();
        for b in t.bases() {
            let det = x.column_minor(&b.to_vec()).unwrap().abs().unwrap();
            prop_assert_eq!(det.to_integer().unwrap(), t.m(b).clone());
        }
    }

    #[test]
    fn torsion_multiplicities_use_the_lift(gl in torsion_list()) {
        let t = gl.full_table(&Caps::default()).unwrap();
        let lift = gl.lift();
        for a in gl.ground().subsets() {
            prop_assert_eq!(t.m(a), &brute_multiplicity(&lift.matrix, lift.with_y(a)));
        }
        prop_assert_eq!(t.m(Subset::EMPTY), &gl.torsion_order());
        prop_assert!(matches!(find_multiplicative_basis(&gl), Err(ArimatError::HasTorsion)));
    }

    #[test]
    fn representable_tables_satisfy_the_axioms(rows in int_rows(1..=3, 1..=5, -2, 2)) {
        let t = GroupList::from_i64(&rows).full_table(&Caps::default()).unwrap();
        let rep = verify_axioms(&t, &Caps::default()).unwrap();
        prop_assert!(rep.pass(), "{:?}", rep);
        prop_assert!(gp_r_check(&t, 2, &Caps::default()).unwrap().pass);
    }

    #[test]
    fn torsion_tables_satisfy_the_axioms(gl in torsion_list()) {
        let t = gl.full_table(&Caps::default()).unwrap();
        prop_assert!(verify_axioms(&t, &Caps::default()).unwrap().pass());
        prop_assert!(gp_r_check(&t, 2, &Caps::default()).unwrap().pass);
    }

    #[test]
    fn lift_candidates_give_the_same_table(gl in torsion_list()) {
        let caps = Caps::default();
        let want = gl.full_table(&caps).unwrap();
        for lift in LiftSearch::new(&gl).take(12) {
            let got = GroupList::quotient(&lift.matrix, lift.y).full_table(&caps).unwrap();
            prop_assert_eq!(&got, &want);
        }
    }

    #[test]
    fn multiplicative_regular_lists_have_powers(gl in multiplicative_regular(), k in 0u32..=3) {
        let caps = Caps::default();
        let c = classify(&gl, &caps).unwrap();
        prop_assert!(c.regular && c.weakly_multiplicative);
        let p = arith_power(&gl, k, &caps).unwrap();
        let want = gl.full_table(&caps).unwrap().power(k);
        let got = p.full_table(&caps).unwrap();
        prop_assert_eq!(&got, &want);
        prop_assert!(verify_axioms(&got, &caps).unwrap().pass());
        prop_assert!(gp_r_check(&got, 2, &caps).unwrap().pass);
    }

    #[test]
    fn strongly_multiplicative_implies_weakly(gl in multiplicative_regular()) {
        let c = classify(&gl, &Caps::default()).unwrap();
        if c.strongly_multiplicative {
            prop_assert!(c.weakly_multiplicative);
            let t = gl.full_table(&Caps::default()).unwrap();
            for b in t.bases() {
                let prod = b.iter().fold(BigInt::one(), |acc, e| acc * t.m(Subset::singleton(e)));
                prop_assert_eq!(t.m(b), &prod);
            }
        }
    }

    #[test]
    fn torsion_powers_are_verified(gl in torsion_list(), k in 2u32..=3) {
        let caps = Caps::default();
        let want = gl.full_table(&caps).unwrap().power(k);
        match arith_power(&gl, k, &caps) {
            Ok(p) => prop_assert_eq!(p.full_table(&caps).unwrap(), want),
            Err(ArimatError::NonRegular(w)) => {
                prop_assert!(!w.satisfiable);
                prop_assert!(!MatroidView::new(Matrix::from(gl.free())).is_regular().unwrap());
            }
            Err(ArimatError::NoMultiplicativeBasis { .. }) => {
                prop_assert!(classify(&gl, &caps).unwrap().regular_weak_lift.is_none());
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn labelled_graph_powers_are_powers(g in labelled_graph(), k in 0u32..=3) {
        let caps = Caps::default();
        let base = labelled_to_list(&g).unwrap().full_table(&caps).unwrap();
        let pk = labelled_power(&g, k).unwrap().full_table(&caps).unwrap();
        prop_assert_eq!(pk, base.power(k));
    }

    #[test]
    fn non_regular_powers_fail_gp2(rows in full_rank_rows(2..=2, 4..=5, -3, 3), k in prop::sample::select(vec![0u32, 2, 3])) {
        let gl = GroupList::from_i64(&rows);
        prop_assume!(!MatroidView::new(Matrix::from_i64(&rows)).is_regular().unwrap());
        let w = power_nonrep_certificate(&gl, k).unwrap();
        prop_assert!(!w.satisfiable);
        prop_assert!(w.sigma.is_none());
        let t = gl.full_table(&Caps::default()).unwrap().power(k);
        prop_assert!(!gp_r_check(&t, 2, &Caps::default()).unwrap().pass);
        prop_assert!(matches!(arith_power(&gl, k, &Caps::default()), Err(ArimatError::NonRegular(_))));
    }

    #[test]
    fn first_power_instance_is_satisfiable(rows in full_rank_rows(2..=3, 4..=5, -3, 3)) {
        let gl = GroupList::from_i64(&rows);
        prop_assume!(!MatroidView::new(Matrix::from_i64(&rows)).is_regular().unwrap());
        prop_assert!(power_nonrep_certificate(&gl, 1).is_none());
        let w = u24_instance(&gl, 1).unwrap();
        prop_assert!(w.satisfiable);
        prop_assert_eq!(w.signed_sum(), Some(BigInt::zero()));
        if w.products.len() == 3 {
            let max = w.products.iter().max().unwrap().clone();
            let sum: BigInt = w.products.iter().sum();
            prop_assert_eq!(&sum - &max, max);
        }
    }

    #[test]
    fn documents_round_trip(gl in torsion_list(), g in labelled_graph()) {
        let v = format::group_list_to_value(&gl);
        prop_assert_eq!(format::group_list_from_value(&format::parse_document(&format::to_text(&v)).unwrap()).unwrap(), gl.clone());
        let t = gl.full_table(&Caps::default()).unwrap();
        prop_assert_eq!(format::table_from_value(&format::table_to_value(&t)).unwrap(), t);
        prop_assert_eq!(format::graph_from_value(&format::graph_to_value(&g)).unwrap(), g);
    }
}

#[test]
fn positive_multiplicities_everywhere() {
    let gl = GroupList::from_i64(&[[2, 0, 1], [0, 0, 3]]);
    let t = gl.full_table(&Caps::default()).unwrap();
    assert!(t.entries().iter().all(|(_, _, m)| m.is_positive()));
}
