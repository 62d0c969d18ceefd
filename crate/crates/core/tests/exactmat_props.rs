mod common;

use arimat::exactmat::{gcd_of, plucker, Field, IntMatrix, Matrix, Scalar};
use arimat::Subset;
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use proptest::prelude::*;

fn square(n: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    n.prop_flat_map(move |n| proptest::collection::vec(proptest::collection::vec(lo..=hi, n), n))
}

fn unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && m.det().abs().is_one()
}

fn brute_top_dd(rows: &[Vec<i64>]) -> BigInt {
    let m = Matrix::from_i64(rows);
    let r = m.rank();
    if r == 0 {
        return BigInt::one();
    }
    let q = rational_rows(&m);
    let mut g = BigInt::zero();
    for rs in Subset::full(m.rows()).k_subsets(r) {
        for cs in Subset::full(m.cols()).k_subsets(r) {
            let sub: Vec<_> = rs.iter().map(|i| cs.iter().map(|j| q[i][j].clone()).collect()).collect();
            g = g.gcd(cofactor_det(&sub).numer());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn det_matches_cofactor_expansion(rows in square(1..=5, -6, 6)) {
        let m = Matrix::from_i64(&rows);
        let expect = cofactor_det(&rational_rows(&m));
        prop_assert_eq!(m.det().unwrap(), Scalar::Rational(expect.clone()));
        prop_assert_eq!(IntMatrix::from_i64(&rows).det(), expect.to_integer());
    }

    #[test]
    fn det_over_prime_field_is_reduction(rows in square(1..=4, -9, 9), p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let f = Field::prime(p).unwrap();
        let d = Matrix::from_i64_in(f, &rows).det().unwrap();
        let z = IntMatrix::from_i64(&rows).det();
        prop_assert_eq!(d, f.from_int(&z));
    }

    #[test]
    fn rank_matches_gaussian_elimination(rows in int_rows(1..=5, 1..=6, -3, 3)) {
        let m = Matrix::from_i64(&rows);
        prop_assert_eq!(m.rank(), gauss_rank(&rational_rows(&m)));
        prop_assert_eq!(IntMatrix::from_i64(&rows).rank(), m.rank());
    }

    #[test]
    fn inverse_is_two_sided(rows in square(1..=4, -5, 5)) {
        let m = Matrix::from_i64(&rows);
        prop_assume!(m.rank() == m.rows());
        let inv = m.inverse().unwrap();
        let id = Matrix::identity(m.rows(), Field::Rational);
        prop_assert_eq!(m.mul(&inv).unwrap(), id.clone());
        prop_assert_eq!(inv.mul(&m).unwrap(), id);
    }

    #[test]
    fn hnf_reconstructs(rows in int_rows(1..=4, 1..=6, -7, 7), pref in proptest::collection::vec(0usize..6, 0..3)) {
        let m = IntMatrix::from_i64(&rows);
        let h = m.hnf_with_order(&pref);
        prop_assert!(unimodular(&h.transform));
        prop_assert_eq!(h.transform.mul(&m.select_columns(&h.permutation)), h.hnf.clone());
        prop_assert_eq!(h.rank, m.rank());
        let mut sorted = h.permutation.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..m.cols()).collect::<Vec<_>>());
        for i in 0..m.rows() {
            for j in 0..h.rank {
                let x = h.hnf.get(i, j);
                if i > j {
                    prop_assert!(x.is_zero());
                } else if i == j {
                    prop_assert!(x.is_positive());
                } else {
                    prop_assert!(!x.is_negative() && x < h.hnf.get(j, j));
                }
            }
        }
        for i in h.rank..m.rows() {
            prop_assert!(h.hnf.row(i).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn smith_reconstructs(rows in int_rows(1..=4, 1..=5, -8, 8)) {
        let m = IntMatrix::from_i64(&rows);
        let s = m.smith();
        prop_assert!(unimodular(&s.left) && unimodular(&s.right));
        let d = s.left.mul(&m).mul(&s.right);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < s.invariants.len() { s.invariants[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(i, j), &want);
            }
        }
        prop_assert_eq!(s.invariants.len(), m.rank());
        for w in s.invariants.windows(2) {
            prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(m.invariant_factors(), s.invariants);
    }

    #[test]
    fn top_divisor_is_gcd_of_maximal_minors(rows in int_rows(1..=3, 1..=5, -6, 6)) {
        prop_assert_eq!(IntMatrix::from_i64(&rows).top_determinantal_divisor(), brute_top_dd(&rows));
    }

    #[test]
    fn plucker_matches_minors(rows in full_rank_rows(1..=3, 1..=6, -4, 4)) {
        let m = Matrix::from_i64(&rows);
        let pv = plucker(&m).unwrap();
        prop_assert_eq!(pv.coords().to_vec(), scalars(&minors(&m)));
        prop_assert_eq!(pv.keys().to_vec(), Subset::full(m.cols()).k_subsets(m.rows()));
    }

    #[test]
    fn plucker_scales_by_determinant(rows in full_rank_rows(2..=3, 2..=6, -4, 4), t in square(3..=3, -3, 3)) {
        let x = Matrix::from_i64(&rows);
        let d = x.rows();
        let t: Vec<Vec<i64>> = t.into_iter().take(d).map(|r| r.into_iter().take(d).collect()).collect();
        let t = Matrix::from_i64(&t);
        let det = t.det().unwrap();
        let lhs = plucker(&t.mul(&x).unwrap());
        let rhs = plucker(&x).unwrap().map(|c| &det * c);
        match lhs {
            Ok(pv) => prop_assert_eq!(pv, rhs),
            Err(_) => prop_assert!(det.is_zero()),
        }
    }

    #[test]
    fn gcd_commutes_with_powers(xs in proptest::collection::vec(-40i64..40, 1..6), k in 0u32..5) {
        let xs: Vec<BigInt> = xs.into_iter().map(BigInt::from).collect();
        match gcd_of(&xs) {
            Ok(g) => {
                prop_assert!(xs.iter().all(|x| (x % &g).is_zero()));
                let pk: Vec<BigInt> = xs.iter().map(|x| Pow::pow(x, k)).collect();
                prop_assert_eq!(gcd_of(&pk).unwrap(), Pow::pow(&g, k));
            }
            Err(_) => prop_assert!(xs.iter().all(Zero::is_zero)),
        }
    }
}
