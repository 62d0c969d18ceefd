//! Independent oracles and generators shared by the property suites.
#![allow(dead_code, clippy::needless_range_loop)]

use arimat::exactmat::{Matrix, Scalar};
use arimat::Subset;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn rational_rows(m: &Matrix) -> Vec<Vec<BigRational>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.as_rational().expect("rational").clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Rank by textbook Gaussian elimination over the rationals.
pub fn gauss_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let v = &f * &a[r][k];
                    a[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn column_rank(rows: &[Vec<BigRational>], s: Subset) -> usize {
    let cols = s.to_vec();
    let sub: Vec<Vec<BigRational>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
    if cols.is_empty() {
        0
    } else {
        gauss_rank(&sub)
    }
}

/// Whether some `(M/J)|_I` with disjoint `I, J` is U(2,4), by scanning all pairs.
pub fn brute_force_u24(rank: impl Fn(Subset) -> usize, n: usize) -> bool {
    let ground = Subset::full(n);
    for j in ground.subsets() {
        let rj = rank(j);
        for i in ground.difference(j).k_subsets(4) {
            if rank(i.union(j)) != rj + 2 {
                continue;
            }
            if i.k_subsets(2).iter().all(|&p| rank(p.union(j)) == rj + 2) {
                return true;
            }
        }
    }
    false
}

/// Every square submatrix has determinant in {0, ±1}, by cofactor expansion.
pub fn is_totally_unimodular(a: &Matrix) -> bool {
    let rows = rational_rows(a);
    let (d, n) = (a.rows(), a.cols());
    for k in 1..=d.min(n) {
        for rs in Subset::full(d).k_subsets(k) {
            for cs in Subset::full(n).k_subsets(k) {
                let sub: Vec<Vec<BigRational>> =
                    rs.iter().map(|i| cs.iter().map(|j| rows[i][j].clone()).collect()).collect();
                let det = cofactor_det(&sub);
                if det.abs() > BigRational::one() {
                    return false;
                }
                if !det.is_zero() && !det.abs().is_one() {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximal minors over the `d`-subsets in lexicographic order, by cofactor expansion.
pub fn minors(m: &Matrix) -> Vec<BigRational> {
    let rows = rational_rows(m);
    Subset::full(m.cols())
        .k_subsets(m.rows())
        .iter()
        .map(|s| {
            let sub: Vec<Vec<BigRational>> = rows.iter().map(|r| s.iter().map(|j| r[j].clone()).collect()).collect();
            cofactor_det(&sub)
        })
        .collect()
}

pub fn scalars(v: &[BigRational]) -> Vec<Scalar> {
    v.iter().map(|x| Scalar::Rational(x.clone())).collect()
}

/// Integer matrices with `d` rows and `n` columns drawn from the ranges.
pub fn int_rows(
    d: std::ops::RangeInclusive<usize>,
    n: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (d, n).prop_flat_map(move |(d, n)| proptest::collection::vec(proptest::collection::vec(lo..=hi, n), d))
}

/// As [`int_rows`] with at least as many columns as rows and full row rank.
pub fn full_rank_rows(
    d: std::ops::RangeInclusive<usize>,
    n: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = Vec<Vec<i64>>> {
    int_rows(d, n, lo, hi).prop_filter("full row rank with d <= N", |rows| {
        let m = Matrix::from_i64(rows);
        m.rows() <= m.cols() && m.rank() == m.rows()
    })
}
