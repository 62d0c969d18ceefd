//! Fraction-free elimination kernels.
//!
//! Integer matrices are eliminated with Bareiss' scheme, where every
//! intermediate entry is a minor of the input. Small inputs run in `i128`
//! with checked arithmetic and fall back to `BigInt` on overflow.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

fn to_small(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
        .collect()
}

/// Bareiss elimination in `i128`. Returns `(rank, last pivot, swap parity)` or
/// `None` on overflow.
fn bareiss_small(mut m: Vec<Vec<i128>>, cols: usize) -> Option<(usize, i128, bool)> {
    let rows = m.len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    let mut odd = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            odd = !odd;
        }
        let pivot = m[rank][c];
        for i in rank + 1..rows {
            let f = m[i][c];
            for j in c + 1..cols {
                let a = m[i][j].checked_mul(pivot)?;
                let b = f.checked_mul(m[rank][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some((rank, prev, odd))
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt, bool) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut odd = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            odd = !odd;
        }
        let pivot = m[rank][c].clone();
        for i in rank + 1..rows {
            let f = m[i][c].clone();
            if f.is_zero() {
                for j in c + 1..cols {
                    let v = &m[i][j] * &pivot;
                    m[i][j] = v / &prev;
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &m[i][j] * &pivot - &f * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    (rank, prev, odd)
}

/// Rank of an integer matrix given as rows.
pub fn int_rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    if let Some(small) = to_small(rows) {
        if let Some((r, _, _)) = bareiss_small(small, cols) {
            return r;
        }
    }
    bareiss_big(rows.to_vec(), cols).0
}

/// Determinant of a square integer matrix given as rows.
pub fn int_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let finish = |rank: usize, last: BigInt, odd: bool| {
        if rank < n {
            BigInt::zero()
        } else if odd {
            -last
        } else {
            last
        }
    };
    if let Some(small) = to_small(rows) {
        if let Some((r, last, odd)) = bareiss_small(small, n) {
            return finish(r, BigInt::from(last), odd);
        }
    }
    let (r, last, odd) = bareiss_big(rows.to_vec(), n);
    finish(r, last, odd)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// Gaussian elimination mod `p`: `(rank, determinant if square)`.
pub fn mod_eliminate(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> (usize, u64) {
    let rows = m.len();
    let mut rank = 0;
    let mut det: u128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| m[i][c] != 0) else {
            det = 0;
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            det = (p as u128 - det % p as u128) % p as u128;
        }
        let pv = m[rank][c];
        det = det * pv as u128 % p as u128;
        let inv = inv_mod(pv, p) as u128;
        for i in rank + 1..rows {
            let f = m[i][c] as u128 * inv % p as u128;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * m[rank][j] as u128 % p as u128;
                m[i][j] = ((m[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        rank += 1;
    }
    if rank < rows.min(cols) || rows != cols {
        det = if rows == cols && rank == rows { det } else { 0 };
    }
    (rank, det as u64)
}
