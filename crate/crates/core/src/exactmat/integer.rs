use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::kernel::{int_det, int_rank};

/// A dense row-major integer matrix. Zero rows or columns are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Hermite normal form `transform * original * P = hnf`, where column `j` of
/// `original * P` is column `permutation[j]` of the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub transform: IntMatrix,
    pub permutation: Vec<usize>,
    pub hnf: IntMatrix,
    pub rank: usize,
}

/// Smith form `left * original * right = diag(invariants, 0, ..)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithResult {
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Nonzero invariant factors, each dividing the next.
    pub invariants: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> IntMatrix {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        assert!(rows.iter().all(|x| x.as_ref().len() == c), "ragged rows");
        let data = rows.iter().flat_map(|x| x.as_ref().iter().map(|&v| BigInt::from(v))).collect();
        IntMatrix::new(r, c, data)
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> IntMatrix {
        assert!(rows.iter().all(|x| x.len() == cols), "ragged rows");
        let r = rows.len();
        IntMatrix::new(r, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix::new(self.rows, cols.len(), data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let data = rows.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        IntMatrix::new(rows.len(), self.cols, data)
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, below.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        IntMatrix::new(self.rows + below.rows, self.cols, data)
    }

    /// Places `right` to the right of `self`.
    pub fn hstack(&self, right: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, right.rows, "row count mismatch");
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(right.row(i)).cloned().collect())
            .collect();
        IntMatrix::from_rows(self.cols + right.cols, rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix::new(self.cols, self.rows, data)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * rhs.get(k, j);
                    out.data[i * rhs.cols + j] += v;
                }
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        int_det(&self.to_rows())
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        int_rank(&self.to_rows(), self.cols)
    }

    /// Hermite normal form with pivot columns chosen greedily from left to right.
    pub fn hnf(&self) -> HnfResult {
        self.hnf_with_order(&[])
    }

    /// Hermite normal form trying the columns in `preferred` first, then the
    /// remaining columns in increasing order.
    pub fn hnf_with_order(&self, preferred: &[usize]) -> HnfResult {
        let mut order: Vec<usize> = Vec::with_capacity(self.cols);
        for &j in preferred {
            if j < self.cols && !order.contains(&j) {
                order.push(j);
            }
        }
        order.extend((0..self.cols).filter(|j| !preferred.contains(j)));

        let mut a = self.to_rows();
        let mut u = IntMatrix::identity(self.rows).to_rows();
        let mut pivots = Vec::new();
        let mut rest = Vec::new();
        let mut r = 0;
        for &c in &order {
            if r < self.rows && eliminate_column(&mut a, &mut u, r, c) {
                let p = a[r][c].clone();
                for i in 0..r {
                    let f = a[i][c].div_floor(&p);
                    if !f.is_zero() {
                        row_axpy(&mut a, i, r, &f);
                        row_axpy(&mut u, i, r, &f);
                    }
                }
                pivots.push(c);
                r += 1;
            } else {
                rest.push(c);
            }
        }
        let rank = pivots.len();
        let mut permutation = pivots;
        permutation.extend(rest);
        let a = IntMatrix::from_rows(self.cols, a);
        HnfResult {
            transform: IntMatrix::from_rows(self.rows, u),
            hnf: a.select_columns(&permutation),
            permutation,
            rank,
        }
    }

    /// Smith normal form with both transforms.
    pub fn smith(&self) -> SmithResult {
        let mut a = self.to_rows();
        let mut left = IntMatrix::identity(self.rows).to_rows();
        let mut right = IntMatrix::identity(self.cols).to_rows();
        let invariants = smith_in_place(&mut a, self.cols, Some((&mut left, &mut right)));
        SmithResult {
            left: IntMatrix::from_rows(self.rows, left),
            right: IntMatrix::from_rows(self.cols, right),
            invariants,
        }
    }

    /// Nonzero invariant factors only.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut a = self.to_rows();
        smith_in_place(&mut a, self.cols, None)
    }

    /// Product of the nonzero invariant factors, i.e. the gcd of all
    /// `rank x rank` minors. Equals 1 for a rank-zero matrix.
    pub fn top_determinantal_divisor(&self) -> BigInt {
        self.invariant_factors().into_iter().fold(BigInt::one(), |acc, x| acc * x)
    }
}

/// `rows[i] -= f * rows[r]`.
fn row_axpy(rows: &mut [Vec<BigInt>], i: usize, r: usize, f: &BigInt) {
    let (src, dst) = if i < r {
        let (lo, hi) = rows.split_at_mut(r);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = rows.split_at_mut(i);
        (&lo[r], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= f * s;
        }
    }
}

/// Row operations on rows `r..` that leave the gcd of column `c` at row `r`
/// (made positive) and zeros below. Returns false if the column is zero there.
fn eliminate_column(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], r: usize, c: usize) -> bool {
    let n = a.len();
    loop {
        let Some(p) = (r..n)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
        else {
            return false;
        };
        a.swap(p, r);
        u.swap(p, r);
        let mut done = true;
        for i in r + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].div_floor(&a[r][c]);
            row_axpy(a, i, r, &f);
            row_axpy(u, i, r, &f);
            if !a[i][c].is_zero() {
                done = false;
            }
        }
        if done {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
                for x in u[r].iter_mut() {
                    *x = -&*x;
                }
            }
            return true;
        }
    }
}

fn col_axpy(rows: &mut [Vec<BigInt>], j: usize, c: usize, f: &BigInt) {
    for row in rows.iter_mut() {
        if !row[c].is_zero() {
            let v = f * &row[c];
            row[j] -= v;
        }
    }
}

fn col_swap(rows: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in rows.iter_mut() {
        row.swap(a, b);
    }
}

/// Left and right transforms accumulated by [`smith_in_place`].
type Transforms<'a> = (&'a mut Vec<Vec<BigInt>>, &'a mut Vec<Vec<BigInt>>);

/// Diagonalizes `a` in place and returns the nonzero invariant factors.
fn smith_in_place(
    a: &mut [Vec<BigInt>],
    cols: usize,
    mut transforms: Option<Transforms<'_>>,
) -> Vec<BigInt> {
    let rows = a.len();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(pi, t);
        col_swap(a, pj, t);
        if let Some((l, r)) = transforms.as_mut() {
            l.swap(pi, t);
            col_swap(r, pj, t);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let f = a[i][t].div_floor(&a[t][t]);
                row_axpy(a, i, t, &f);
                if let Some((l, _)) = transforms.as_mut() {
                    row_axpy(l, i, t, &f);
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let f = a[t][j].div_floor(&a[t][t]);
                col_axpy(a, j, t, &f);
                if let Some((_, r)) = transforms.as_mut() {
                    col_axpy(r, j, t, &f);
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Divisibility: fold any entry not divisible by the pivot into row t.
                let bad = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
                });
                match bad {
                    None => break,
                    Some(i) => {
                        let one = -BigInt::one();
                        row_axpy(a, t, i, &one);
                        if let Some((l, _)) = transforms.as_mut() {
                            row_axpy(l, t, i, &one);
                        }
                    }
                }
            }
            // Restore the minimal-entry pivot if reduction produced a smaller one.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if (i == t || j == t)
                        && !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            if let Some((bi, bj)) = best {
                if a[bi][bj].abs() < a[t][t].abs() || a[t][t].is_zero() {
                    a.swap(bi, t);
                    col_swap(a, bj, t);
                    if let Some((l, r)) = transforms.as_mut() {
                        l.swap(bi, t);
                        col_swap(r, bj, t);
                    }
                }
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            if let Some((l, _)) = transforms.as_mut() {
                for x in l[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        t += 1;
    }
    (0..t).map(|i| a[i][i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hnf(m: &IntMatrix, h: &HnfResult) {
        assert!(h.transform.det().abs().is_one());
        let perm = m.select_columns(&h.permutation);
        assert_eq!(h.transform.mul(&perm), h.hnf);
        for c in 0..h.rank {
            let p = h.hnf.get(c, c);
            assert!(p.is_positive());
            for i in 0..h.hnf.rows() {
                if i < c {
                    assert!(!h.hnf.get(i, c).is_negative() && h.hnf.get(i, c) < p);
                } else if i > c {
                    assert!(h.hnf.get(i, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn hnf_examples() {
        let m = IntMatrix::from_i64(&[[0, 1], [1, 0]]);
        let h = m.hnf();
        assert_eq!(h.hnf, IntMatrix::identity(2));
        check_hnf(&m, &h);

        let m = IntMatrix::from_i64(&[[2, 1], [0, 1]]);
        let h = m.hnf();
        assert_eq!(h.hnf, IntMatrix::from_i64(&[[2, 0], [0, 1]]));
        assert_eq!(h.transform, IntMatrix::from_i64(&[[1, -1], [0, 1]]));

        let m = IntMatrix::from_i64(&[[1, 0, 1], [0, 3, -2]]);
        let h = m.hnf_with_order(&[0, 1]);
        assert_eq!(h.permutation, [0, 1, 2]);
        assert_eq!(h.hnf, m);
        check_hnf(&m, &h);
    }

    #[test]
    fn hnf_rank_deficient_and_preferred() {
        let m = IntMatrix::from_i64(&[[2, 4, 1], [3, 6, 5], [1, 2, 0]]);
        let h = m.hnf_with_order(&[1, 2]);
        assert_eq!(h.rank, 2);
        assert_eq!(&h.permutation[..2], &[1, 2]);
        check_hnf(&m, &h);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn smith_examples() {
        let m = IntMatrix::from_i64(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = m.smith();
        let inv: Vec<BigInt> = [2, 6, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.invariants, inv);
        let d = s.left.mul(&m).mul(&s.right);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { inv[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &want);
            }
        }
        assert!(s.left.det().abs().is_one() && s.right.det().abs().is_one());
        assert_eq!(m.top_determinantal_divisor(), BigInt::from(144));
    }

    #[test]
    fn determinantal_divisor_of_rank_one_row() {
        assert_eq!(IntMatrix::from_i64(&[[2, 1]]).top_determinantal_divisor(), BigInt::one());
        assert_eq!(IntMatrix::from_i64(&[[0, 0]]).top_determinantal_divisor(), BigInt::one());
        assert_eq!(IntMatrix::from_i64(&[[4], [6]]).top_determinantal_divisor(), BigInt::from(2));
    }
}
