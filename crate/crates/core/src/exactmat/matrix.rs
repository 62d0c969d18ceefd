use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::integer::IntMatrix;
use super::kernel::{int_det, int_rank, mod_eliminate};
use super::{ExactError, Field, Scalar};

/// A dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Result<Matrix, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::BadShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|x| x.field() != field) {
            return Err(ExactError::FieldMismatch);
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ExactError::BadShape("ragged rows".into()));
        }
        Matrix::new(r, c, field, rows.into_iter().flatten().collect())
    }

    /// Rational matrix from small integer rows.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Matrix {
        Matrix::from_i64_in(Field::Rational, rows)
    }

    pub fn from_i64_in<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Matrix {
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("rectangular input")
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(n, n, field);
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert_eq!(x.field(), self.field, "scalar field mismatch");
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, field: self.field, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows, cols: cols.len(), field: self.field, data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Matrix { rows: rows.len(), cols: self.cols, field: self.field, data }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, ExactError> {
        if self.field != rhs.field {
            return Err(ExactError::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(ExactError::BadShape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.data[i * rhs.cols + j] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|x| x * c).collect();
        Matrix { data, ..self.clone() }
    }

    /// `self^k` for square matrices, with `self^0 = I`.
    pub fn pow(&self, k: u32) -> Result<Matrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NonSquare(self.rows, self.cols));
        }
        let mut acc = Matrix::identity(self.rows, self.field);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Integer rows obtained by clearing denominators row by row, together
    /// with the product of the row multipliers.
    fn cleared_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |l, x| {
                    l.lcm(x.as_rational().expect("rational entry").denom())
                });
                scale *= &l;
                row.iter()
                    .map(|x| {
                        let q = x.as_rational().unwrap();
                        q.numer() * (&l / q.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    fn residue_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| match x {
                        Scalar::Prime { residue, .. } => *residue,
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn det(&self) -> Result<Scalar, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NonSquare(self.rows, self.cols));
        }
        Ok(match self.field {
            Field::Rational => {
                let (rows, scale) = self.cleared_rows();
                Scalar::Rational(BigRational::new(int_det(&rows), scale))
            }
            Field::Prime(p) => {
                if self.rows == 0 {
                    return Ok(self.field.one());
                }
                let (_, d) = mod_eliminate(self.residue_rows(), self.cols, p);
                Scalar::Prime { residue: d, modulus: p }
            }
        })
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field {
            Field::Rational => int_rank(&self.cleared_rows().0, self.cols),
            Field::Prime(p) => mod_eliminate(self.residue_rows(), self.cols, p).0,
        }
    }

    /// Determinant of the square submatrix on the given columns (all rows).
    pub fn column_minor(&self, cols: &[usize]) -> Result<Scalar, ExactError> {
        self.select_columns(cols).det()
    }

    /// Rank of the submatrix on the given columns.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        if cols.is_empty() {
            0
        } else {
            self.select_columns(cols).rank()
        }
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(n, self.field).to_rows();
        for c in 0..n {
            let p = (c..n)
                .find(|&i| !a[i][c].is_zero())
                .ok_or(ExactError::RankDeficient { rank: c, needed: n })?;
            a.swap(p, c);
            inv.swap(p, c);
            let pinv = a[c][c].inv().unwrap();
            for j in 0..n {
                a[c][j] = &a[c][j] * &pinv;
                inv[c][j] = &inv[c][j] * &pinv;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                    inv[i][j] = &inv[i][j] - &(&f * &inv[c][j]);
                }
            }
        }
        Matrix::from_rows(self.field, inv)
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|x| x.to_integer().is_some())
    }

    pub fn to_int(&self) -> Result<IntMatrix, ExactError> {
        let data = self
            .data
            .iter()
            .map(|x| x.to_integer().ok_or(ExactError::NonIntegerEntries))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntMatrix::new(self.rows, self.cols, data))
    }

    /// Reduces a rational matrix modulo a prime.
    pub fn to_field(&self, field: Field) -> Result<Matrix, ExactError> {
        if field == self.field {
            return Ok(self.clone());
        }
        let data = self
            .data
            .iter()
            .map(|x| match x.as_rational() {
                Some(q) => field.from_rational(q),
                None => Err(ExactError::FieldMismatch),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::new(self.rows, self.cols, field, data)
    }
}

impl From<&IntMatrix> for Matrix {
    fn from(m: &IntMatrix) -> Matrix {
        let data = m.data().iter().map(|x| Field::Rational.from_int(x)).collect();
        Matrix { rows: m.rows(), cols: m.cols(), field: Field::Rational, data }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
