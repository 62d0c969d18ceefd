//! Totally unimodular recovery, `X = T A D` factorizations, matrix powers and
//! finite-field counterexamples.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::caps::Caps;
use crate::exactmat::{plucker, ExactError, Field, Matrix, Scalar};
use crate::subset::{combinations, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("not regular: {0}")]
    NotRegular(String),
    #[error("{size} columns exceed the total-unimodularity check cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("inconsistent scaling ratios: {0}")]
    InconsistentRatios(String),
    #[error("odd-exact powering needs an odd exponent, got {0}")]
    EvenKForOddExact(u32),
    #[error("the matrices do not represent the same labelled matroid")]
    LabelledMatroidMismatch,
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A totally unimodular representation `A` of the same labelled matroid,
/// with the columns of `basis` forming the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuRecovery {
    pub a: Matrix,
    pub basis: Vec<usize>,
}

/// `source = t * a * diag(delta)` with `a` totally unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TADFactorization {
    pub t: Matrix,
    pub a: Matrix,
    pub d: Matrix,
    pub delta: Vec<Scalar>,
    pub basis: Vec<usize>,
    pub source: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerMode {
    UpToSign,
    OddExact,
    SignPreserving,
}

impl FromStr for PowerMode {
    type Err = String;
    fn from_str(s: &str) -> Result<PowerMode, String> {
        match s {
            "up-to-sign" => Ok(PowerMode::UpToSign),
            "odd-exact" => Ok(PowerMode::OddExact),
            "sign-preserving" => Ok(PowerMode::SignPreserving),
            _ => Err(format!("unknown mode `{s}`, expected up-to-sign, odd-exact or sign-preserving")),
        }
    }
}

impl fmt::Display for PowerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PowerMode::UpToSign => "up-to-sign",
            PowerMode::OddExact => "odd-exact",
            PowerMode::SignPreserving => "sign-preserving",
        })
    }
}

fn check_full_rank_rational(x: &Matrix) -> Result<(), DecomposeError> {
    if x.field() != Field::Rational {
        return Err(DecomposeError::BadInput("a rational matrix is required".into()));
    }
    let (d, n) = (x.rows(), x.cols());
    if d == 0 || d > n {
        return Err(DecomposeError::BadInput(format!("need 0 < d <= N, got {d}x{n}")));
    }
    let r = x.rank();
    if r < d {
        return Err(DecomposeError::BadInput(format!("matrix has rank {r} < {d}")));
    }
    Ok(())
}

/// Lexicographically first basis of the column matroid (greedy).
pub fn first_basis(x: &Matrix) -> Vec<usize> {
    let mut basis = Vec::new();
    for j in 0..x.cols() {
        basis.push(j);
        if x.column_rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// First `k x k` submatrix (rows, columns) whose determinant is not in {0, ±1}.
pub fn tu_violation(a: &Matrix, caps: &Caps) -> Result<Option<(Subset, Subset)>, DecomposeError> {
    if a.cols() > caps.tu_verify {
        return Err(DecomposeError::TooLarge { size: a.cols(), cap: caps.tu_verify });
    }
    let Ok(ai) = a.to_int() else {
        return Ok(Some(first_non_integer(a)));
    };
    for k in 1..=a.rows().min(a.cols()) {
        for rs in combinations(a.rows(), k) {
            let sub = ai.select_rows(&rs.to_vec());
            for cs in combinations(a.cols(), k) {
                let det = sub.select_columns(&cs.to_vec()).det();
                if det.magnitude() > &1u32.into() {
                    return Ok(Some((rs, cs)));
                }
            }
        }
    }
    Ok(None)
}

fn first_non_integer(a: &Matrix) -> (Subset, Subset) {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j).to_integer().is_none() {
                return (Subset::singleton(i), Subset::singleton(j));
            }
        }
    }
    unreachable!("called on an integer matrix")
}

fn same_support(x: &Matrix, y: &Matrix) -> Result<bool, DecomposeError> {
    Ok(plucker(x)?.support() == plucker(y)?.support())
}

/// `X_B^{-1} X` for a basis `B`.
fn normalized(x: &Matrix, basis: &[usize]) -> Result<Matrix, DecomposeError> {
    let xb = x.select_columns(basis);
    let inv = xb
        .inverse()
        .map_err(|_| DecomposeError::BadInput("given columns are not a basis".into()))?;
    Ok(inv.mul(x)?)
}

/// Component of each vertex in the bipartite support graph of `X_B^{-1} X`,
/// rows identified with the basis elements; visits in breadth-first order
/// from the smallest element of each component.
fn support_bfs(xp: &Matrix, basis: &[usize]) -> Vec<(usize, Option<(usize, usize)>)> {
    let n = xp.cols();
    let row_of: Vec<Option<usize>> = (0..n).map(|j| basis.iter().position(|&b| b == j)).collect();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push((start, None));
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            // Neighbours of a basis element (row i) are the nonbasic j with x'_ij != 0,
            // and vice versa.
            let nbrs: Vec<(usize, (usize, usize))> = match row_of[v] {
                Some(i) => (0..n)
                    .filter(|&j| row_of[j].is_none() && !xp.get(i, j).is_zero())
                    .map(|j| (j, (i, j)))
                    .collect(),
                None => (0..basis.len())
                    .filter(|&i| !xp.get(i, v).is_zero())
                    .map(|i| (basis[i], (i, v)))
                    .collect(),
            };
            for (w, edge) in nbrs {
                if !seen[w] {
                    seen[w] = true;
                    order.push((w, Some(edge)));
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Recovers a totally unimodular matrix from the lexicographically first basis.
pub fn recover_tu(x: &Matrix, caps: &Caps) -> Result<TuRecovery, DecomposeError> {
    check_full_rank_rational(x)?;
    recover_tu_with_basis(x, &first_basis(x), caps)
}

/// As [`recover_tu`] with the identity block placed on `basis`.
pub fn recover_tu_with_basis(x: &Matrix, basis: &[usize], caps: &Caps) -> Result<TuRecovery, DecomposeError> {
    check_full_rank_rational(x)?;
    if x.cols() > caps.tu_verify {
        return Err(DecomposeError::TooLarge { size: x.cols(), cap: caps.tu_verify });
    }
    let xp = normalized(x, basis)?;
    let f = x.field();
    let d = basis.len();
    let n = x.cols();
    let row_of: Vec<Option<usize>> = (0..n).map(|j| basis.iter().position(|&b| b == j)).collect();
    // Scale r_i for rows (stored at their basis element) and c_j for nonbasic
    // columns so that every forest entry becomes +1.
    let mut scale: Vec<Option<Scalar>> = vec![None; n];
    for (v, edge) in support_bfs(&xp, basis) {
        let s = match edge {
            None => f.one(),
            Some((i, j)) => {
                let e = xp.get(i, j);
                let other = if row_of[v].is_some() { j } else { basis[i] };
                let known = scale[other].as_ref().expect("parent scaled first");
                (e * known).inv().expect("forest entries are nonzero")
            }
        };
        scale[v] = Some(s);
    }
    let scale: Vec<Scalar> = scale.into_iter().map(Option::unwrap).collect();
    let mut a = Matrix::zeros(d, n, f);
    for i in 0..d {
        a.set(i, basis[i], f.one());
        for j in (0..n).filter(|&j| row_of[j].is_none()) {
            let e = xp.get(i, j);
            if e.is_zero() {
                continue;
            }
            let v = &(&scale[basis[i]] * e) * &scale[j];
            if !(v.is_one() || (-&v).is_one()) {
                return Err(DecomposeError::NotRegular(format!(
                    "scaled entry ({}, {}) equals {v}, not ±1",
                    i + 1,
                    j + 1
                )));
            }
            a.set(i, j, v);
        }
    }
    if let Some((rs, cs)) = tu_violation(&a, caps)? {
        return Err(DecomposeError::NotRegular(format!(
            "signed candidate has a subdeterminant outside {{0, ±1}} on rows {{{rs}}}, columns {{{cs}}}"
        )));
    }
    if !same_support(x, &a)? {
        return Err(DecomposeError::NotRegular("candidate represents a different matroid".into()));
    }
    Ok(TuRecovery { a, basis: basis.to_vec() })
}

/// Factors `x = T A D` from the lexicographically first basis. If `a` is
/// given it is used as the totally unimodular factor.
pub fn tad(x: &Matrix, a: Option<&Matrix>, caps: &Caps) -> Result<TADFactorization, DecomposeError> {
    check_full_rank_rational(x)?;
    tad_with_basis(x, a, &first_basis(x), caps)
}

/// As [`tad`] with `T` computed on the given basis.
pub fn tad_with_basis(
    x: &Matrix,
    a: Option<&Matrix>,
    basis: &[usize],
    caps: &Caps,
) -> Result<TADFactorization, DecomposeError> {
    check_full_rank_rational(x)?;
    let a = match a {
        None => recover_tu_with_basis(x, basis, caps)?.a,
        Some(a) => {
            if a.rows() != x.rows() || a.cols() != x.cols() || a.field() != x.field() {
                return Err(DecomposeError::InconsistentRatios("TU factor has the wrong shape".into()));
            }
            if let Some((rs, cs)) = tu_violation(a, caps)? {
                return Err(DecomposeError::InconsistentRatios(format!(
                    "supplied matrix is not totally unimodular (rows {{{rs}}}, columns {{{cs}}})"
                )));
            }
            if a.rank() < a.rows() || !same_support(x, a)? {
                return Err(DecomposeError::InconsistentRatios(
                    "supplied matrix represents a different labelled matroid".into(),
                ));
            }
            a.clone()
        }
    };
    let f = x.field();
    let n = x.cols();
    let xp = normalized(x, basis)?;
    let ap = normalized(&a, basis)?;
    let row_of: Vec<Option<usize>> = (0..n).map(|j| basis.iter().position(|&b| b == j)).collect();
    // x'_ij = a'_ij * delta_j / delta_{b_i}.
    let mut delta: Vec<Option<Scalar>> = vec![None; n];
    for (v, edge) in support_bfs(&xp, basis) {
        let s = match edge {
            None => f.one(),
            Some((i, j)) => {
                let ratio = xp.get(i, j).checked_div(ap.get(i, j)).ok_or_else(|| {
                    DecomposeError::InconsistentRatios(format!("supports differ at ({}, {})", i + 1, j + 1))
                })?;
                if row_of[v].is_some() {
                    let dj = delta[j].as_ref().unwrap();
                    dj.checked_div(&ratio).unwrap()
                } else {
                    let db = delta[basis[i]].as_ref().unwrap();
                    db * &ratio
                }
            }
        };
        delta[v] = Some(s);
    }
    let delta: Vec<Scalar> = delta.into_iter().map(Option::unwrap).collect();
    for (i, &b) in basis.iter().enumerate() {
        for j in 0..n {
            let want = &ap.get(i, j).clone() * &delta[j].checked_div(&delta[b]).unwrap();
            if xp.get(i, j) != &want {
                return Err(DecomposeError::InconsistentRatios(format!(
                    "ratio mismatch at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let d = Matrix::diagonal(f, &delta);
    let ad_b = a.mul(&d)?.select_columns(basis);
    let t = x.select_columns(basis).mul(&ad_b.inverse()?)?;
    if t.mul(&a)?.mul(&d)? != *x {
        return Err(DecomposeError::InconsistentRatios("T A D does not reproduce the input".into()));
    }
    Ok(TADFactorization { t, a, d, delta, basis: basis.to_vec(), source: x.clone() })
}

fn signed_power(x: &Scalar, k: u32) -> Scalar {
    let p = x.abs().expect("rational").pow(k);
    if x.signum() == Some(-1) {
        -p
    } else {
        p
    }
}

impl TADFactorization {
    /// `T^k A D^k`, or the sign-preserving variant.
    pub fn power(&self, k: u32, mode: PowerMode) -> Result<Matrix, DecomposeError> {
        match mode {
            PowerMode::OddExact if k.is_multiple_of(2) => Err(DecomposeError::EvenKForOddExact(k)),
            PowerMode::UpToSign | PowerMode::OddExact => {
                let dk: Vec<Scalar> = self.delta.iter().map(|x| x.pow(k)).collect();
                let f = self.a.field();
                Ok(self.t.pow(k)?.mul(&self.a)?.mul(&Matrix::diagonal(f, &dk))?)
            }
            PowerMode::SignPreserving => {
                let f = self.a.field();
                let mut tt = Matrix::identity(self.a.rows(), f);
                tt.set(0, 0, signed_power(&self.t.det()?, k));
                let dk: Vec<Scalar> = self.delta.iter().map(|x| signed_power(x, k)).collect();
                Ok(tt.mul(&self.a)?.mul(&Matrix::diagonal(f, &dk))?)
            }
        }
    }
}

/// A matrix whose Plücker coordinates are the `k`-th powers of those of `x`
/// (up to sign, exactly, or with matching signs, depending on `mode`).
pub fn power_matrix(x: &Matrix, k: u32, mode: PowerMode, caps: &Caps) -> Result<Matrix, DecomposeError> {
    if mode == PowerMode::OddExact && k.is_multiple_of(2) {
        return Err(DecomposeError::EvenKForOddExact(k));
    }
    tad(x, None, caps)?.power(k, mode)
}

/// A matrix with `|Δ_I| = |Δ_I(x1)|^k1 |Δ_I(x2)|^k2`. In odd-exact mode
/// (`k1 + k2` odd) the equality holds without absolute values; in
/// sign-preserving mode the signs follow `x1`.
pub fn power_two(
    x1: &Matrix,
    x2: &Matrix,
    k1: u32,
    k2: u32,
    mode: PowerMode,
    caps: &Caps,
) -> Result<Matrix, DecomposeError> {
    if mode == PowerMode::OddExact && (k1 + k2).is_multiple_of(2) {
        return Err(DecomposeError::EvenKForOddExact(k1 + k2));
    }
    check_full_rank_rational(x1)?;
    check_full_rank_rational(x2)?;
    if x1.rows() != x2.rows() || x1.cols() != x2.cols() || !same_support(x1, x2)? {
        return Err(DecomposeError::LabelledMatroidMismatch);
    }
    let f1 = tad(x1, None, caps)?;
    let f2 = tad(x2, Some(&f1.a), caps)?;
    let f = x1.field();
    match mode {
        PowerMode::UpToSign | PowerMode::OddExact => {
            let t = f1.t.pow(k1)?.mul(&f2.t.pow(k2)?)?;
            let dk: Vec<Scalar> = f1
                .delta
                .iter()
                .zip(&f2.delta)
                .map(|(a, b)| &a.pow(k1) * &b.pow(k2))
                .collect();
            Ok(t.mul(&f1.a)?.mul(&Matrix::diagonal(f, &dk))?)
        }
        PowerMode::SignPreserving => {
            let mag = |x: &Scalar, k: u32| x.abs().expect("rational").pow(k);
            let (t1, t2) = (f1.t.det()?, f2.t.det()?);
            let mut top = &mag(&t1, k1) * &mag(&t2, k2);
            if t1.signum() == Some(-1) {
                top = -top;
            }
            let mut tt = Matrix::identity(x1.rows(), f);
            tt.set(0, 0, top);
            let dk: Vec<Scalar> = f1
                .delta
                .iter()
                .zip(&f2.delta)
                .map(|(a, b)| {
                    let m = &mag(a, k1) * &mag(b, k2);
                    if a.signum() == Some(-1) {
                        -m
                    } else {
                        m
                    }
                })
                .collect();
            Ok(tt.mul(&f1.a)?.mul(&Matrix::diagonal(f, &dk))?)
        }
    }
}

/// The pair `X(a)`, `X_k(a)` over `F_p` witnessing that powers of U(2,4)
/// representations can exist in positive characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexamplePair {
    pub p: u64,
    pub k: u32,
    pub a: u64,
    pub x: Matrix,
    pub xk: Matrix,
}

fn u24_family(f: Field, a: &Scalar) -> Matrix {
    let mut m = Matrix::from_i64_in(f, &[[1, 0, 1, 1], [0, 1, 1, 0]]);
    m.set(1, 3, a.clone());
    m
}

/// First `a` in `2..p` with `a^k ∉ {0, 1}` and `(a-1)^k = ±(a^k - 1)`.
pub fn counterexample_fp(p: u64, k: u32) -> Result<Option<CounterexamplePair>, DecomposeError> {
    let f = Field::prime(p)?;
    if k < 2 {
        return Err(DecomposeError::BadInput("exponent must be at least 2".into()));
    }
    for a in 2..p {
        let av = f.from_int(&a.into());
        let ak = av.pow(k);
        if ak.is_zero() || ak.is_one() {
            continue;
        }
        let lhs = (&av - &f.one()).pow(k);
        let rhs = &ak - &f.one();
        if lhs != rhs && lhs != -&rhs {
            continue;
        }
        let x = u24_family(f, &av);
        let xk = u24_family(f, &ak);
        let (px, pk) = (plucker(&x)?, plucker(&xk)?);
        let powered = px.coords().iter().zip(pk.coords()).all(|(u, v)| {
            let uk = u.pow(k);
            !u.is_zero() && (*v == uk || *v == -&uk)
        });
        if powered {
            return Ok(Some(CounterexamplePair { p, k, a, x, xk }));
        }
    }
    Ok(None)
}
