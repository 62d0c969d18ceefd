//! Grassmann-Plücker conditions `(GP_r)` on multiplicity tables and
//! non-representability certificates for powers of non-regular lists.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::arimat::{ArimatError, GroupList, MultiplicityTable};
use crate::caps::Caps;
use crate::exactmat::Matrix;
use crate::matroid::MatroidView;
use crate::subset::Subset;

/// One instance of `(GP_r)`: a minor `(M/J)|_I` of rank `r` on `2r`
/// elements, a split `I = S ∪ T`, and the products over the eligible set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPrWitness {
    pub r: usize,
    pub i: Subset,
    pub j: Subset,
    pub s: Subset,
    pub t: Subset,
    /// `{t ∈ T : T \ t and S ∪ t independent in M/J}`.
    pub cal_t: Subset,
    /// `m(S ∪ t ∪ J) * m((T \ t) ∪ J)` for `t` in `cal_t`, increasing.
    pub products: Vec<BigInt>,
    pub satisfiable: bool,
    /// Signs (aligned with `products`) summing the products to zero.
    pub sigma: Option<Vec<i8>>,
}

impl GPrWitness {
    /// Recomputes `Σ σ_t p_t`.
    pub fn signed_sum(&self) -> Option<BigInt> {
        let sigma = self.sigma.as_ref()?;
        Some(
            self.products
                .iter()
                .zip(sigma)
                .fold(BigInt::zero(), |acc, (p, &s)| if s > 0 { acc + p } else { acc - p }),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPrReport {
    pub r: usize,
    pub pass: bool,
    pub instances: usize,
    pub failures: Vec<GPrWitness>,
}

/// Sign vector with first entry `+1` annihilating `products`, if any.
pub fn find_signs(products: &[BigInt]) -> Option<Vec<i8>> {
    let n = products.len();
    if n == 0 {
        return Some(Vec::new());
    }
    for mask in 0u32..1 << (n - 1) {
        let sigma: Vec<i8> = (0..n).map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 }).collect();
        let sum = products
            .iter()
            .zip(&sigma)
            .fold(BigInt::zero(), |acc, (p, &s)| if s > 0 { acc + p } else { acc - p });
        if sum.is_zero() {
            return Some(sigma);
        }
    }
    None
}

fn instance(
    r: usize,
    i: Subset,
    j: Subset,
    s: Subset,
    independent: impl Fn(Subset) -> bool,
    m: impl Fn(Subset) -> BigInt,
) -> GPrWitness {
    let t = i.difference(s);
    let mut cal_t = Subset::EMPTY;
    let mut products = Vec::new();
    for e in t.iter() {
        let (st, tt) = (s.with(e), t.without(e));
        if independent(st) && independent(tt) {
            cal_t = cal_t.with(e);
            products.push(m(st.union(j)) * m(tt.union(j)));
        }
    }
    let sigma = find_signs(&products);
    GPrWitness { r, i, j, s, t, cal_t, satisfiable: sigma.is_some(), sigma, products }
}

/// Checks `(GP_r)` on every rank-`r` minor on `2r` elements.
///
/// Instances are visited with `J` by size then lexicographically, then `I`
/// and `S` lexicographically; failures are reported in that order.
pub fn gp_r_check(t: &MultiplicityTable, r: usize, caps: &Caps) -> Result<GPrReport, ArimatError> {
    if !(2..=4).contains(&r) {
        return Err(ArimatError::BadInput(format!("r must lie in 2..=4, got {r}")));
    }
    if t.len() > caps.gp_check {
        return Err(ArimatError::TooLarge { size: t.len(), cap: caps.gp_check });
    }
    let ground = t.ground();
    let mut failures = Vec::new();
    let mut instances = 0;
    for j in t.ordered_subsets() {
        let rj = t.rank(j);
        for i in ground.difference(j).k_subsets(2 * r) {
            if t.rank(i.union(j)) != rj + r {
                continue;
            }
            for s in i.k_subsets(r - 1) {
                instances += 1;
                let w = instance(r, i, j, s, |x| t.contracted_rank(x, j) == x.len(), |x| t.m(x).clone());
                if !w.satisfiable {
                    failures.push(w);
                }
            }
        }
    }
    Ok(GPrReport { r, pass: failures.is_empty(), instances, failures })
}

/// A `(GP_2)` failure of the `k`-th power of the arithmetic matroid of `gl`,
/// built on the first U(2,4) minor of its underlying matroid with `S` the
/// smallest element of the minor. `None` if `k = 1` or the matroid is regular.
pub fn power_nonrep_certificate(gl: &GroupList, k: u32) -> Option<GPrWitness> {
    if k == 1 {
        return None;
    }
    u24_instance(gl, k)
}

/// The `(GP_2)` instance on the first U(2,4) minor of the underlying matroid,
/// evaluated on the `k`-th power of the multiplicities. For `k = 1` it is
/// satisfiable whenever `gl` is representable, which it is by construction.
pub fn u24_instance(gl: &GroupList, k: u32) -> Option<GPrWitness> {
    let u = MatroidView::new(Matrix::from(gl.free())).find_u24()?;
    let s = Subset::singleton(u.inner.first().expect("four elements"));
    let rj = gl.rank(u.context);
    Some(instance(
        2,
        u.inner,
        u.context,
        s,
        |x| gl.rank(x.union(u.context)) - rj == x.len(),
        |x| Pow::pow(gl.multiplicity(x), k),
    ))
}
