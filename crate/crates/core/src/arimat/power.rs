use crate::caps::Caps;
use crate::decompose::{tad_with_basis, PowerMode};
use crate::exactmat::Matrix;
use crate::gpcheck::power_nonrep_certificate;
use crate::matroid::MatroidView;
use crate::subset::Subset;

use super::classify::classify;
use super::group_list::{GroupList, Lift};
use super::ArimatError;

/// A list representing the `k`-th power of the arithmetic matroid of `gl`.
///
/// Requires a regular lift with a multiplicative basis containing the
/// quotient columns. That lift is brought to Hermite form with the basis
/// first (the basis block is then diagonal), factored as `T A D` with `T`
/// diagonal, and `T^k A D^k` is quotiented by the powered quotient columns.
/// The result is checked against the powered table before it is returned.
///
/// ```
/// use arimat::arimat::arith_power;
/// use arimat::{Caps, GroupList};
///
/// let caps = Caps::default();
/// let x = GroupList::from_i64(&[[1, 0, 1], [0, 3, -2]]);
/// let x2 = arith_power(&x, 2, &caps)?;
/// assert_eq!(x2.full_table(&caps)?, x.full_table(&caps)?.power(2));
/// # Ok::<(), arimat::ArimatError>(())
/// ```
pub fn arith_power(gl: &GroupList, k: u32, caps: &Caps) -> Result<GroupList, ArimatError> {
    if k == 1 {
        return Ok(gl.clone());
    }
    if let Some(w) = power_nonrep_certificate(gl, k) {
        return Err(ArimatError::NonRegular(Box::new(w)));
    }
    let want = gl.full_table(caps)?.power(k);
    let c = classify(gl, caps)?;
    let Some((lift, basis)) = c.regular_weak_lift else {
        return Err(ArimatError::NoMultiplicativeBasis {
            regular_lift: c.regular,
            lifts_examined: c.lifts_examined,
            exhaustive: c.exhaustive,
        });
    };
    let out = power_lift(&lift, basis, k, caps)?;
    let got = out.full_table(caps)?;
    if got != want {
        return Err(ArimatError::Verification("powered list does not reproduce the powered table".into()));
    }
    Ok(out)
}

/// `(T^k A D^k) / Y_k` for a regular lift with multiplicative basis `basis ⊇ y`.
pub fn power_lift(lift: &Lift, basis: Subset, k: u32, caps: &Caps) -> Result<GroupList, ArimatError> {
    let m = &lift.matrix;
    let b = basis.to_vec();
    let h = m.hnf_with_order(&b);
    if h.rank == 0 {
        return Ok(GroupList::quotient(m, lift.y));
    }
    let rows: Vec<usize> = (0..h.rank).collect();
    let reduced = h.transform.mul(m).select_rows(&rows);
    for (i, &bi) in b.iter().enumerate() {
        for r in 0..h.rank {
            if r != i && !num_traits::Zero::is_zero(reduced.get(r, bi)) {
                return Err(ArimatError::Verification(format!("basis column {} is not diagonal", bi + 1)));
            }
        }
    }
    let x = Matrix::from(&reduced);
    if !MatroidView::new(x.clone()).find_u24().is_none() {
        return Err(ArimatError::Verification("lift is not regular".into()));
    }
    let fac = tad_with_basis(&x, None, &b, caps)?;
    let powered = fac.power(k, PowerMode::UpToSign)?;
    let int = powered
        .to_int()
        .map_err(|_| ArimatError::Verification("powered lift is not integral".into()))?;
    Ok(GroupList::quotient(&int, lift.y))
}
