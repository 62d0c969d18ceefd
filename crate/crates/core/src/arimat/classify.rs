use num_bigint::BigInt;
use num_traits::One;

use crate::caps::Caps;
use crate::exactmat::{IntMatrix, Matrix};
use crate::matroid::MatroidView;
use crate::subset::Subset;

use super::group_list::{lift_multiplicity, GroupList, Lift};
use super::ArimatError;

/// Properties of one torsion-free lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftProperties {
    pub regular: bool,
    /// Lexicographically first multiplicative basis containing `y`.
    pub multiplicative_basis: Option<Subset>,
    pub all_bases_multiplicative: bool,
}

/// Outcome of [`classify`]. Each flag carries the lift that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub regular: bool,
    pub weakly_multiplicative: bool,
    pub strongly_multiplicative: bool,
    /// A torsion-free regular lift.
    pub regular_lift: Option<Lift>,
    /// A lift that is regular and has a multiplicative basis containing `y`,
    /// together with that basis (in lift column indices).
    pub regular_weak_lift: Option<(Lift, Subset)>,
    /// A lift with a multiplicative basis containing `y`.
    pub weak_lift: Option<(Lift, Subset)>,
    /// A lift all of whose bases are multiplicative.
    pub strong_lift: Option<Lift>,
    pub lifts_examined: usize,
    /// Whether every candidate lift of the search space was examined.
    pub exhaustive: bool,
}

fn is_multiplicative(m: &IntMatrix, b: Subset) -> bool {
    let prod = b.iter().fold(BigInt::one(), |acc, j| acc * lift_multiplicity(m, Subset::singleton(j)));
    lift_multiplicity(m, b) == prod
}

/// Regularity and multiplicative bases of a lift, enumerating bases up to
/// the enumeration cap.
pub fn lift_properties(lift: &Lift, caps: &Caps) -> Result<LiftProperties, ArimatError> {
    let m = &lift.matrix;
    if m.cols() > caps.enumeration {
        return Err(ArimatError::TooLarge { size: m.cols(), cap: caps.enumeration });
    }
    let view = MatroidView::new(Matrix::from(m));
    let regular = view.find_u24().is_none();
    let r = view.rank();
    let ground = Subset::full(m.cols());
    let mut multiplicative_basis = None;
    let mut all = true;
    for b in ground.k_subsets(r) {
        if m.select_columns(&b.to_vec()).rank() != r {
            continue;
        }
        let mult = is_multiplicative(m, b);
        if mult && multiplicative_basis.is_none() && lift.y.is_subset_of(b) {
            multiplicative_basis = Some(b);
        }
        if !mult {
            all = false;
        }
        if !all && multiplicative_basis.is_some() {
            break;
        }
    }
    Ok(LiftProperties { regular, multiplicative_basis, all_bases_multiplicative: all })
}

/// Lexicographically first basis `B` with `m(B) = ∏ m({b})`.
pub fn find_multiplicative_basis(gl: &GroupList) -> Result<Option<Subset>, ArimatError> {
    if gl.has_torsion() {
        return Err(ArimatError::HasTorsion);
    }
    let free = gl.free();
    let r = gl.rank(gl.ground());
    for b in gl.ground().k_subsets(r) {
        if gl.rank(b) == r && is_multiplicative(free, b) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Candidate lifts in search order, canonical first.
///
/// Lifts differ from the canonical one by an automorphism of the group
/// (torsion shift `L ↦ L + M X̄`) and by the choice of representatives
/// (`L ↦ L + Q T`). Both `M` and `T` range over small integer matrices,
/// ordered by total absolute value, then lexicographically.
pub struct LiftSearch<'a> {
    gl: &'a GroupList,
    coords: usize,
    bound: i64,
    weight: usize,
    current: Option<Vec<i64>>,
    done: bool,
}

const SEARCH_BOUND: i64 = 2;

impl<'a> LiftSearch<'a> {
    pub fn new(gl: &'a GroupList) -> LiftSearch<'a> {
        let t = gl.moduli().len();
        let coords = if t == 0 { 0 } else { t * gl.free().rows() + t * gl.len() };
        LiftSearch { gl, coords, bound: SEARCH_BOUND, weight: 0, current: None, done: false }
    }

    /// Whether the whole space has been produced.
    pub fn finished(&self) -> bool {
        self.done
    }

    fn lift_for(&self, v: &[i64]) -> Lift {
        let gl = self.gl;
        let (d, n, t) = (gl.free().rows(), gl.len(), gl.moduli().len());
        let (mv, tv) = v.split_at(t * d);
        let mut reps = gl.torsion().clone();
        for i in 0..t {
            for j in 0..n {
                let mut x = reps.get(i, j).clone();
                for k in 0..d {
                    x += BigInt::from(mv[i * d + k]) * gl.free().get(k, j);
                }
                x += BigInt::from(tv[i * n + j]) * &gl.moduli()[i];
                reps.set(i, j, x);
            }
        }
        gl.lift_with(&reps)
    }

    /// Next vector of the given weight in lexicographic order (entries in
    /// `[-bound, bound]`, sum of absolute values equal to `weight`).
    fn next_vector(&self, prev: Option<&[i64]>) -> Option<Vec<i64>> {
        let (len, w, b) = (self.coords, self.weight as i64, self.bound);
        // Successor in lexicographic order with backtracking over prefixes.
        fn fill(prefix: &mut Vec<i64>, len: usize, rem: i64, b: i64, start: Option<&[i64]>) -> bool {
            let pos = prefix.len();
            if pos == len {
                return rem == 0 && start.is_none();
            }
            let slots = (len - pos) as i64;
            let (lo, strict) = match start {
                Some(s) => (s[pos], true),
                None => (-b, false),
            };
            let mut x = lo;
            while x <= b {
                let r = rem - x.abs();
                if r >= 0 && r <= b * (slots - 1) {
                    prefix.push(x);
                    let sub = if strict && x == lo { start } else { None };
                    if fill(prefix, len, r, b, sub) {
                        return true;
                    }
                    prefix.pop();
                }
                x += 1;
            }
            false
        }
        let mut out = Vec::with_capacity(len);
        if fill(&mut out, len, w, b, prev) {
            Some(out)
        } else {
            None
        }
    }
}

impl Iterator for LiftSearch<'_> {
    type Item = Lift;

    fn next(&mut self) -> Option<Lift> {
        if self.done {
            return None;
        }
        if self.coords == 0 {
            self.done = true;
            return Some(self.gl.lift());
        }
        loop {
            let prev = self.current.take();
            match self.next_vector(prev.as_deref()) {
                Some(v) => {
                    let lift = self.lift_for(&v);
                    self.current = Some(v);
                    return Some(lift);
                }
                None => {
                    self.weight += 1;
                    if self.weight as i64 > self.bound * self.coords as i64 {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// Regularity and weak/strong multiplicativity, searching over lifts.
///
/// A torsion-free list is its own unique lift. With torsion, candidate lifts
/// are examined in [`LiftSearch`] order up to `caps.lift_search`; every
/// positive flag comes with a witnessing lift.
pub fn classify(gl: &GroupList, caps: &Caps) -> Result<Classification, ArimatError> {
    let underlying_regular = MatroidView::new(Matrix::from(gl.free())).find_u24().is_none();
    let mut c = Classification {
        regular: false,
        weakly_multiplicative: false,
        strongly_multiplicative: false,
        regular_lift: None,
        regular_weak_lift: None,
        weak_lift: None,
        strong_lift: None,
        lifts_examined: 0,
        exhaustive: false,
    };
    let mut search = LiftSearch::new(gl);
    while c.lifts_examined < caps.lift_search.max(1) {
        let Some(lift) = search.next() else { break };
        c.lifts_examined += 1;
        let p = lift_properties(&lift, caps)?;
        if p.regular && c.regular_lift.is_none() {
            c.regular_lift = Some(lift.clone());
        }
        if let Some(b) = p.multiplicative_basis {
            if c.weak_lift.is_none() {
                c.weak_lift = Some((lift.clone(), b));
            }
            if p.regular && c.regular_weak_lift.is_none() {
                c.regular_weak_lift = Some((lift.clone(), b));
            }
        }
        if p.all_bases_multiplicative && c.strong_lift.is_none() {
            c.strong_lift = Some(lift.clone());
        }
        // The underlying matroid is a minor of every lift, so no lift of a
        // non-regular list is regular.
        let settled = if underlying_regular {
            c.regular_weak_lift.is_some() && c.strong_lift.is_some()
        } else {
            c.weak_lift.is_some() && c.strong_lift.is_some()
        };
        if settled {
            break;
        }
    }
    if search.next().is_none() {
        c.exhaustive = true;
    }
    c.weakly_multiplicative = c.weak_lift.is_some();
    c.strongly_multiplicative = c.strong_lift.is_some();
    c.regular = c.regular_lift.is_some();
    Ok(c)
}
