use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::caps::Caps;
use crate::subset::Subset;

use super::ArimatError;

/// Rank and multiplicity on every subset of `{0, .., n-1}`, indexed by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    n: usize,
    rank: Vec<usize>,
    m: Vec<BigInt>,
}

impl MultiplicityTable {
    pub fn new(n: usize, rank: Vec<usize>, m: Vec<BigInt>) -> Result<MultiplicityTable, ArimatError> {
        if n > 24 {
            return Err(ArimatError::TooLarge { size: n, cap: 24 });
        }
        let size = 1usize << n;
        if rank.len() != size || m.len() != size {
            return Err(ArimatError::BadInput(format!("a table on {n} elements needs {size} entries")));
        }
        if let Some(v) = m.iter().find(|v| !v.is_positive()) {
            return Err(ArimatError::BadInput(format!("multiplicity {v} is not positive")));
        }
        Ok(MultiplicityTable { n, rank, m })
    }

    /// Builds a table from a rank function and multiplicity function.
    pub fn from_fn(
        n: usize,
        rank: impl Fn(Subset) -> usize,
        m: impl Fn(Subset) -> BigInt,
    ) -> Result<MultiplicityTable, ArimatError> {
        let all: Vec<Subset> = Subset::full(n).subsets().collect();
        MultiplicityTable::new(n, all.iter().map(|&a| rank(a)).collect(), all.iter().map(|&a| m(a)).collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn rank(&self, a: Subset) -> usize {
        self.rank[a.0 as usize]
    }

    pub fn m(&self, a: Subset) -> &BigInt {
        &self.m[a.0 as usize]
    }

    pub fn is_independent(&self, a: Subset) -> bool {
        self.rank(a) == a.len()
    }

    /// Rank of `a` in the contraction by `j`.
    pub fn contracted_rank(&self, a: Subset, j: Subset) -> usize {
        self.rank(a.union(j)) - self.rank(j)
    }

    /// Subsets ordered by size, then lexicographically.
    pub fn ordered_subsets(&self) -> Vec<Subset> {
        (0..=self.n).flat_map(|k| self.ground().k_subsets(k)).collect()
    }

    /// `(subset, rank, m)` triples in [`ordered_subsets`](Self::ordered_subsets) order.
    pub fn entries(&self) -> Vec<(Subset, usize, &BigInt)> {
        self.ordered_subsets().into_iter().map(|a| (a, self.rank(a), self.m(a))).collect()
    }

    /// Entrywise `m^k`; ranks are unchanged.
    pub fn power(&self, k: u32) -> MultiplicityTable {
        MultiplicityTable { n: self.n, rank: self.rank.clone(), m: self.m.iter().map(|v| Pow::pow(v, k)).collect() }
    }

    /// Bases of the underlying matroid in lexicographic order.
    pub fn bases(&self) -> Vec<Subset> {
        let r = self.rank(self.ground());
        self.ground().k_subsets(r).into_iter().filter(|&b| self.rank(b) == r).collect()
    }

    /// Checks that `rank` is a matroid rank function.
    pub fn rank_is_matroid(&self) -> bool {
        if self.rank(Subset::EMPTY) != 0 {
            return false;
        }
        for a in self.ground().subsets() {
            for e in self.ground().difference(a).iter() {
                let (ra, rae) = (self.rank(a), self.rank(a.with(e)));
                if rae < ra || rae > ra + 1 {
                    return false;
                }
                for f in self.ground().difference(a.with(e)).iter() {
                    // Local submodularity.
                    if self.rank(a.with(e).with(f)) + ra > rae + self.rank(a.with(f)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A dependent set whose multiplicity differs from the gcd over its
/// maximal independent subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdViolation {
    pub set: Subset,
    pub m: BigInt,
    pub expected: BigInt,
}

/// Dependent sets `A` with `m(A) ≠ gcd { m(B) : B ⊆ A, |B| = rank(B) = rank(A) }`.
pub fn gcd_consistency(t: &MultiplicityTable) -> Vec<GcdViolation> {
    let mut out = Vec::new();
    for a in t.ordered_subsets() {
        let r = t.rank(a);
        if r == a.len() {
            continue;
        }
        let expected = a
            .k_subsets(r)
            .into_iter()
            .filter(|&b| t.rank(b) == r)
            .fold(BigInt::zero(), |g, b| g.gcd(t.m(b)));
        if &expected != t.m(a) {
            out.push(GcdViolation { set: a, m: t.m(a).clone(), expected });
        }
    }
    out
}

/// One molecule `[R, S]` with `S = R ∪ F ∪ T` and its alternating sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoleculeCheck {
    pub r: Subset,
    pub s: Subset,
    pub f: Subset,
    pub t: Subset,
    pub rho: BigInt,
    pub pass: bool,
}

/// Failed divisibility for `A` and `A ∪ {e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A1Violation {
    pub set: Subset,
    pub element: usize,
}

/// Failed product identity on a molecule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2Violation {
    pub r: Subset,
    pub s: Subset,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub rank_ok: bool,
    pub molecule_checks: Vec<MoleculeCheck>,
    pub a1_checked: usize,
    pub a1_violations: Vec<A1Violation>,
    pub a2_checked: usize,
    pub a2_violations: Vec<A2Violation>,
}

impl AxiomReport {
    pub fn p_pass(&self) -> bool {
        self.molecule_checks.iter().all(|c| c.pass)
    }

    pub fn pass(&self) -> bool {
        self.rank_ok && self.p_pass() && self.a1_violations.is_empty() && self.a2_violations.is_empty()
    }
}

/// Checks the arithmetic matroid axioms (P), (A1) and (A2) exhaustively.
pub fn verify_axioms(t: &MultiplicityTable, caps: &Caps) -> Result<AxiomReport, ArimatError> {
    if t.len() > caps.axioms {
        return Err(ArimatError::TooLarge { size: t.len(), cap: caps.axioms });
    }
    let ground = t.ground();
    let mut a1_checked = 0;
    let mut a1_violations = Vec::new();
    for a in ground.subsets() {
        for e in ground.difference(a).iter() {
            a1_checked += 1;
            let (ma, mae) = (t.m(a), t.m(a.with(e)));
            let ok = if t.rank(a.with(e)) == t.rank(a) {
                ma.is_multiple_of(mae)
            } else {
                mae.is_multiple_of(ma)
            };
            if !ok {
                a1_violations.push(A1Violation { set: a, element: e });
            }
        }
    }

    let mut molecule_checks = Vec::new();
    let mut a2_checked = 0;
    let mut a2_violations = Vec::new();
    for s in t.ordered_subsets() {
        for r in s.subsets() {
            let Some((f, tt)) = molecule_split(t, r, s) else { continue };
            let mut rho = BigInt::zero();
            for x in s.difference(r).subsets() {
                let a = r.union(x);
                if (s.len() - a.len()) % 2 == 0 {
                    rho += t.m(a);
                } else {
                    rho -= t.m(a);
                }
            }
            if tt.len() % 2 == 1 {
                rho = -rho;
            }
            let pass = !rho.is_negative();
            molecule_checks.push(MoleculeCheck { r, s, f, t: tt, rho, pass });
            a2_checked += 1;
            let lhs = t.m(r) * t.m(s);
            let rhs = t.m(r.union(f)) * t.m(r.union(tt));
            if lhs != rhs {
                a2_violations.push(A2Violation { r, s, lhs, rhs });
            }
        }
    }
    molecule_checks.sort_by_key(|x| (x.r.len(), x.r, x.s.len(), x.s));
    Ok(AxiomReport {
        rank_ok: t.rank_is_matroid(),
        molecule_checks,
        a1_checked,
        a1_violations,
        a2_checked,
        a2_violations,
    })
}

/// `(F, T)` if `[r, s]` is a molecule.
fn molecule_split(t: &MultiplicityTable, r: Subset, s: Subset) -> Option<(Subset, Subset)> {
    let rr = t.rank(r);
    let mut f = Subset::EMPTY;
    for e in s.difference(r).iter() {
        if t.rank(r.with(e)) > rr {
            f = f.with(e);
        }
    }
    let tt = s.difference(r).difference(f);
    for x in s.difference(r).subsets() {
        if t.rank(r.union(x)) != rr + x.intersection(f).len() {
            return None;
        }
    }
    Some((f, tt))
}

/// `m ≡ 1` on the matroid with rank function `rank`.
pub fn trivial_table(n: usize, rank: impl Fn(Subset) -> usize) -> Result<MultiplicityTable, ArimatError> {
    MultiplicityTable::from_fn(n, rank, |_| BigInt::one())
}
