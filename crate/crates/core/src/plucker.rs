//! Grassmann–Plücker relations, entrywise powers of Plücker vectors and the
//! sign-search decomposability test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use thiserror::Error;

use crate::caps::Caps;
use crate::exactmat::{ExactError, PluckerVector, Scalar};
use crate::subset::{combinations, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PluckerError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("{count} coordinates exceed the sign-search cap {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// One term `coeff * [left] * [right]` of a quadratic bracket polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GPTerm {
    pub left: Subset,
    pub right: Subset,
    pub coeff: i64,
}

/// A normalized Grassmann–Plücker quadric: brackets have sorted indices,
/// terms are sorted, the coefficients are coprime and the leading one is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GPRelation {
    pub d: usize,
    pub n: usize,
    pub terms: Vec<GPTerm>,
}

/// Sorts a bracket, returning its sign or `None` if an index repeats.
fn normalize_bracket(idx: &[usize]) -> Option<(Subset, i64)> {
    let s = Subset::from_indices(idx.iter().copied());
    if s.len() != idx.len() {
        return None;
    }
    let mut inversions = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                inversions += 1;
            }
        }
    }
    Some((s, if inversions % 2 == 0 { 1 } else { -1 }))
}

fn ordered(a: Subset, b: Subset) -> (Subset, Subset) {
    if a.lex_cmp(b).is_le() {
        (a, b)
    } else {
        (b, a)
    }
}

/// The relation for index tuples `b` and `bp`, or `None` if it is identically zero.
fn relation_for(d: usize, n: usize, b: &[usize], bp: &[usize]) -> Option<GPRelation> {
    let mut acc: BTreeMap<(Vec<usize>, Vec<usize>), i64> = BTreeMap::new();
    let mut add = |x: &[usize], y: &[usize], c: i64| {
        if let (Some((sx, ex)), Some((sy, ey))) = (normalize_bracket(x), normalize_bracket(y)) {
            let (l, r) = ordered(sx, sy);
            *acc.entry((l.to_vec(), r.to_vec())).or_insert(0) += c * ex * ey;
        }
    };
    add(b, bp, 1);
    for i in 0..d {
        let mut x = b.to_vec();
        x[0] = bp[i];
        let mut y = bp.to_vec();
        y[i] = b[0];
        add(&x, &y, -1);
    }
    let terms: Vec<GPTerm> = acc
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|((l, r), coeff)| GPTerm {
            left: Subset::from_indices(l),
            right: Subset::from_indices(r),
            coeff,
        })
        .collect();
    if terms.is_empty() {
        return None;
    }
    let g = terms.iter().fold(0i64, |g, t| g.gcd(&t.coeff));
    let sign = if terms[0].coeff < 0 { -1 } else { 1 };
    let terms = terms
        .into_iter()
        .map(|t| GPTerm { coeff: t.coeff / g * sign, ..t })
        .collect();
    Some(GPRelation { d, n, terms })
}

fn render_bracket(s: Subset, n: usize) -> String {
    let sep = if n >= 10 { "," } else { "" };
    format!("m_{{{}}}", s.iter().map(|i| i + 1).join(sep))
}

impl GPRelation {
    pub fn evaluate(&self, pv: &PluckerVector) -> Scalar {
        let f = pv.field();
        self.terms.iter().fold(f.zero(), |acc, t| {
            let l = pv.get(t.left).expect("bracket of the right size");
            let r = pv.get(t.right).expect("bracket of the right size");
            &acc + &(&f.from_i64(t.coeff) * &(l * r))
        })
    }
}

impl fmt::Display for GPRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            let mag = t.coeff.abs();
            match (k, t.coeff < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}*{}", render_bracket(t.left, self.n), render_bracket(t.right, self.n))?;
        }
        Ok(())
    }
}

fn check_shape(d: usize, n: usize) -> Result<(), PluckerError> {
    if d == 0 || d > n || n > crate::subset::MAX_ELEMENTS {
        Err(PluckerError::BadShape(format!("need 0 < d <= n, got d={d}, n={n}")))
    } else {
        Ok(())
    }
}

/// All distinct nonzero Grassmann–Plücker quadrics for `Gr(d, n)`, sorted.
pub fn gp_relations(d: usize, n: usize) -> Result<Vec<GPRelation>, PluckerError> {
    check_shape(d, n)?;
    let mut seen: BTreeSet<Vec<GPTerm>> = BTreeSet::new();
    let tails = combinations(n, d - 1);
    let primes = combinations(n, d);
    for b1 in 0..n {
        for tail in &tails {
            if tail.contains(b1) {
                continue;
            }
            let mut b = vec![b1];
            b.extend(tail.iter());
            for bp in &primes {
                if let Some(rel) = relation_for(d, n, &b, &bp.to_vec()) {
                    seen.insert(rel.terms);
                }
            }
        }
    }
    Ok(seen.into_iter().map(|terms| GPRelation { d, n, terms }).collect())
}

/// Relations not satisfied by `pv`.
pub fn gp_verify(pv: &PluckerVector) -> Result<Vec<GPRelation>, PluckerError> {
    Ok(gp_relations(pv.d(), pv.n())?
        .into_iter()
        .filter(|r| !r.evaluate(pv).is_zero())
        .collect())
}

/// Entrywise `k`-th power with `0^0 = 0`.
pub fn power_pv(pv: &PluckerVector, k: u32) -> PluckerVector {
    pv.map(|x| if x.is_zero() { x.clone() } else { x.pow(k) })
}

/// Signs making `σ · pv` satisfy every Grassmann–Plücker relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    /// `+1` or `-1` per coordinate; zero coordinates carry `+1`.
    pub signs: Vec<i8>,
    /// True in characteristic zero, where this proves decomposability.
    pub certified: bool,
}

/// A relation as `(left, right, coefficient)` coordinate-index triples.
type Relation = Vec<(usize, usize, Scalar)>;

/// Searches sign vectors in lexicographic order (`+` before `-`) with the
/// first nonzero coordinate fixed to `+`.
pub fn sign_decomposable(pv: &PluckerVector, caps: &Caps) -> Result<Option<SignAssignment>, PluckerError> {
    let count = pv.len();
    if count > caps.sign_search {
        return Err(PluckerError::TooLarge { count, cap: caps.sign_search });
    }
    let f = pv.field();
    // Each relation as (max coordinate index, terms (i, j, c * pv_i * pv_j)).
    let mut by_last: Vec<Vec<Relation>> = vec![Vec::new(); count];
    for rel in gp_relations(pv.d(), pv.n())? {
        let mut last = 0;
        let mut terms = Vec::new();
        for t in &rel.terms {
            let i = pv.index_of(t.left).unwrap();
            let j = pv.index_of(t.right).unwrap();
            last = last.max(i).max(j);
            let v = &f.from_i64(t.coeff) * &(&pv.coords()[i] * &pv.coords()[j]);
            if !v.is_zero() {
                terms.push((i, j, v));
            }
        }
        if !terms.is_empty() {
            by_last[last].push(terms);
        }
    }
    let first = pv.coords().iter().position(|x| !x.is_zero());
    let mut signs = vec![1i8; count];
    let ok = search(0, count, first, pv, &by_last, &mut signs);
    Ok(ok.then(|| SignAssignment { signs, certified: f.characteristic() == 0 }))
}

fn search(
    pos: usize,
    count: usize,
    first: Option<usize>,
    pv: &PluckerVector,
    by_last: &[Vec<Relation>],
    signs: &mut [i8],
) -> bool {
    if pos == count {
        return true;
    }
    let choices: &[i8] = if pv.coords()[pos].is_zero() || Some(pos) == first { &[1] } else { &[1, -1] };
    let f = pv.field();
    for &s in choices {
        signs[pos] = s;
        let consistent = by_last[pos].iter().all(|terms| {
            terms
                .iter()
                .fold(f.zero(), |acc, (i, j, v)| {
                    if signs[*i] * signs[*j] > 0 {
                        &acc + v
                    } else {
                        &acc - v
                    }
                })
                .is_zero()
        });
        if consistent && search(pos + 1, count, first, pv, by_last, signs) {
            return true;
        }
    }
    signs[pos] = 1;
    false
}

/// Generators of the ideal of the regular Grassmannian: the quadrics plus one
/// degree-6 monomial per `(d-2)`-prefix and disjoint 4-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerators {
    pub d: usize,
    pub n: usize,
    pub quadrics: Vec<GPRelation>,
    /// Each monomial as its six brackets.
    pub monomials: Vec<Vec<Subset>>,
}

impl IdealGenerators {
    pub fn quadric_strings(&self) -> Vec<String> {
        self.quadrics.iter().map(|q| q.to_string()).collect()
    }

    pub fn monomial_strings(&self) -> Vec<String> {
        self.monomials
            .iter()
            .map(|m| m.iter().map(|&b| render_bracket(b, self.n)).join("*"))
            .collect()
    }

    /// One generator per line, quadrics first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in self.quadric_strings().into_iter().chain(self.monomial_strings()) {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

pub fn rgr_generators(d: usize, n: usize) -> Result<IdealGenerators, PluckerError> {
    let quadrics = gp_relations(d, n)?;
    let mut monomials: Vec<Vec<Subset>> = Vec::new();
    if d >= 2 && d + 2 <= n {
        let mut seen = BTreeSet::new();
        for prefix in combinations(n, d - 2) {
            let rest = Subset::full(n).difference(prefix);
            for four in rest.k_subsets(4) {
                let p = four.to_vec();
                let mono: Vec<Subset> = p
                    .iter()
                    .tuple_combinations()
                    .map(|(&a, &b)| prefix.with(a).with(b))
                    .collect();
                let mut key: Vec<u64> = mono.iter().map(|s| s.bits()).collect();
                key.sort_unstable();
                if seen.insert(key) {
                    monomials.push(mono);
                }
            }
        }
    }
    Ok(IdealGenerators { d, n, quadrics, monomials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::{plucker, Matrix};

    #[test]
    fn simple_relation() {
        let rels = gp_relations(2, 4).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].to_string(), "m_{12}*m_{34} - m_{13}*m_{24} + m_{14}*m_{23}");
        assert!(gp_relations(1, 3).unwrap().is_empty());
        assert!(gp_relations(3, 4).unwrap().is_empty());
        assert!(gp_relations(0, 3).is_err());
    }

    #[test]
    fn wide_indices_use_commas() {
        let rels = gp_relations(2, 10).unwrap();
        assert!(rels[0].to_string().starts_with("m_{1,2}*m_{3,4}"));
    }

    #[test]
    fn verify_examples() {
        let pv = plucker(&Matrix::from_i64(&[[1, 0, 1, 0], [0, 1, 1, 1]])).unwrap();
        assert!(gp_verify(&pv).unwrap().is_empty());
        let ones = PluckerVector::from_i64(2, 4, &[1; 6]).unwrap();
        assert_eq!(gp_verify(&ones).unwrap().len(), 1);
        let any = PluckerVector::from_i64(3, 4, &[5, -1, 2, 7]).unwrap();
        assert!(gp_verify(&any).unwrap().is_empty());
    }

    #[test]
    fn powers() {
        let pv = PluckerVector::from_i64(1, 2, &[1, 0]).unwrap();
        assert_eq!(power_pv(&pv, 0), pv);
        let c4 = PluckerVector::from_i64(3, 4, &[6, 4, -4, -6]).unwrap();
        assert_eq!(power_pv(&c4, 1), c4);
        assert_eq!(power_pv(&c4, 2), PluckerVector::from_i64(3, 4, &[36, 16, 16, 36]).unwrap());
    }

    #[test]
    fn sign_search_examples() {
        let caps = Caps::default();
        // products m12 m34 = 1, m13 m24 = 1, m14 m23 = 2
        let yes = PluckerVector::from_i64(2, 4, &[1, 1, 1, 2, 1, 1]).unwrap();
        let s = sign_decomposable(&yes, &caps).unwrap().unwrap();
        assert!(s.certified);
        let signed = yes.with_coords(
            yes.coords()
                .iter()
                .zip(&s.signs)
                .map(|(x, &g)| if g < 0 { -x } else { x.clone() })
                .collect(),
        );
        assert!(gp_verify(&signed).unwrap().is_empty());
        let no = PluckerVector::from_i64(2, 4, &[1, 1, 1, 4, 1, 1]).unwrap();
        assert!(sign_decomposable(&no, &caps).unwrap().is_none());
        let d1 = PluckerVector::from_i64(1, 3, &[3, -1, 2]).unwrap();
        assert!(sign_decomposable(&d1, &caps).unwrap().is_some());
        let big = PluckerVector::from_i64(2, 7, &[1; 21]).unwrap();
        assert!(matches!(sign_decomposable(&big, &caps), Err(PluckerError::TooLarge { .. })));
    }

    #[test]
    fn rgr_examples() {
        let g = rgr_generators(2, 4).unwrap();
        assert_eq!(g.quadrics.len(), 1);
        assert_eq!(g.monomial_strings(), ["m_{12}*m_{13}*m_{14}*m_{23}*m_{24}*m_{34}"]);
        let g = rgr_generators(1, 3).unwrap();
        assert!(g.quadrics.is_empty() && g.monomials.is_empty());
        assert_eq!(rgr_generators(2, 5).unwrap().monomials.len(), 5);
    }
}
