//! Matroids of represented lists: rank oracle, bases, minors and the
//! U(2,4)-minor regularity test.

use std::collections::VecDeque;

use thiserror::Error;

use crate::caps::Caps;
use crate::exactmat::{ExactError, Matrix, Scalar};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("subset {0} is not contained in the ground set")]
    OutOfGroundSet(Subset),
    #[error("ground set of size {size} exceeds the enumeration cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("regularity is not decided in characteristic 2")]
    CharacteristicTwo,
    #[error("invalid minor: {0}")]
    BadMinor(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The minor `M/J | I` of the column matroid of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidView {
    source: Matrix,
    contracted: Subset,
    ground: Subset,
    contracted_rank: usize,
}

/// A 4-element rank-2 uniform minor: `inner` restricted in `M/context`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U24Witness {
    pub inner: Subset,
    pub context: Subset,
    /// Minors `Δ_{B ∪ {i,j}}` over the pairs of `inner` in lexicographic
    /// order, where `B` is a basis of the context together with the view's
    /// contracted set, taken on a row selection that preserves all
    /// dependencies. All six are nonzero.
    pub certificate: Vec<Scalar>,
}

/// Bases joined when they differ by a single exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub vertices: Vec<Subset>,
    pub edges: Vec<(usize, usize)>,
}

impl ExchangeGraph {
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl MatroidView {
    /// The column matroid of `source` on all of its columns.
    pub fn new(source: Matrix) -> MatroidView {
        let ground = Subset::full(source.cols());
        MatroidView { source, contracted: Subset::EMPTY, ground, contracted_rank: 0 }
    }

    /// `M/contracted | restricted` for disjoint column sets.
    pub fn minor(source: Matrix, contracted: Subset, restricted: Subset) -> Result<MatroidView, MatroidError> {
        let all = Subset::full(source.cols());
        if !contracted.union(restricted).is_subset_of(all) {
            return Err(MatroidError::BadMinor("column index out of range".into()));
        }
        if !contracted.is_disjoint(restricted) {
            return Err(MatroidError::BadMinor("contracted and restricted sets overlap".into()));
        }
        let contracted_rank = source.column_rank(&contracted.to_vec());
        Ok(MatroidView { source, contracted, ground: restricted, contracted_rank })
    }

    /// Contracts a further subset of the ground set.
    pub fn contract(&self, j: Subset) -> Result<MatroidView, MatroidError> {
        self.check(j)?;
        MatroidView::minor(self.source.clone(), self.contracted.union(j), self.ground.difference(j))
    }

    /// Deletes everything outside `s`.
    pub fn restrict(&self, s: Subset) -> Result<MatroidView, MatroidError> {
        self.check(s)?;
        Ok(MatroidView { ground: s, ..self.clone() })
    }

    pub fn source(&self) -> &Matrix {
        &self.source
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    pub fn contracted(&self) -> Subset {
        self.contracted
    }

    fn check(&self, s: Subset) -> Result<(), MatroidError> {
        if s.is_subset_of(self.ground) {
            Ok(())
        } else {
            Err(MatroidError::OutOfGroundSet(s))
        }
    }

    fn raw_rank(&self, s: Subset) -> usize {
        self.source.column_rank(&s.union(self.contracted).to_vec()) - self.contracted_rank
    }

    pub fn rank_of(&self, s: Subset) -> Result<usize, MatroidError> {
        self.check(s)?;
        Ok(self.raw_rank(s))
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.raw_rank(self.ground)
    }

    pub fn is_independent(&self, s: Subset) -> Result<bool, MatroidError> {
        Ok(self.rank_of(s)? == s.len())
    }

    fn check_cap(&self, cap: usize) -> Result<(), MatroidError> {
        let size = self.ground.len();
        if size > cap {
            Err(MatroidError::TooLarge { size, cap })
        } else {
            Ok(())
        }
    }

    /// All bases in lexicographic order.
    pub fn bases(&self, caps: &Caps) -> Result<Vec<Subset>, MatroidError> {
        self.check_cap(caps.enumeration)?;
        let r = self.rank();
        Ok(self
            .ground
            .k_subsets(r)
            .into_iter()
            .filter(|&b| self.raw_rank(b) == r)
            .collect())
    }

    pub fn basis_exchange_graph(&self, caps: &Caps) -> Result<ExchangeGraph, MatroidError> {
        let vertices = self.bases(caps)?;
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i].difference(vertices[j]).len() == 1 {
                    edges.push((i, j));
                }
            }
        }
        Ok(ExchangeGraph { vertices, edges })
    }

    /// Lexicographically first U(2,4) minor.
    ///
    /// Every U(2,4) minor can be realized as `M/J | I` with `J` independent
    /// of rank `rank(M) - 2`: extend a contracted independent set by a
    /// complement of the span of `I`. So the search ranges over such `J` only.
    pub fn find_u24(&self) -> Option<U24Witness> {
        let r = self.rank();
        if r < 2 || self.ground.len() < 4 {
            return None;
        }
        for j in self.ground.k_subsets(r - 2) {
            if self.raw_rank(j) != r - 2 {
                continue;
            }
            let rest = self.ground.difference(j);
            for i in rest.k_subsets(4) {
                if self.is_u24_in_contraction(i, j, r - 2) {
                    return Some(self.witness(i, j));
                }
            }
        }
        None
    }

    /// Whether `M/J | I` is U(2,4), given `rank(J) = rj`.
    pub(crate) fn is_u24_in_contraction(&self, i: Subset, j: Subset, rj: usize) -> bool {
        let elems = i.to_vec();
        if self.raw_rank(i.union(j)) != rj + 2 {
            return false;
        }
        for a in 0..4 {
            for b in a + 1..4 {
                let pair = Subset::from_indices([elems[a], elems[b]]);
                if self.raw_rank(pair.union(j)) != rj + 2 {
                    return false;
                }
            }
        }
        true
    }

    fn witness(&self, inner: Subset, context: Subset) -> U24Witness {
        // Basis of context plus contracted columns, as source columns.
        let ctx = context.union(self.contracted);
        let mut basis: Vec<usize> = Vec::new();
        for c in ctx.iter() {
            basis.push(c);
            if self.source.column_rank(&basis) < basis.len() {
                basis.pop();
            }
        }
        let mut cols = basis.clone();
        cols.extend(inner.iter());
        let sub = self.source.select_columns(&cols);
        let target = sub.rank();
        let mut rows: Vec<usize> = Vec::new();
        for i in 0..sub.rows() {
            rows.push(i);
            if sub.select_rows(&rows).rank() < rows.len() {
                rows.pop();
            }
            if rows.len() == target {
                break;
            }
        }
        let reduced = sub.select_rows(&rows);
        let nb = basis.len();
        let mut certificate = Vec::with_capacity(6);
        for a in 0..4 {
            for b in a + 1..4 {
                let mut idx: Vec<usize> = (0..nb).collect();
                idx.push(nb + a);
                idx.push(nb + b);
                certificate.push(reduced.column_minor(&idx).expect("square selection"));
            }
        }
        U24Witness { inner, context, certificate }
    }

    /// Regularity via the excluded U(2,4) minor; refused in characteristic 2.
    pub fn is_regular(&self) -> Result<bool, MatroidError> {
        if self.source.field().characteristic() == 2 {
            return Err(MatroidError::CharacteristicTwo);
        }
        Ok(self.find_u24().is_none())
    }
}
