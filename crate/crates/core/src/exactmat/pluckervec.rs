use crate::subset::{combinations, Subset};

use super::{ExactError, Field, Matrix, Scalar};

/// Coordinates indexed by the `d`-subsets of `{0, .., n-1}` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerVector {
    d: usize,
    n: usize,
    field: Field,
    keys: Vec<Subset>,
    coords: Vec<Scalar>,
}

impl PluckerVector {
    /// Builds a vector from coordinates listed in lexicographic key order.
    pub fn new(d: usize, n: usize, field: Field, coords: Vec<Scalar>) -> Result<PluckerVector, ExactError> {
        if d > n || n > crate::subset::MAX_ELEMENTS {
            return Err(ExactError::BadShape(format!("no {d}-subsets of a {n}-set")));
        }
        let keys = combinations(n, d);
        if keys.len() != coords.len() {
            return Err(ExactError::BadShape(format!(
                "{} coordinates given, {} expected",
                coords.len(),
                keys.len()
            )));
        }
        if coords.iter().any(|x| x.field() != field) {
            return Err(ExactError::FieldMismatch);
        }
        Ok(PluckerVector { d, n, field, keys, coords })
    }

    pub fn from_i64(d: usize, n: usize, coords: &[i64]) -> Result<PluckerVector, ExactError> {
        let f = Field::Rational;
        PluckerVector::new(d, n, f, coords.iter().map(|&x| f.from_i64(x)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn keys(&self) -> &[Subset] {
        &self.keys
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Scalar)> {
        self.keys.iter().copied().zip(&self.coords)
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        if s.len() != self.d {
            return None;
        }
        self.keys.binary_search_by(|k| k.lex_cmp(s)).ok()
    }

    pub fn get(&self, s: Subset) -> Option<&Scalar> {
        self.index_of(s).map(|i| &self.coords[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Nonzero pattern of the coordinates.
    pub fn support(&self) -> Vec<bool> {
        self.coords.iter().map(|x| !x.is_zero()).collect()
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> PluckerVector {
        PluckerVector { coords: self.coords.iter().map(f).collect(), ..self.clone() }
    }

    pub fn with_coords(&self, coords: Vec<Scalar>) -> PluckerVector {
        assert_eq!(coords.len(), self.coords.len());
        PluckerVector { coords, ..self.clone() }
    }
}

/// Maximal minors of a full-rank `d x n` matrix.
pub fn plucker(m: &Matrix) -> Result<PluckerVector, ExactError> {
    let (d, n) = (m.rows(), m.cols());
    if d == 0 || d > n {
        return Err(ExactError::BadShape(format!("need 0 < d <= N, got {d}x{n}")));
    }
    let rank = m.rank();
    if rank < d {
        return Err(ExactError::RankDeficient { rank, needed: d });
    }
    let keys = combinations(n, d);
    let coords = keys
        .iter()
        .map(|s| m.column_minor(&s.to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PluckerVector { d, n, field: m.field(), keys, coords })
}
