use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::caps::Caps;
use crate::exactmat::IntMatrix;
use crate::subset::Subset;

use super::table::MultiplicityTable;
use super::ArimatError;

/// A list of `N` elements of `Z^d ⊕ Z_{q_1} ⊕ .. ⊕ Z_{q_n}`, one per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupList {
    free: IntMatrix,
    torsion: IntMatrix,
    moduli: Vec<BigInt>,
}

/// An integer matrix whose quotient by the columns `y` is a given list.
/// The list's elements are the columns outside `y`, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub matrix: IntMatrix,
    pub y: Subset,
}

impl Lift {
    /// Number of list elements (columns outside `y`).
    pub fn len(&self) -> usize {
        self.matrix.cols() - self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Maps a subset of list elements to lift columns, including `y`.
    pub fn with_y(&self, a: Subset) -> Subset {
        a.union(self.y)
    }
}

impl GroupList {
    /// Builds a list, reducing torsion entries to least non-negative residues.
    pub fn new(free: IntMatrix, torsion: IntMatrix, moduli: Vec<BigInt>) -> Result<GroupList, ArimatError> {
        if torsion.rows() != moduli.len() {
            return Err(ArimatError::BadInput(format!(
                "{} torsion rows but {} moduli",
                torsion.rows(),
                moduli.len()
            )));
        }
        if torsion.rows() > 0 && torsion.cols() != free.cols() {
            return Err(ArimatError::BadInput("torsion rows and free part differ in length".into()));
        }
        if let Some(q) = moduli.iter().find(|q| !q.is_positive()) {
            return Err(ArimatError::BadInput(format!("modulus {q} is not positive")));
        }
        if free.cols() > crate::subset::MAX_ELEMENTS {
            return Err(ArimatError::BadInput("too many elements".into()));
        }
        let n = free.cols();
        let rows = (0..moduli.len())
            .map(|i| (0..n).map(|j| torsion.get(i, j).mod_floor(&moduli[i])).collect())
            .collect();
        let torsion = IntMatrix::from_rows(n, rows);
        Ok(GroupList { free, torsion, moduli })
    }

    pub fn torsion_free(free: IntMatrix) -> GroupList {
        let n = free.cols();
        GroupList { free, torsion: IntMatrix::zeros(0, n), moduli: Vec::new() }
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> GroupList {
        GroupList::torsion_free(IntMatrix::from_i64(rows))
    }

    pub fn free(&self) -> &IntMatrix {
        &self.free
    }

    pub fn torsion(&self) -> &IntMatrix {
        &self.torsion
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.free.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn has_torsion(&self) -> bool {
        !self.moduli.is_empty()
    }

    /// `|G_t| = q_1 * .. * q_n`.
    pub fn torsion_order(&self) -> BigInt {
        self.moduli.iter().fold(BigInt::one(), |acc, q| acc * q)
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.len())
    }

    /// `[[X̄, 0], [L, Q]]` with `L` the stored residues.
    pub fn lift(&self) -> Lift {
        self.lift_with(&self.torsion)
    }

    /// The block lift with torsion rows `reps`. Its quotient is this list
    /// when `reps` agrees with the stored residues modulo the moduli, and an
    /// image of it under a group automorphism when `reps` differs by integer
    /// combinations of the free rows.
    pub fn lift_with(&self, reps: &IntMatrix) -> Lift {
        let (d, n, t) = (self.free.rows(), self.len(), self.moduli.len());
        let mut m = IntMatrix::zeros(d + t, n + t);
        for i in 0..d {
            for j in 0..n {
                m.set(i, j, self.free.get(i, j).clone());
            }
        }
        for i in 0..t {
            for j in 0..n {
                m.set(d + i, j, reps.get(i, j).clone());
            }
            m.set(d + i, n + i, self.moduli[i].clone());
        }
        let y = Subset::from_indices(n..n + t);
        Lift { matrix: m, y }
    }

    /// Rank of the elements `a` (the rank of their free parts).
    pub fn rank(&self, a: Subset) -> usize {
        if a.is_empty() || self.free.rows() == 0 {
            return 0;
        }
        self.free.select_columns(&a.to_vec()).rank()
    }

    /// Multiplicity of `a`, evaluated on the canonical lift.
    pub fn multiplicity(&self, a: Subset) -> BigInt {
        let lift = self.lift();
        lift_multiplicity(&lift.matrix, lift.with_y(a))
    }

    /// Rank and multiplicity on every subset.
    pub fn full_table(&self, caps: &Caps) -> Result<MultiplicityTable, ArimatError> {
        let n = self.len();
        if n > caps.table {
            return Err(ArimatError::TooLarge { size: n, cap: caps.table });
        }
        let lift = self.lift();
        let size = 1usize << n;
        let mut rank = Vec::with_capacity(size);
        let mut m = Vec::with_capacity(size);
        for bits in 0..size as u64 {
            let a = Subset(bits);
            rank.push(self.rank(a));
            m.push(lift_multiplicity(&lift.matrix, lift.with_y(a)));
        }
        MultiplicityTable::new(n, rank, m)
    }

    /// The list `matrix / ⟨columns y⟩`: the columns outside `y` mapped into
    /// `Z^m / ⟨y⟩`, presented in Smith form with trivial factors dropped.
    pub fn quotient(matrix: &IntMatrix, y: Subset) -> GroupList {
        let ycols = y.to_vec();
        let rest: Vec<usize> = (0..matrix.cols()).filter(|&j| !y.contains(j)).collect();
        let x = matrix.select_columns(&rest);
        if ycols.is_empty() {
            return GroupList::torsion_free(x);
        }
        let s = matrix.select_columns(&ycols).smith();
        let ux = s.left.mul(&x);
        let r = s.invariants.len();
        let free_rows: Vec<usize> = (r..matrix.rows()).collect();
        let tors: Vec<usize> = (0..r).filter(|&i| !s.invariants[i].is_one()).collect();
        let moduli: Vec<BigInt> = tors.iter().map(|&i| s.invariants[i].clone()).collect();
        GroupList::new(ux.select_rows(&free_rows), ux.select_rows(&tors), moduli)
            .expect("Smith quotient is well formed")
    }
}

/// Multiplicity of the column set `cols` of a torsion-free integer list:
/// the gcd of all maximal nonvanishing minors.
pub fn lift_multiplicity(matrix: &IntMatrix, cols: Subset) -> BigInt {
    if cols.is_empty() || matrix.rows() == 0 {
        return BigInt::one();
    }
    let g = matrix.select_columns(&cols.to_vec()).top_determinantal_divisor();
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}
