//! Exact computations around powers of regular matroids and arithmetic matroids.

pub mod arimat;
pub mod caps;
pub mod decompose;
pub mod exactmat;
pub mod format;
pub mod gpcheck;
pub mod matroid;
pub mod plucker;
pub mod subset;

pub use caps::Caps;
pub use exactmat::{gcd_of, plucker, ExactError, Field, HnfResult, IntMatrix, Matrix, PluckerVector, Scalar};
pub use subset::Subset;
pub use arimat::{ArimatError, GroupList, LabelledGraph, MultiplicityTable};
pub use decompose::{PowerMode, TADFactorization};
pub use gpcheck::{GPrReport, GPrWitness};
pub use matroid::MatroidView;
