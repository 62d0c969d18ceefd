//! Exact scalars, matrices and integer normal forms.

mod integer;
mod kernel;
mod matrix;
mod pluckervec;
mod scalar;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use integer::{HnfResult, IntMatrix, SmithResult};
pub use matrix::Matrix;
pub use pluckervec::{plucker, PluckerVector};
pub use scalar::{is_prime, parse_rational, Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is not square ({0}x{1})")]
    NonSquare(usize, usize),
    #[error("matrix has non-integer entries")]
    NonIntegerEntries,
    #[error("matrix is rank deficient (rank {rank}, need {needed})")]
    RankDeficient { rank: usize, needed: usize },
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("all entries are zero")]
    AllZero,
    #[error("entries from different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Positive gcd of a list that is not entirely zero.
pub fn gcd_of(xs: &[BigInt]) -> Result<BigInt, ExactError> {
    let g = xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        Err(ExactError::AllZero)
    } else {
        Ok(g.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_of(&ints(&[6, 4])).unwrap(), BigInt::from(2));
        assert_eq!(gcd_of(&ints(&[2, 3, 6])).unwrap(), BigInt::from(1));
        assert_eq!(gcd_of(&ints(&[4, 9])).unwrap(), BigInt::from(1));
        assert_eq!(gcd_of(&ints(&[-6, 0])).unwrap(), BigInt::from(6));
        assert_eq!(gcd_of(&ints(&[0, 0])), Err(ExactError::AllZero));
        assert_eq!(gcd_of(&[]), Err(ExactError::AllZero));
    }
}
