//! Arithmetic matroids of lists in finitely generated abelian groups.

mod classify;
mod graph;
mod group_list;
mod power;
mod table;

use thiserror::Error;

use crate::decompose::DecomposeError;
use crate::gpcheck::GPrWitness;

pub use classify::{classify, find_multiplicative_basis, lift_properties, Classification, LiftProperties, LiftSearch};
pub use graph::{labelled_power, labelled_to_list, EdgeKind, LabelledEdge, LabelledGraph};
pub use group_list::{lift_multiplicity, GroupList, Lift};
pub use power::{arith_power, power_lift};
pub use table::{
    gcd_consistency, trivial_table, verify_axioms, A1Violation, A2Violation, AxiomReport, GcdViolation,
    MoleculeCheck, MultiplicityTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArimatError {
    #[error("{size} elements exceed the cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("the list has torsion; lift it first")]
    HasTorsion,
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("invalid graph: {0}")]
    BadGraph(String),
    #[error("the underlying matroid is not regular; powers other than 1 violate (GP_2)")]
    NonRegular(Box<GPrWitness>),
    #[error(
        "no regular lift with a multiplicative basis found ({lifts_examined} lifts examined{}{})",
        if *exhaustive { ", search complete" } else { ", search truncated" },
        if *regular_lift { "; a regular lift exists" } else { "" }
    )]
    NoMultiplicativeBasis { regular_lift: bool, lifts_examined: usize, exhaustive: bool },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}
