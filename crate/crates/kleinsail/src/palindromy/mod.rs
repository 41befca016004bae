//! Canonical symmetry classes, the palindromy criteria, classification of
//! symmetric lattice configurations and the conjugators between them.

mod classes;
mod classify;
mod conjugator;
mod criterion;
mod tables;
mod verify;

pub use classes::{class_membership, class_relations_hold, verify_class_membership, Membership};
pub use classify::{classify_configuration, classify_points, renumberings, CaseWitness, Orientation};
pub use conjugator::build_conjugator;
pub use criterion::{criterion, Certificate, Verdict, Witness, DEFAULT_SEARCH_BOUND};
pub use tables::{
    canonical_matrix, case_basis_coeffs, case_class, case_targets, configuration_of, ClassKind,
};
pub use verify::{verify_tables, verify_tables_with, TableCheck, TableReport};

use thiserror::Error;

use crate::cf::CfError;
use crate::exact::ExactError;
use crate::numfield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PalindromyError {
    #[error("{kind} index {index} out of range")]
    IndexOutOfRange { kind: ClassKind, index: usize },
    #[error("no automorphism of the required kind: {0}")]
    NoSuchAutomorphism(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("bounded search failed: {0}")]
    BoundedSearchFailed(String),
    #[error("not a proper symmetry: {0}")]
    NotProper(String),
    #[error("iteration cap reached: {0}")]
    IterationCap(String),
    #[error("no lattice configuration matched: {0}")]
    NoConfiguration(String),
    #[error("table mismatch: {0}")]
    TableMismatch(String),
    #[error("unsupported dimension {0}")]
    BadDimension(usize),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
