//! Algebraic continued fractions: hyperbolic operators, eigenline bases,
//! symmetry detection and classification, rational invariant subspaces.

mod cfdata;
mod hyperbolic;
mod subspaces;
mod symmetry;
mod synth;

pub use cfdata::{eigenline_matrix, CfData};
pub use hyperbolic::{check_hyperbolic, HyperbolicOperator};
pub use subspaces::{invariant_subspaces, invariant_subspaces_of_kind, InvariantSubspaces, SubspaceKind};
pub use symmetry::{
    classify_symmetry, cycle_string, irrational_eigenvalue_check, is_proper, is_proper_from_mu, sigma_of,
    Mu, SigmaShape, SigmaResult, SymmetryKind, SymmetryReport,
};
pub use synth::{synthesize_operator, Synthesized};

use thiserror::Error;

use crate::exact::ExactError;
use crate::numfield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("1 and the coordinates are not a Q-basis of the field")]
    NotABasis,
    #[error("dimension {0} unsupported or inconsistent")]
    BadDimension(usize),
    #[error("not a symmetry: {0}")]
    NotASymmetry(String),
    #[error("no unit multiplier within coefficient bound {0}")]
    NotFound(i64),
    #[error("invariant subspaces do not match the expected structure: {0}")]
    StructureMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    ViolatedInvariant(String),
    #[error("structural violation: {0}")]
    StructuralViolation(String),
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
