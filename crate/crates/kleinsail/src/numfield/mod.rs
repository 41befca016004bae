//! Totally real number fields of degree 2 to 4: exact arithmetic, certified
//! embeddings, traces and automorphisms.

mod automorphism;
mod embedding;
mod field;
mod interval;
mod roots;

pub use automorphism::{find_automorphisms, limit_denominator, Automorphism, AutomorphismSet, GroupStructure};
pub use embedding::{embed_interval, Embedding, SIGN_BISECTION_CAP};
pub use field::{alg_arith, AlgNum, ArithOp, NumberField};
pub use interval::Interval;
pub use roots::{count_real_roots, isolate_roots, refine_root, sturm_sequence, RootIsolation};

use thiserror::Error;

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not totally real")]
    NotTotallyReal,
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial must have integer coefficients")]
    NotIntegral,
    #[error("minimal polynomial {0} is reducible over Q")]
    Reducible(String),
    #[error("field degree {0} outside 2..=4")]
    BadDegree(usize),
    #[error("{0} coordinates given for a degree-{1} field")]
    BadCoords(usize, usize),
    #[error("root index {0} out of range")]
    BadRootIndex(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("{0} is not a root of the minimal polynomial")]
    NotAnAutomorphism(String),
    #[error("undecidable: {0}")]
    Undecidable(String),
}

/// Trace and certified conjugate intervals of `a`.
pub fn trace_and_conjugates(a: &AlgNum, eps: &Rat) -> (Rat, Vec<Interval>) {
    let k = a.field();
    let conj = if k.is_totally_real() {
        (0..k.degree()).map(|i| a.embed(i, eps)).collect()
    } else {
        vec![]
    };
    (a.trace(), conj)
}
