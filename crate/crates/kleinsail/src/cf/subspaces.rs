use super::{CfError, SigmaShape, SymmetryReport};
use crate::exact::{integer_kernel, IntMat, IntVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceKind {
    Order2,
    Cyclic,
}

/// Rational invariant subspaces, each given by a lower-HNF basis of its integer points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantSubspaces {
    /// `L₊ = ker(G - I)` and `L₋ = ker(G + I)`; the rows split each into two lines.
    Order2 { plus: Vec<IntVec>, minus: Vec<IntVec> },
    /// `l₊ = ker(G - I)`, `l₋ = ker(G + I)`, `L = ker(G² + I)`.
    Cyclic { plus: IntVec, minus: IntVec, plane: Vec<IntVec> },
}

impl InvariantSubspaces {
    pub fn dims(&self) -> Vec<usize> {
        match self {
            InvariantSubspaces::Order2 { plus, minus } => vec![plus.len(), minus.len()],
            InvariantSubspaces::Cyclic { plane, .. } => vec![1, 1, plane.len()],
        }
    }
}

pub fn invariant_subspaces(g: &IntMat, report: &SymmetryReport) -> Result<InvariantSubspaces, CfError> {
    let kind = match report.shape {
        SigmaShape::Order2 => SubspaceKind::Order2,
        SigmaShape::Cyclic if g.rows() == 4 => SubspaceKind::Cyclic,
        _ => {
            return Err(CfError::Precondition(
                "invariant subspaces need a dimension-4 palindromic symmetry".into(),
            ))
        }
    };
    if !report.proper {
        return Err(CfError::Precondition("symmetry is not proper".into()));
    }
    invariant_subspaces_of_kind(g, kind)
}

pub fn invariant_subspaces_of_kind(g: &IntMat, kind: SubspaceKind) -> Result<InvariantSubspaces, CfError> {
    let n = g.rows();
    let id = IntMat::identity(n);
    let plus = integer_kernel(&g.sub_mat(&id));
    let minus = integer_kernel(&g.add_mat(&id));
    match kind {
        SubspaceKind::Order2 => {
            if plus.len() != 2 || minus.len() != 2 || n != 4 {
                return Err(CfError::StructureMismatch(format!(
                    "expected dims (2, 2), found ({}, {})",
                    plus.len(),
                    minus.len()
                )));
            }
            Ok(InvariantSubspaces::Order2 { plus, minus })
        }
        SubspaceKind::Cyclic => {
            let g2 = g.mul_mat(g);
            let plane = integer_kernel(&g2.add_mat(&id));
            if plus.len() != 1 || minus.len() != 1 || plane.len() != 2 || n != 4 {
                return Err(CfError::StructureMismatch(format!(
                    "expected dims (1, 1, 2), found ({}, {}, {})",
                    plus.len(),
                    minus.len(),
                    plane.len()
                )));
            }
            for v in &plane {
                let img = g2.mul_vec(v);
                if img.iter().zip(v).any(|(a, b)| a != &-b.clone()) {
                    return Err(CfError::StructureMismatch("G² ≠ -I on L".into()));
                }
            }
            Ok(InvariantSubspaces::Cyclic {
                plus: plus[0].clone(),
                minus: minus[0].clone(),
                plane,
            })
        }
    }
}
