use super::classify::CaseWitness;
use super::tables::{canonical_matrix, case_class, case_targets, ClassKind};
use super::PalindromyError;
use crate::exact::{to_rat_vec, IntMat, IntVec, RatMat};

/// The matrix sending `z₁..z₄` to the case's target vectors.
pub(crate) fn conjugator_for(kind: ClassKind, case: usize, z: &[IntVec]) -> Result<IntMat, PalindromyError> {
    let bad = |m: &str| PalindromyError::InvalidWitness(m.into());
    let w = case_targets(kind, case)?;
    let wm = RatMat::from_cols(&w.iter().map(|v| v.iter().map(|&x| crate::exact::rat(x, 1)).collect()).collect::<Vec<_>>());
    let zm = RatMat::from_cols(&z.iter().map(|v| to_rat_vec(v)).collect::<Vec<_>>());
    let zinv = zm.inverse().ok_or_else(|| bad("z vectors are dependent"))?;
    let x = wm
        .mul_mat(&zinv)
        .to_int()
        .ok_or_else(|| bad("conjugator is not integral"))?;
    if !x.is_unimodular() {
        return Err(bad("conjugator is not unimodular"));
    }
    Ok(x)
}

/// Conjugator `X` for a witness: `X` is unimodular and `X F X⁻¹` is the canonical
/// matrix of the class reached from the witness's case.
pub fn build_conjugator(witness: &CaseWitness) -> Result<IntMat, PalindromyError> {
    witness.check()?;
    let x = conjugator_for(witness.kind, witness.case_index, &witness.z)?;
    let class = case_class(witness.kind, witness.case_index)?;
    let expected = canonical_matrix(witness.kind, class)?;
    let xinv = x.inv_unimodular()?;
    if x.mul_mat(&witness.operator).mul_mat(&xinv) != expected {
        return Err(PalindromyError::InvalidWitness(format!(
            "conjugated operator differs from {} class {class}",
            witness.kind
        )));
    }
    Ok(x)
}
