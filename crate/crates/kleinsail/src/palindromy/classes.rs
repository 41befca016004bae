use super::tables::{canonical_matrix, ClassKind};
use super::PalindromyError;
use crate::cf::{classify_symmetry, CfData, CfError, SigmaShape};
use crate::exact::{rat, Rat};
use crate::numfield::{AlgNum, Automorphism, GroupStructure};

/// Outcome of a class-membership test, with the automorphism that realized it.
#[derive(Clone, Debug)]
pub struct Membership {
    pub holds: bool,
    /// `σ₃` (ord2) or the generator `σ` (cyclic) for which the relations hold.
    pub automorphism: Option<Automorphism>,
}

/// `ψ + ψ′ = c₀ + c₁(ω + ω′)` for the ten ord2 relations.
fn ord2_trace_rule(i: usize) -> (Rat, Rat) {
    match i {
        1 | 4 | 6 => (rat(0, 1), rat(-1, 1)),
        2 => (rat(1, 1), rat(-1, 1)),
        3 | 5 | 7 => (rat(2, 1), rat(-1, 1)),
        8 => (rat(1, 1), rat(-1, 2)),
        _ => (rat(2, 1), rat(-1, 2)),
    }
}

/// The fourth coordinate `c₀ + c₁ω + c₂ω′` of the ord2 relations.
fn ord2_fourth(i: usize) -> [Rat; 3] {
    match i {
        1..=3 => [rat(0, 1), rat(0, 1), rat(1, 1)],
        4 | 5 | 8 | 9 => [rat(0, 1), rat(1, 2), rat(1, 2)],
        6 | 7 => [rat(1, 2), rat(1, 2), rat(1, 2)],
        _ => [rat(0, 1), rat(-1, 4), rat(1, 4)],
    }
}

/// `(c₀, c₁, c₂)` with fourth coordinate `c₀ + c₁ω + c₂σ²ω`, and the required trace.
fn cyclic_rule(i: usize) -> ([Rat; 3], Rat) {
    let fourth = match i {
        1..=3 => [rat(0, 1), rat(0, 1), rat(1, 1)],
        4 | 5 => [rat(0, 1), rat(1, 2), rat(1, 2)],
        _ => [rat(1, 2), rat(1, 2), rat(1, 2)],
    };
    let trace = match i {
        1 | 4 | 6 => rat(0, 1),
        2 => rat(1, 1),
        _ => rat(2, 1),
    };
    (fourth, trace)
}

fn combo(c: &[Rat; 3], x: &AlgNum, y: &AlgNum) -> AlgNum {
    x.scale(&c[1]).add(&y.scale(&c[2])).add_rat(&c[0])
}

/// Whether `(x, y, z)` satisfies relation `i` of `kind` under `auto`
/// (`σ₃` for ord2, the generator `σ` for cyclic). Only the algebraic relations
/// are tested, not the conditions on `auto` itself.
pub fn class_relations_hold(
    kind: ClassKind,
    i: usize,
    x: &AlgNum,
    y: &AlgNum,
    z: &AlgNum,
    auto: &Automorphism,
) -> Result<bool, PalindromyError> {
    if !(1..=kind.class_count()).contains(&i) {
        return Err(PalindromyError::IndexOutOfRange { kind, index: i });
    }
    Ok(match kind {
        ClassKind::Ord2 => {
            let tx = auto.apply(x);
            let s = x.add(&tx);
            let t = y.add(&auto.apply(y));
            let (c0, c1) = ord2_trace_rule(i);
            t == s.scale(&c1).add_rat(&c0) && *z == combo(&ord2_fourth(i), x, &tx)
        }
        ClassKind::Cyclic => {
            let (fourth, trace) = cyclic_rule(i);
            let s2x = auto.pow(2).apply(x);
            *y == auto.apply(x) && *z == combo(&fourth, x, &s2x) && x.trace() == trace
        }
    })
}

/// Candidate automorphisms for the class conditions: all of order 2 (ord2) or
/// order-4 generators of a cyclic Galois group (cyclic).
pub(crate) fn class_automorphisms(cf: &CfData, kind: ClassKind) -> Vec<Automorphism> {
    let autos = cf.automorphisms();
    match kind {
        ClassKind::Ord2 => autos.of_order(2).cloned().collect(),
        ClassKind::Cyclic if autos.group == GroupStructure::C4 => autos.of_order(4).cloned().collect(),
        ClassKind::Cyclic => vec![],
    }
}

pub fn class_membership(cf: &CfData, kind: ClassKind, i: usize) -> Result<Membership, PalindromyError> {
    if cf.dimension() != 4 {
        return Err(PalindromyError::BadDimension(cf.dimension()));
    }
    let g = canonical_matrix(kind, i)?;
    let candidates = class_automorphisms(cf, kind);
    if candidates.is_empty() {
        return Err(PalindromyError::NoSuchAutomorphism(match kind {
            ClassKind::Ord2 => "the field has no automorphism of order 2".into(),
            ClassKind::Cyclic => "the field is not a cyclic quartic Galois extension".into(),
        }));
    }
    let v = cf.coords();
    for auto in candidates {
        if class_relations_hold(kind, i, &v[0], &v[1], &v[2], &auto)? {
            let report = classify_symmetry(&g, cf)?;
            let shape_ok = match kind {
                ClassKind::Ord2 => report.shape == SigmaShape::Order2,
                ClassKind::Cyclic => report.shape == SigmaShape::Cyclic,
            };
            if !(report.proper && shape_ok) {
                return Err(CfError::ViolatedInvariant(format!(
                    "relations of {kind} class {i} hold but the canonical matrix is not a proper symmetry"
                ))
                .into());
            }
            return Ok(Membership {
                holds: true,
                automorphism: Some(auto),
            });
        }
    }
    Ok(Membership {
        holds: false,
        automorphism: None,
    })
}

/// Whether the CF satisfies the relations of canonical class `i`.
pub fn verify_class_membership(cf: &CfData, kind: ClassKind, i: usize) -> Result<bool, PalindromyError> {
    class_membership(cf, kind, i).map(|m| m.holds)
}
