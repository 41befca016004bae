use std::fmt;
use std::str::FromStr;

use super::PalindromyError;
use crate::exact::{rat, IntMat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// Involutive symmetries, `σ_G` of order 2.
    Ord2,
    /// Cyclic symmetries, `σ_G` a 4-cycle.
    Cyclic,
}

impl ClassKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Ord2 => "ord2",
            ClassKind::Cyclic => "cyclic",
        }
    }

    /// Number of canonical classes.
    pub fn class_count(self) -> usize {
        match self {
            ClassKind::Ord2 => 10,
            ClassKind::Cyclic => 7,
        }
    }

    /// Number of lattice configurations.
    pub fn case_count(self) -> usize {
        match self {
            ClassKind::Ord2 => 11,
            ClassKind::Cyclic => 7,
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassKind {
    type Err = PalindromyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ord2" => Ok(ClassKind::Ord2),
            "cyclic" => Ok(ClassKind::Cyclic),
            _ => Err(PalindromyError::Parse(format!("unknown class kind {s:?}"))),
        }
    }
}

type M4 = [[i64; 4]; 4];

const ORD2: [M4; 10] = [
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, -1, -1, -1], [0, 1, 0, 0]],
    [[1, 0, 0, 0], [0, 0, 0, 1], [1, -1, -1, -1], [0, 1, 0, 0]],
    [[1, 0, 0, 0], [0, 0, 0, 1], [2, -1, -1, -1], [0, 1, 0, 0]],
    [[1, 0, 0, 0], [0, -1, 0, 2], [0, 0, -1, -2], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, -1, 0, 2], [2, 0, -1, -2], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [-1, -1, 0, 2], [1, 0, -1, -2], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [-1, -1, 0, 2], [3, 0, -1, -2], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, -1, 0, 2], [1, 0, -1, -1], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, -1, 0, 2], [2, 0, -1, -1], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 4], [2, -1, -1, -2], [0, 0, 0, -1]],
];

const CYCLIC: [M4; 7] = [
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, -1, -1, -1]],
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, -1, -1, -1]],
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [2, -1, -1, -1]],
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 2], [0, 0, 0, -1]],
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 2], [1, 0, 0, -1]],
    [[1, 0, 0, 0], [0, 0, 1, 0], [-1, -1, 0, 2], [1, 0, 0, -1]],
    [[1, 0, 0, 0], [0, 0, 1, 0], [-1, -1, 0, 2], [2, 0, 0, -1]],
];

/// Images `w₁..w₄` of `z₁..z₄` under the conjugator, per configuration.
const TARGETS: [M4; 11] = [
    [[1, -1, 0, 0], [1, 0, 0, 1], [1, 0, 1, -1], [1, 1, -1, 0]],
    [[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0], [1, 1, 0, 0]],
    [[1, 0, 0, 0], [1, 0, 0, 2], [1, 0, 2, 0], [1, 2, 0, 0]],
    [[1, 0, -1, 1], [1, -1, 2, -1], [1, 2, -1, 1], [1, -1, 0, -1]],
    [[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 2, 0], [1, 2, 0, 1]],
    [[1, 1, 0, 1], [1, 0, 0, 0], [1, 0, -1, 1], [1, -1, 1, 0]],
    [[1, 1, -1, 2], [1, -1, 2, 0], [1, 2, 0, 2], [1, 0, 1, 0]],
    [[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0], [1, 2, 0, 1]],
    [[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 2, 0], [1, 2, 1, 1]],
    [[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 2, 0], [1, 4, 0, -1]],
    [[1, 0, 0, 0], [1, 0, 0, 2], [1, 0, 1, 0], [1, 2, -1, 0]],
];

/// Lattice-basis vectors of each configuration as rows of coefficients on
/// `z₁..z₄`, as `(numerator, denominator)` pairs over a common denominator.
const CASE_BASES: [([[i64; 4]; 4], i64); 11] = [
    ([[4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 4, 0], [1, 1, 1, 1]], 4),
    ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 1),
    ([[2, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1]], 2),
    ([[4, 0, 0, 0], [0, 4, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]], 4),
    ([[2, 0, 0, 0], [0, 2, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1]], 2),
    ([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [1, -1, 1, 1]], 2),
    ([[4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 4, 0], [3, 1, -1, 1]], 4),
    ([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 1, 0, 1]], 2),
    ([[4, 0, 0, 0], [0, 4, 0, 0], [2, 0, 2, 0], [1, 2, -1, 2]], 4),
    ([[4, 0, 0, 0], [0, 4, 0, 0], [2, 0, 2, 0], [2, 1, 0, 1]], 4),
    ([[2, 0, 0, 0], [1, 1, 0, 0], [0, 0, 2, 0], [1, -1, 1, 1]], 2),
];

fn check_index(kind: ClassKind, i: usize, count: usize) -> Result<usize, PalindromyError> {
    if (1..=count).contains(&i) {
        Ok(i - 1)
    } else {
        Err(PalindromyError::IndexOutOfRange { kind, index: i })
    }
}

fn int_mat(m: &M4) -> IntMat {
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    IntMat::from_i64(&rows)
}

/// `G̃ᵢ` (ord2, `i ∈ 1..=10`) or `G′ᵢ` (cyclic, `i ∈ 1..=7`).
pub fn canonical_matrix(kind: ClassKind, i: usize) -> Result<IntMat, PalindromyError> {
    let k = check_index(kind, i, kind.class_count())?;
    Ok(match kind {
        ClassKind::Ord2 => int_mat(&ORD2[k]),
        ClassKind::Cyclic => int_mat(&CYCLIC[k]),
    })
}

/// Configuration number (1-based) of the lattice-point lemma behind a case index.
/// Cyclic case `k` is built on configuration `k`.
pub fn configuration_of(kind: ClassKind, case: usize) -> Result<usize, PalindromyError> {
    check_index(kind, case, kind.case_count()).map(|k| k + 1)
}

/// The canonical class reached from a case.
pub fn case_class(kind: ClassKind, case: usize) -> Result<usize, PalindromyError> {
    let k = check_index(kind, case, kind.case_count())?;
    Ok(match (kind, k) {
        (ClassKind::Ord2, 10) => 2,
        _ => k + 1,
    })
}

/// Target vectors `w₁..w₄` for a case.
pub fn case_targets(kind: ClassKind, case: usize) -> Result<[Vec<i64>; 4], PalindromyError> {
    let k = configuration_of(kind, case)? - 1;
    Ok(TARGETS[k].map(|r| r.to_vec()))
}

/// Coefficient rows expressing the case's lattice basis in `z₁..z₄`.
pub fn case_basis_coeffs(kind: ClassKind, case: usize) -> Result<[[Rat; 4]; 4], PalindromyError> {
    let k = configuration_of(kind, case)? - 1;
    let (rows, d) = &CASE_BASES[k];
    Ok(rows.map(|r| r.map(|x| rat(x, *d))))
}
