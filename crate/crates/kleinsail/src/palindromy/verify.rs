use super::tables::{canonical_matrix, case_basis_coeffs, case_class, case_targets, ClassKind};
use super::PalindromyError;
use crate::exact::{is_lattice_basis, IntMat, Poly, RatMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub checks: Vec<TableCheck>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    format!("{tag} {}", c.name)
                } else {
                    format!("{tag} {}: {}", c.name, c.detail)
                }
            })
            .collect()
    }

    /// The report itself, or `TableMismatch` naming the first failing identity.
    pub fn into_result(self) -> Result<TableReport, PalindromyError> {
        match self.checks.iter().find(|c| !c.passed) {
            Some(c) => Err(PalindromyError::TableMismatch(c.name.clone())),
            None => Ok(self),
        }
    }
}

fn symbol(kind: ClassKind) -> &'static str {
    match kind {
        ClassKind::Ord2 => "G~",
        ClassKind::Cyclic => "G'",
    }
}

fn case_check(kind: ClassKind, case: usize, lookup: &dyn Fn(ClassKind, usize) -> IntMat) -> TableCheck {
    let class = case_class(kind, case).expect("case in range");
    let name = format!("{kind} case {case} -> {}{class}", symbol(kind));
    let w = case_targets(kind, case).expect("case in range");
    let cols: Vec<Vec<_>> = w
        .iter()
        .map(|v| v.iter().map(|&x| crate::exact::rat(x, 1)).collect())
        .collect();
    let images: Vec<usize> = match kind {
        ClassKind::Ord2 => vec![2, 3, 0, 1],
        ClassKind::Cyclic => vec![1, 2, 3, 0],
    };
    let src = RatMat::from_cols(&cols);
    let dst = RatMat::from_cols(&images.iter().map(|&i| cols[i].clone()).collect::<Vec<_>>());
    let Some(inv) = src.inverse() else {
        return TableCheck {
            name,
            passed: false,
            detail: "target vectors are dependent".into(),
        };
    };
    let h = dst.mul_mat(&inv);
    let expected = lookup(kind, class).to_rat();
    let coeffs = case_basis_coeffs(kind, case).expect("case in range");
    let basis: Vec<Vec<_>> = coeffs
        .iter()
        .map(|row| {
            (0..4)
                .map(|j| row.iter().zip(&cols).map(|(c, w)| c * &w[j]).sum())
                .collect()
        })
        .collect();
    let unimodular = is_lattice_basis(&basis).unwrap_or(false);
    let (passed, detail) = match (h == expected, unimodular) {
        (true, true) => (true, String::new()),
        (false, _) => (false, "conjugated matrix differs from the table".to_string()),
        (true, false) => (false, "case basis images do not span Z^4".to_string()),
    };
    TableCheck { name, passed, detail }
}

fn matrix_check(kind: ClassKind, i: usize, g: &IntMat) -> TableCheck {
    let id = IntMat::identity(4);
    let (power, poly, poly_text) = match kind {
        ClassKind::Ord2 => (2, Poly::from_i64(&[1, 0, -2, 0, 1]), "(x^2-1)^2"),
        ClassKind::Cyclic => (4, Poly::from_i64(&[-1, 0, 0, 0, 1]), "x^4-1"),
    };
    let name = format!(
        "{}{i}: det = +-1, order {power}, char poly {poly_text}",
        symbol(kind)
    );
    let mut failures = Vec::new();
    if !g.is_unimodular() {
        failures.push(format!("det = {}", g.det()));
    }
    if g.pow(power) != id {
        failures.push(format!("power {power} is not the identity"));
    }
    if power == 4 && g.pow(2) == id {
        failures.push("order divides 2".into());
    }
    let cp = g.char_poly();
    if cp != poly {
        failures.push(format!("char poly {cp}"));
    }
    TableCheck {
        name,
        passed: failures.is_empty(),
        detail: failures.join("; "),
    }
}

/// Checks every conjugation identity and the basic properties of the canonical tables.
pub fn verify_tables() -> TableReport {
    verify_tables_with(&|kind, i| canonical_matrix(kind, i).expect("index in range"))
}

/// As [`verify_tables`], reading the canonical matrices through `lookup`.
pub fn verify_tables_with(lookup: &dyn Fn(ClassKind, usize) -> IntMat) -> TableReport {
    let mut checks = Vec::new();
    for kind in [ClassKind::Ord2, ClassKind::Cyclic] {
        for case in 1..=kind.case_count() {
            checks.push(case_check(kind, case, lookup));
        }
    }
    for kind in [ClassKind::Ord2, ClassKind::Cyclic] {
        for i in 1..=kind.class_count() {
            checks.push(matrix_check(kind, i, &lookup(kind, i)));
        }
    }
    TableReport { checks }
}
