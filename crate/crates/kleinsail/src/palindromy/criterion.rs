use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::classes::{class_automorphisms, class_relations_hold};
use super::tables::ClassKind;
use super::PalindromyError;
use crate::cf::CfData;
use crate::exact::{Int, IntMat, Rat};
use crate::numfield::{AlgNum, Automorphism};

/// Entry bound for the unimodular matrices tried by the bounded searches.
pub const DEFAULT_SEARCH_BOUND: i64 = 2;

const CF_STEPS: usize = 200;

/// A claimed equivalence `X·(1, α, …)ᵀ ∝ (1, ω, ψ, …)ᵀ`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub x: IntMat,
    pub omega: Option<AlgNum>,
    pub psi: Option<AlgNum>,
    /// Condition number; all are tried when absent.
    pub condition: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub x: IntMat,
    pub omega: AlgNum,
    pub psi: Option<AlgNum>,
    /// Dimensions 2 and 3: 1 for trace 0, 2 for trace 1. Dimension 4: the
    /// condition number of the relevant theorem.
    pub condition: usize,
    pub trace: Option<Rat>,
    pub automorphism: Option<Automorphism>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Holds(Certificate),
    /// Proven impossible, with the reason.
    Fails(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }
}

fn invalid(m: impl Into<String>) -> PalindromyError {
    PalindromyError::InvalidWitness(m.into())
}

/// `X·v` normalized to first coordinate 1.
fn normalized_image(cf: &CfData, x: &IntMat) -> Result<Vec<AlgNum>, PalindromyError> {
    let n = cf.dimension();
    if x.rows() != n || x.cols() != n {
        return Err(invalid(format!("X must be {n}x{n}")));
    }
    if !x.is_unimodular() {
        return Err(invalid(format!("X is not unimodular (det = {})", x.det())));
    }
    let w = cf.apply(x);
    let head = w[0].clone();
    w.iter()
        .map(|c| c.div(&head).map_err(|_| invalid("first coordinate of X·v vanishes")))
        .collect()
}

fn check_claimed(name: &str, claimed: &Option<AlgNum>, actual: &AlgNum) -> Result<(), PalindromyError> {
    match claimed {
        Some(c) if c != actual => Err(invalid(format!("{name} = {c} but X·v gives {actual}"))),
        _ => Ok(()),
    }
}

fn trace_condition(t: &Rat) -> Option<usize> {
    if t.is_zero() {
        Some(1)
    } else if t.is_one() {
        Some(2)
    } else {
        None
    }
}

/// Decides, verifies or searches for the palindromy criterion of the CF.
/// `kind` selects the involutive or cyclic criterion in dimension 4.
pub fn criterion(
    cf: &CfData,
    kind: ClassKind,
    witness: Option<&Witness>,
    bound: i64,
) -> Result<Verdict, PalindromyError> {
    match cf.dimension() {
        2 => criterion_2(cf, witness, bound),
        3 => criterion_3(cf, witness, bound),
        4 => criterion_4(cf, kind, witness),
        n => Err(PalindromyError::BadDimension(n)),
    }
}

fn unimodular_box(n: usize, bound: i64) -> Vec<IntMat> {
    let len = n * n;
    let mut entries: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..len {
        entries = entries
            .into_iter()
            .flat_map(|e| {
                (-bound..=bound).map(move |c| {
                    let mut e = e.clone();
                    e.push(c);
                    e
                })
            })
            .collect();
    }
    let mut mats: Vec<(i64, Vec<i64>)> = entries
        .into_iter()
        .map(|e| (e.iter().map(|x| x.abs()).max().unwrap_or(0), e))
        .collect();
    mats.sort();
    mats.into_iter()
        .map(|(_, e)| {
            IntMat::from_rows(e.chunks(n).map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
                .expect("square")
        })
        .filter(IntMat::is_unimodular)
        .collect()
}

/// The matrix adding `k` to every coordinate after the first.
fn shift(n: usize, k: &Int) -> IntMat {
    let mut s = IntMat::identity(n);
    for i in 1..n {
        s.set(i, 0, k.clone());
    }
    s
}

/// The `k` with `Tr(ω + k) = t + degree·k ∈ {0, 1}`, when `t` is an integer.
fn trace_shift(t: &Rat, degree: usize) -> Option<Int> {
    if !t.is_integer() {
        return None;
    }
    let t = t.to_integer();
    let d = Int::from(degree as i64);
    let k = -num_integer::Integer::div_floor(&t, &d);
    let r = &t + &d * &k;
    (r.is_zero() || r.is_one()).then_some(k)
}

fn floor_at(x: &AlgNum, root: usize) -> Result<Int, PalindromyError> {
    for bits in [64u32, 128, 256, 512, 1024] {
        let eps = Rat::new(Int::one(), BigInt::one() << bits);
        let iv = x.embed(root, &eps);
        let (lo, hi) = (iv.lo.floor(), iv.hi.floor());
        if lo == hi {
            return Ok(lo.to_integer());
        }
    }
    Err(crate::numfield::FieldError::Undecidable("floor of a quadratic irrational".into()).into())
}

fn criterion_2(cf: &CfData, witness: Option<&Witness>, bound: i64) -> Result<Verdict, PalindromyError> {
    let certify = |x: IntMat| -> Result<Option<Certificate>, PalindromyError> {
        let rho = normalized_image(cf, &x)?;
        let t = rho[1].trace();
        Ok(trace_condition(&t).map(|condition| Certificate {
            x,
            omega: rho[1].clone(),
            psi: None,
            condition,
            trace: Some(t),
            automorphism: None,
        }))
    };
    if let Some(w) = witness {
        let rho = normalized_image(cf, &w.x)?;
        check_claimed("omega", &w.omega, &rho[1])?;
        return match certify(w.x.clone())? {
            Some(c) => Ok(Verdict::Holds(c)),
            None => Err(invalid(format!("Tr(omega) = {}, expected 0 or 1", rho[1].trace()))),
        };
    }
    // complete quotients of α with the matrices realizing them
    let root = cf.identity_root();
    let mut zeta = cf.vector()[1].clone();
    let mut m = IntMat::identity(2);
    let mut seen: Vec<(AlgNum, IntMat)> = Vec::new();
    for _ in 0..CF_STEPS {
        if seen.iter().any(|(z, _)| *z == zeta) {
            break;
        }
        seen.push((zeta.clone(), m.clone()));
        let a = floor_at(&zeta, root)?;
        let frac = zeta.add_rat(&Rat::from_integer(-a.clone()));
        zeta = frac.inv()?;
        let step = IntMat::from_rows(vec![vec![-a, Int::one()], vec![Int::one(), Int::zero()]]).expect("2x2");
        m = step.mul_mat(&m);
    }
    let ys = unimodular_box(2, bound.max(1));
    for (zeta, m) in &seen {
        for y in &ys {
            let num = zeta.scale(&Rat::from_integer(y.get(1, 1).clone())).add_rat(&Rat::from_integer(y.get(1, 0).clone()));
            let den = zeta.scale(&Rat::from_integer(y.get(0, 1).clone())).add_rat(&Rat::from_integer(y.get(0, 0).clone()));
            let Ok(omega) = num.div(&den) else { continue };
            let Some(k) = trace_shift(&omega.trace(), 2) else { continue };
            let x = shift(2, &k).mul_mat(y).mul_mat(m);
            if let Some(c) = certify(x)? {
                return Ok(Verdict::Holds(c));
            }
        }
    }
    Err(PalindromyError::BoundedSearchFailed(format!(
        "no equivalent number of trace 0 or 1 among {} complete quotients and matrices with entries up to {}",
        seen.len(),
        bound.max(1)
    )))
}

fn criterion_3(cf: &CfData, witness: Option<&Witness>, bound: i64) -> Result<Verdict, PalindromyError> {
    let autos = cf.automorphisms();
    if !autos.is_normal() {
        return Ok(Verdict::Fails(
            "the cubic field is not normal, so no equivalent (1, w, w') exists".into(),
        ));
    }
    let nontrivial: Vec<&Automorphism> = autos.automorphisms.iter().filter(|a| !a.is_identity()).collect();
    let conjugate_pair = |rho: &[AlgNum]| nontrivial.iter().find(|s| s.apply(&rho[1]) == rho[2]).map(|s| (*s).clone());
    if let Some(w) = witness {
        let rho = normalized_image(cf, &w.x)?;
        check_claimed("omega", &w.omega, &rho[1])?;
        check_claimed("psi", &w.psi, &rho[2])?;
        let sigma = conjugate_pair(&rho).ok_or_else(|| invalid("third coordinate is not a conjugate of omega"))?;
        let t = rho[1].trace();
        let condition = trace_condition(&t).ok_or_else(|| invalid(format!("Tr(omega) = {t}, expected 0 or 1")))?;
        return Ok(Verdict::Holds(Certificate {
            x: w.x.clone(),
            omega: rho[1].clone(),
            psi: Some(rho[2].clone()),
            condition,
            trace: Some(t),
            automorphism: Some(sigma),
        }));
    }
    let b = bound.clamp(1, 1);
    for y in unimodular_box(3, b) {
        let rho = normalized_image(cf, &y)?;
        let Some(sigma) = conjugate_pair(&rho) else { continue };
        let Some(k) = trace_shift(&rho[1].trace(), 3) else { continue };
        let x = shift(3, &k).mul_mat(&y);
        let rho = normalized_image(cf, &x)?;
        let t = rho[1].trace();
        let condition = trace_condition(&t).expect("shifted trace is 0 or 1");
        return Ok(Verdict::Holds(Certificate {
            x,
            omega: rho[1].clone(),
            psi: Some(rho[2].clone()),
            condition,
            trace: Some(t),
            automorphism: Some(sigma),
        }));
    }
    Err(PalindromyError::BoundedSearchFailed(format!(
        "no X with entries up to {b} maps (1, a, b) onto some (1, w, w')"
    )))
}

fn criterion_4(cf: &CfData, kind: ClassKind, witness: Option<&Witness>) -> Result<Verdict, PalindromyError> {
    let autos = class_automorphisms(cf, kind);
    if autos.is_empty() {
        return Ok(Verdict::Fails(match kind {
            ClassKind::Ord2 => "the field has no automorphism of order 2".into(),
            ClassKind::Cyclic => "the field is not a cyclic quartic Galois extension".into(),
        }));
    }
    let try_x = |w: &Witness| -> Result<Option<Certificate>, PalindromyError> {
        let rho = normalized_image(cf, &w.x)?;
        check_claimed("omega", &w.omega, &rho[1])?;
        check_claimed("psi", &w.psi, &rho[2])?;
        if rho[1].degree() != 4 || rho[2].degree() != 4 {
            return Err(invalid("omega and psi must have degree 4"));
        }
        let conditions: Vec<usize> = match w.condition {
            Some(c) if (1..=kind.class_count()).contains(&c) => vec![c],
            Some(c) => return Err(PalindromyError::IndexOutOfRange { kind, index: c }),
            None => (1..=kind.class_count()).collect(),
        };
        for &c in &conditions {
            for tau in &autos {
                if class_relations_hold(kind, c, &rho[1], &rho[2], &rho[3], tau)? {
                    return Ok(Some(Certificate {
                        x: w.x.clone(),
                        omega: rho[1].clone(),
                        psi: Some(rho[2].clone()),
                        condition: c,
                        trace: None,
                        automorphism: Some(tau.clone()),
                    }));
                }
            }
        }
        Ok(None)
    };
    match witness {
        Some(w) => match try_x(w)? {
            Some(c) => Ok(Verdict::Holds(c)),
            None => Err(invalid(match w.condition {
                Some(c) => format!("condition ({c}) fails for every admissible automorphism"),
                None => "no condition holds for every admissible automorphism".into(),
            })),
        },
        None => {
            let identity = Witness {
                x: IntMat::identity(4),
                omega: None,
                psi: None,
                condition: None,
            };
            match try_x(&identity) {
                Ok(Some(c)) => Ok(Verdict::Holds(c)),
                Ok(None) | Err(PalindromyError::InvalidWitness(_)) => Err(PalindromyError::BoundedSearchFailed(
                    "no witness given and X = I satisfies no condition".into(),
                )),
                Err(e) => Err(e),
            }
        }
    }
}
