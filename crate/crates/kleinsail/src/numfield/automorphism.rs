use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::embedding::{eval_at_root, locate_root_image};
use super::field::same_field;
use super::{AlgNum, FieldError, NumberField};
use crate::exact::{Int, Rat, RatMat};

/// A field automorphism, determined by the image of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    image: AlgNum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupStructure {
    Trivial,
    C2,
    C3,
    C4,
    C2xC2,
    /// Fewer automorphisms than the degree (non-normal field).
    Partial(usize),
}

impl GroupStructure {
    pub fn name(&self) -> String {
        match self {
            GroupStructure::Trivial => "trivial".into(),
            GroupStructure::C2 => "C2".into(),
            GroupStructure::C3 => "C3".into(),
            GroupStructure::C4 => "C4".into(),
            GroupStructure::C2xC2 => "C2xC2".into(),
            GroupStructure::Partial(n) => format!("partial({n})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AutomorphismSet {
    pub automorphisms: Vec<Automorphism>,
    pub group: GroupStructure,
    pub totally_real: bool,
}

impl AutomorphismSet {
    pub fn is_normal(&self) -> bool {
        self.automorphisms
            .first()
            .is_some_and(|a| self.automorphisms.len() == a.field().degree())
    }

    pub fn of_order(&self, n: usize) -> impl Iterator<Item = &Automorphism> {
        self.automorphisms.iter().filter(move |a| a.order() == n)
    }
}

impl Automorphism {
    /// Checks that `image` is a root of the minimal polynomial.
    pub fn new(image: AlgNum) -> Result<Automorphism, FieldError> {
        let f = image.field().min_poly().clone();
        if !image.eval_poly(&f).is_zero() {
            return Err(FieldError::NotAnAutomorphism(image.to_string()));
        }
        Ok(Automorphism { image })
    }

    pub fn identity(field: &Arc<NumberField>) -> Automorphism {
        Automorphism {
            image: AlgNum::generator(field),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.image.field()
    }

    pub fn image(&self) -> &AlgNum {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image == AlgNum::generator(self.field())
    }

    pub fn apply(&self, a: &AlgNum) -> AlgNum {
        self.image.eval_poly(&a.to_poly())
    }

    pub fn try_apply(&self, a: &AlgNum) -> Result<AlgNum, FieldError> {
        if !same_field(self.field(), a.field()) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self.apply(a))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            image: self.apply(&other.image),
        }
    }

    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut n = 1;
        while !cur.is_identity() {
            cur = self.compose(&cur);
            n += 1;
        }
        n
    }

    pub fn pow(&self, e: usize) -> Automorphism {
        (0..e).fold(Automorphism::identity(self.field()), |acc, _| self.compose(&acc))
    }

    pub fn inverse(&self) -> Automorphism {
        self.pow(self.order() - 1)
    }

    /// Root permutation: `e_i ∘ self = e_{perm[i]}` (0-based indices).
    pub fn root_permutation(&self) -> Result<Vec<usize>, FieldError> {
        let k = self.field();
        let p = self.image.to_poly();
        (0..k.degree())
            .map(|i| locate_root_image(k, i, &p))
            .collect()
    }
}

/// Best rational approximation with denominator at most `max_den`.
pub fn limit_denominator(x: &Rat, max_den: &Int) -> Rat {
    if x.denom() <= max_den {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (Int::zero(), Int::one(), Int::one(), Int::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            break;
        }
    }
    Rat::new(p1, q1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// All automorphisms, found by matching root images numerically, reconstructing
/// the power-basis coordinates of `sigma(theta)` and verifying exactly.
pub fn find_automorphisms(k: &Arc<NumberField>) -> AutomorphismSet {
    let mut found = vec![Automorphism::identity(k)];
    if k.is_totally_real() {
        let d = k.degree();
        let eps = Rat::new(Int::one(), Int::one() << 200);
        let max_den = Int::from(10u64).pow(12);
        let x = crate::exact::Poly::from_i64(&[0, 1]);
        let pts: Vec<Rat> = (0..d).map(|i| eval_at_root(k, i, &x, &eps).mid()).collect();
        let vander = RatMat::from_fn(d, d, |i, j| pts[i].pow(j as i32));
        let vinv = vander.inverse().expect("distinct roots");
        for perm in permutations(d) {
            if perm.iter().enumerate().all(|(i, &j)| i == j) {
                continue;
            }
            let rhs: Vec<Rat> = perm.iter().map(|&j| pts[j].clone()).collect();
            let approx = vinv.mul_vec(&rhs);
            let coords = approx.iter().map(|c| limit_denominator(c, &max_den)).collect();
            let image = AlgNum::new(k, coords).expect("degree matches");
            if let Ok(a) = Automorphism::new(image) {
                if !found.contains(&a) && a.root_permutation().ok().as_deref() == Some(&perm[..]) {
                    found.push(a);
                }
            }
        }
    }
    for a in &found {
        let back = a.inverse();
        debug_assert!(a.compose(&back).is_identity());
    }
    let group = match (found.len(), k.degree()) {
        (1, _) => GroupStructure::Trivial,
        (n, d) if n < d => GroupStructure::Partial(n),
        (2, _) => GroupStructure::C2,
        (3, _) => GroupStructure::C3,
        _ if found.iter().any(|a| a.order() == 4) => GroupStructure::C4,
        _ => GroupStructure::C2xC2,
    };
    AutomorphismSet {
        automorphisms: found,
        group,
        totally_real: k.is_totally_real(),
    }
}
