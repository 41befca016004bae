use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::roots::{isolate_roots, refine_root};
use super::{FieldError, Interval};
use crate::exact::{fmt_rat, Int, Poly, Rat, RatMat, RatVec};

/// Precomputed width of the stored root intervals (2^-64).
fn base_width() -> Rat {
    Rat::new(Int::one(), Int::one() << 64)
}

/// A number field `Q[x]/(f)` of degree 2 to 4.
#[derive(Debug)]
pub struct NumberField {
    min_poly: Poly,
    discriminant: Int,
    roots: Vec<Interval>,
    totally_real: bool,
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.min_poly == o.min_poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    pub fn new(min_poly: Poly) -> Result<Arc<NumberField>, FieldError> {
        let d = min_poly.degree();
        if !(2..=4).contains(&d) {
            return Err(FieldError::BadDegree(d));
        }
        if !min_poly.is_integral() {
            return Err(FieldError::NotIntegral);
        }
        if !min_poly.is_monic() {
            return Err(FieldError::NotMonic);
        }
        if !min_poly.is_irreducible() {
            return Err(FieldError::Reducible(min_poly.to_string()));
        }
        let iso = isolate_roots(&min_poly)?;
        let eps = base_width();
        let roots = iso
            .intervals
            .iter()
            .map(|iv| refine_root(&min_poly, iv, &eps))
            .collect();
        let mut k = NumberField {
            min_poly,
            discriminant: Int::zero(),
            roots,
            totally_real: iso.complete,
        };
        k.discriminant = k.compute_discriminant();
        Ok(Arc::new(k))
    }

    pub fn from_i64(c: &[i64]) -> Result<Arc<NumberField>, FieldError> {
        NumberField::new(Poly::from_i64(c))
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn min_poly(&self) -> &Poly {
        &self.min_poly
    }

    pub fn discriminant(&self) -> &Int {
        &self.discriminant
    }

    pub fn is_totally_real(&self) -> bool {
        self.totally_real
    }

    /// Isolating intervals of the real roots, ascending.
    pub fn root_intervals(&self) -> &[Interval] {
        &self.roots
    }

    /// `disc(f) = (-1)^(d(d-1)/2) N(f'(theta))` for monic `f`.
    fn compute_discriminant(&self) -> Int {
        let d = self.degree();
        let fp = self.min_poly.derivative();
        let m = mul_matrix_of(&self.min_poly, &reduce(&fp, &self.min_poly, d));
        let n = m.det().to_integer();
        if (d * (d - 1) / 2) % 2 == 1 {
            -n
        } else {
            n
        }
    }
}

pub(crate) fn reduce(p: &Poly, f: &Poly, d: usize) -> RatVec {
    let r = p.rem(f);
    (0..d).map(|i| r.coeff(i)).collect()
}

/// Matrix of multiplication by `a` on the power basis; column k holds `a * theta^k`.
fn mul_matrix_of(f: &Poly, a: &[Rat]) -> RatMat {
    let d = f.degree();
    let ap = Poly::new(a.to_vec());
    let mut cols = Vec::with_capacity(d);
    let mut cur = ap;
    for _ in 0..d {
        cols.push(reduce(&cur, f, d));
        cur = cur.mul(&Poly::new(vec![Rat::zero(), Rat::one()])).rem(f);
    }
    RatMat::from_cols(&cols)
}

/// Element of a number field in power-basis coordinates.
#[derive(Clone, Debug)]
pub struct AlgNum {
    field: Arc<NumberField>,
    coords: RatVec,
}

impl PartialEq for AlgNum {
    fn eq(&self, o: &Self) -> bool {
        self.coords == o.coords && same_field(&self.field, &o.field)
    }
}

impl Eq for AlgNum {}

pub(crate) fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn alg_arith(a: &AlgNum, b: &AlgNum, op: ArithOp) -> Result<AlgNum, FieldError> {
    if !same_field(&a.field, &b.field) {
        return Err(FieldError::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

impl AlgNum {
    pub fn new(field: &Arc<NumberField>, coords: RatVec) -> Result<AlgNum, FieldError> {
        if coords.len() != field.degree() {
            return Err(FieldError::BadCoords(coords.len(), field.degree()));
        }
        Ok(AlgNum {
            field: field.clone(),
            coords,
        })
    }

    pub fn from_poly(field: &Arc<NumberField>, p: &Poly) -> AlgNum {
        AlgNum {
            field: field.clone(),
            coords: reduce(p, &field.min_poly, field.degree()),
        }
    }

    pub fn from_i64(field: &Arc<NumberField>, c: &[i64]) -> AlgNum {
        AlgNum::from_poly(field, &Poly::from_i64(c))
    }

    pub fn constant(field: &Arc<NumberField>, c: Rat) -> AlgNum {
        AlgNum::from_poly(field, &Poly::constant(c))
    }

    pub fn zero(field: &Arc<NumberField>) -> AlgNum {
        AlgNum::constant(field, Rat::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> AlgNum {
        AlgNum::constant(field, Rat::one())
    }

    pub fn generator(field: &Arc<NumberField>) -> AlgNum {
        AlgNum::from_i64(field, &[0, 1])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    fn check(&self, o: &AlgNum) {
        assert!(same_field(&self.field, &o.field), "field mismatch");
    }

    pub fn add(&self, o: &AlgNum) -> AlgNum {
        self.check(o);
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        AlgNum {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, o: &AlgNum) -> AlgNum {
        self.check(o);
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        AlgNum {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add_rat(&self, s: &Rat) -> AlgNum {
        let mut out = self.clone();
        out.coords[0] += s;
        out
    }

    pub fn mul(&self, o: &AlgNum) -> AlgNum {
        self.check(o);
        AlgNum::from_poly(&self.field, &self.to_poly().mul(&o.to_poly()))
    }

    pub fn pow(&self, e: u32) -> AlgNum {
        (0..e).fold(AlgNum::one(&self.field), |acc, _| acc.mul(self))
    }

    pub fn inv(&self) -> Result<AlgNum, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let m = self.mul_matrix();
        let mut e0 = vec![Rat::zero(); self.field.degree()];
        e0[0] = Rat::one();
        let sol = crate::exact::solve_rational(&m, &e0).map_err(|_| FieldError::DivisionByZero)?;
        Ok(AlgNum {
            field: self.field.clone(),
            coords: sol.particular,
        })
    }

    pub fn div(&self, o: &AlgNum) -> Result<AlgNum, FieldError> {
        self.check(o);
        Ok(self.mul(&o.inv()?))
    }

    pub fn mul_matrix(&self) -> RatMat {
        mul_matrix_of(&self.field.min_poly, &self.coords)
    }

    pub fn trace(&self) -> Rat {
        self.mul_matrix().trace()
    }

    pub fn norm(&self) -> Rat {
        self.mul_matrix().det()
    }

    pub fn char_poly(&self) -> Poly {
        self.mul_matrix().char_poly()
    }

    /// Monic minimal polynomial over Q.
    pub fn min_poly(&self) -> Poly {
        self.char_poly().squarefree_part()
    }

    pub fn degree(&self) -> usize {
        self.min_poly().degree()
    }

    /// Evaluates `p(self)`.
    pub fn eval_poly(&self, p: &Poly) -> AlgNum {
        p.coeffs()
            .iter()
            .rev()
            .fold(AlgNum::zero(&self.field), |acc, c| acc.mul(self).add_rat(c))
    }

    /// Certified interval for the image under the embedding with the given root index (0-based).
    pub fn embed(&self, root: usize, eps: &Rat) -> Interval {
        super::embedding::eval_at_root(&self.field, root, &self.to_poly(), eps)
    }

    /// Sign under the given real embedding.
    pub fn sign_at(&self, root: usize) -> Result<Ordering, FieldError> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        super::embedding::sign_at_root(&self.field, root, &self.to_poly())
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        if p.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", p.to_string().replace('x', "t"))
    }
}

impl AlgNum {
    pub fn coords_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rat).collect()
    }
}
