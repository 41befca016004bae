use std::cmp::Ordering;
use std::sync::Arc;

use super::roots::bisect_root;
use super::{AlgNum, FieldError, Interval, NumberField};
use crate::exact::{Poly, Rat};

/// Bisections allowed before a sign decision gives up.
pub const SIGN_BISECTION_CAP: usize = 4000;

/// A real embedding, identified by the index of its root in ascending order.
#[derive(Clone, Debug)]
pub struct Embedding {
    field: Arc<NumberField>,
    root_index: usize,
}

impl Embedding {
    pub fn new(field: &Arc<NumberField>, root_index: usize) -> Result<Embedding, FieldError> {
        if !field.is_totally_real() {
            return Err(FieldError::NotTotallyReal);
        }
        if root_index >= field.degree() {
            return Err(FieldError::BadRootIndex(root_index + 1));
        }
        Ok(Embedding {
            field: field.clone(),
            root_index,
        })
    }

    pub fn all(field: &Arc<NumberField>) -> Result<Vec<Embedding>, FieldError> {
        (0..field.degree()).map(|i| Embedding::new(field, i)).collect()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// 0-based position among the ascending roots.
    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn isolating_interval(&self) -> &Interval {
        &self.field.root_intervals()[self.root_index]
    }

    /// A narrower isolating interval; the embedding itself is unchanged.
    pub fn refined(&self, eps: &Rat) -> Interval {
        super::roots::refine_root(self.field.min_poly(), self.isolating_interval(), eps)
    }
}

/// Certified interval of width at most `eps` around the image of `a` under `e`.
pub fn embed_interval(a: &AlgNum, e: &Embedding, eps: &Rat) -> Interval {
    eval_at_root(&e.field, e.root_index, &a.to_poly(), eps)
}

fn horner(p: &Poly, x: &Interval) -> Interval {
    let mut acc = Interval::point(Rat::default());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Interval::point(c.clone()));
    }
    acc
}

pub(crate) fn eval_at_root(k: &NumberField, root: usize, p: &Poly, eps: &Rat) -> Interval {
    if p.degree() == 0 {
        return Interval::point(p.coeff(0));
    }
    let f = k.min_poly();
    let mut x = k.root_intervals()[root].clone();
    loop {
        let v = horner(p, &x);
        if &v.width() <= eps {
            return v;
        }
        for _ in 0..4 {
            x = bisect_root(f, &x);
        }
    }
}

pub(crate) fn sign_at_root(k: &NumberField, root: usize, p: &Poly) -> Result<Ordering, FieldError> {
    let f = k.min_poly();
    let mut x = k.root_intervals()[root].clone();
    for _ in 0..SIGN_BISECTION_CAP / 4 {
        if let Some(s) = horner(p, &x).sign() {
            return Ok(s);
        }
        for _ in 0..4 {
            x = bisect_root(f, &x);
        }
    }
    Err(FieldError::Undecidable(format!(
        "sign of {p} at root {} not separated after {SIGN_BISECTION_CAP} bisections",
        root + 1
    )))
}

/// Index of the root equal to `p(theta_root)`, where that value is known to be a root.
pub(crate) fn locate_root_image(k: &NumberField, root: usize, p: &Poly) -> Result<usize, FieldError> {
    let roots = k.root_intervals();
    let mut eps = roots
        .iter()
        .map(Interval::width)
        .min()
        .unwrap_or_default();
    for _ in 0..64 {
        let v = eval_at_root(k, root, p, &eps);
        let hits: Vec<usize> = (0..roots.len()).filter(|&j| roots[j].overlaps(&v)).collect();
        if hits.len() == 1 {
            return Ok(hits[0]);
        }
        if hits.is_empty() {
            return Err(FieldError::Undecidable("value is not a root".into()));
        }
        eps /= Rat::from_integer(1024.into());
    }
    Err(FieldError::Undecidable("root image not separated".into()))
}
