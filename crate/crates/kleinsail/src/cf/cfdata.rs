use std::sync::Arc;

use num_traits::Zero;

use super::CfError;
use crate::exact::{rat_int, Int, IntMat, Rat, RatMat, RatVec};
use crate::numfield::{find_automorphisms, AlgNum, Automorphism, AutomorphismSet, Interval, NumberField};

/// An algebraic continued fraction given by the eigenline `(1, α, β, γ)` and its conjugates.
#[derive(Clone, Debug)]
pub struct CfData {
    field: Arc<NumberField>,
    vector: Vec<AlgNum>,
    order: Vec<usize>,
    autos: AutomorphismSet,
    exact_maps: Vec<Option<Automorphism>>,
    to_basis: RatMat,
    dual: Vec<AlgNum>,
}

/// Builds the CF whose first eigenline is `(1, coords...)` under the embedding
/// with root index `identity_root` (0-based); the other eigenlines follow in
/// ascending root order.
pub fn eigenline_matrix(
    field: &Arc<NumberField>,
    coords: &[AlgNum],
    identity_root: usize,
) -> Result<CfData, CfError> {
    let n = field.degree();
    if coords.len() + 1 != n {
        return Err(CfError::BadDimension(coords.len() + 1));
    }
    if coords.iter().any(|c| c.field().as_ref() != field.as_ref()) {
        return Err(crate::numfield::FieldError::FieldMismatch.into());
    }
    if !field.is_totally_real() {
        return Err(crate::numfield::FieldError::NotTotallyReal.into());
    }
    if identity_root >= n {
        return Err(crate::numfield::FieldError::BadRootIndex(identity_root + 1).into());
    }
    let mut vector = vec![AlgNum::one(field)];
    vector.extend(coords.iter().cloned());
    let cols: Vec<RatVec> = vector.iter().map(|v| v.coords().to_vec()).collect();
    let p = RatMat::from_cols(&cols);
    let to_basis = p.inverse().ok_or(CfError::NotABasis)?;

    let mut order = vec![identity_root];
    order.extend((0..n).filter(|&i| i != identity_root));

    let autos = find_automorphisms(field);
    let perms: Vec<Vec<usize>> = autos
        .automorphisms
        .iter()
        .map(|a| a.root_permutation())
        .collect::<Result<_, _>>()?;
    let exact_maps = order
        .iter()
        .map(|&r| {
            autos
                .automorphisms
                .iter()
                .zip(&perms)
                .find(|(_, perm)| perm[identity_root] == r)
                .map(|(a, _)| a.clone())
        })
        .collect();

    let trace_form = RatMat::from_fn(n, n, |i, j| vector[i].mul(&vector[j]).trace());
    let tinv = trace_form.inverse().ok_or(CfError::NotABasis)?;
    let dual = (0..n)
        .map(|m| {
            (0..n).fold(AlgNum::zero(field), |acc, k| {
                acc.add(&vector[k].scale(tinv.get(k, m)))
            })
        })
        .collect();

    Ok(CfData {
        field: field.clone(),
        vector,
        order,
        autos,
        exact_maps,
        to_basis,
        dual,
    })
}

impl CfData {
    pub fn dimension(&self) -> usize {
        self.vector.len()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// `(1, α, β, γ)` truncated to the dimension.
    pub fn vector(&self) -> &[AlgNum] {
        &self.vector
    }

    pub fn coords(&self) -> &[AlgNum] {
        &self.vector[1..]
    }

    /// Root index (0-based) of the embedding behind eigenline `i`.
    pub fn root_of(&self, i: usize) -> usize {
        self.order[i]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn identity_root(&self) -> usize {
        self.order[0]
    }

    pub fn automorphisms(&self) -> &AutomorphismSet {
        &self.autos
    }

    /// The automorphism `κ` with `σ_i = σ_1 ∘ κ`, when one exists.
    pub fn exact_map(&self, i: usize) -> Option<&Automorphism> {
        self.exact_maps[i].as_ref()
    }

    /// Eigenline `i` as field elements read through the identity embedding.
    pub fn eigenline_exact(&self, i: usize) -> Option<Vec<AlgNum>> {
        self.exact_map(i)
            .map(|k| self.vector.iter().map(|v| k.apply(v)).collect())
    }

    pub fn eigenline_interval(&self, i: usize, eps: &Rat) -> Vec<Interval> {
        self.vector.iter().map(|v| v.embed(self.order[i], eps)).collect()
    }

    /// Coordinates of `x` in the basis `(1, α, β, γ)`.
    pub fn basis_coords(&self, x: &AlgNum) -> RatVec {
        self.to_basis.mul_vec(x.coords())
    }

    pub fn from_basis_coords(&self, c: &[Rat]) -> AlgNum {
        c.iter()
            .zip(&self.vector)
            .fold(AlgNum::zero(&self.field), |acc, (ci, v)| acc.add(&v.scale(ci)))
    }

    /// `G (1, α, β, γ)ᵀ` as field elements.
    pub fn apply(&self, g: &IntMat) -> Vec<AlgNum> {
        (0..g.rows())
            .map(|r| {
                (0..g.cols()).fold(AlgNum::zero(&self.field), |acc, k| {
                    let c = g.get(r, k);
                    if c.is_zero() {
                        acc
                    } else {
                        acc.add(&self.vector[k].scale(&rat_int(c)))
                    }
                })
            })
            .collect()
    }

    /// The element `y` whose conjugates are the coordinates of `x` in the
    /// eigenline basis: `x = Σ σ_i(y) l_i`.
    pub fn cone_element(&self, x: &[Int]) -> AlgNum {
        x.iter()
            .zip(&self.dual)
            .fold(AlgNum::zero(&self.field), |acc, (c, d)| {
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&d.scale(&rat_int(c)))
                }
            })
    }

    /// The CF `U·CF`, whose eigenlines are the images of these under `U`.
    pub fn transport(&self, u: &IntMat) -> Result<CfData, CfError> {
        if !u.is_unimodular() || u.rows() != self.dimension() {
            return Err(CfError::Precondition("transport needs a unimodular matrix of matching size".into()));
        }
        let w = self.apply(u);
        let head = w[0].clone();
        if head.is_zero() {
            return Err(CfError::NotABasis);
        }
        let coords: Vec<AlgNum> = w[1..].iter().map(|x| x.div(&head)).collect::<Result<_, _>>()?;
        let cf = eigenline_matrix(&self.field, &coords, self.identity_root())?;
        debug_assert_eq!(cf.order, self.order);
        Ok(cf)
    }
}
