use super::{check_hyperbolic, CfData, CfError, HyperbolicOperator};
use crate::exact::{Int, IntMat, Rat, RatMat};
use crate::numfield::AlgNum;

#[derive(Clone, Debug)]
pub struct Synthesized {
    pub operator: HyperbolicOperator,
    /// The unit `λ` with `A (1, α, β, γ)ᵀ = λ (1, α, β, γ)ᵀ`.
    pub unit: AlgNum,
    /// Its coordinates in the basis `(1, α, β, γ)`.
    pub coeffs: Vec<i64>,
}

fn search_key(c: &[i64]) -> (i64, i64, Vec<(i64, bool)>) {
    let sup = c.iter().map(|x| x.abs()).max().unwrap_or(0);
    let l1 = c.iter().map(|x| x.abs()).sum();
    (sup, l1, c.iter().map(|&x| (x.abs(), x < 0)).collect())
}

/// Searches units `λ` of the module `Z⟨1, α, β, γ⟩` with basis coefficients in
/// `[-bound, bound]`, ordered by size, whose multiplication matrix is integral,
/// unimodular and hyperbolic.
pub fn synthesize_operator(cf: &CfData, bound: i64) -> Result<Synthesized, CfError> {
    let n = cf.dimension();
    let k = cf.field();
    let p = RatMat::from_cols(&cf.vector().iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>());
    let pinv = p.inverse().ok_or(CfError::NotABasis)?;
    let parts: Vec<RatMat> = cf
        .vector()
        .iter()
        .map(|v| pinv.mul_mat(&v.mul_matrix()).mul_mat(&p).transpose())
        .collect();
    let mut cands: Vec<Vec<i64>> = coefficient_box(n, bound);
    cands.sort_by_key(|c| search_key(c));
    for c in cands {
        if c[1..].iter().all(|&x| x == 0) {
            continue;
        }
        let a = c
            .iter()
            .zip(&parts)
            .fold(RatMat::zeros(n, n), |acc, (&ci, m)| {
                if ci == 0 {
                    acc
                } else {
                    acc.add_mat(&m.scale(&Rat::from_integer(Int::from(ci))))
                }
            });
        let Some(a) = a.to_int() else { continue };
        let op = check_hyperbolic(&a);
        if !op.hyperbolic {
            continue;
        }
        let unit = c
            .iter()
            .zip(cf.vector())
            .fold(AlgNum::zero(k), |acc, (&ci, v)| acc.add(&v.scale(&Rat::from_integer(Int::from(ci)))));
        debug_assert!(verify_eigen(&op.a, cf, &unit));
        return Ok(Synthesized {
            operator: op,
            unit,
            coeffs: c,
        });
    }
    Err(CfError::NotFound(bound))
}

fn verify_eigen(a: &IntMat, cf: &CfData, unit: &AlgNum) -> bool {
    let w = cf.apply(a);
    w.iter().zip(cf.vector()).all(|(x, v)| *x == v.mul(unit))
}

fn coefficient_box(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
