
use num_traits::One;

use super::{CfData, CfError};
use crate::exact::{IntMat, Poly, Rat};
use crate::numfield::{AlgNum, Automorphism, Interval};

/// Width of the certified intervals reported for inexact scale factors.
fn report_eps() -> Rat {
    Rat::new(1.into(), num_bigint::BigInt::one() << 40)
}

/// A scale factor `μ_i`: exact when the relevant embedding is realized inside the
/// field (value read through the embedding with the given root index), else an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mu {
    Exact(AlgNum, usize),
    Approx(Interval),
}

impl Mu {
    pub fn exact_rational(&self) -> Option<Rat> {
        match self {
            Mu::Exact(a, _) => a.as_rational(),
            Mu::Approx(_) => None,
        }
    }

    pub fn is_exactly_one(&self) -> bool {
        self.exact_rational().is_some_and(|r| r.is_one())
    }

    fn interval(&self, eps: &Rat) -> Interval {
        match self {
            Mu::Exact(a, root) => a.embed(*root, eps),
            Mu::Approx(iv) => iv.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryKind {
    Dirichlet,
    Palindromic,
}

/// Cycle shape of `σ_G` relevant to the properness tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaShape {
    Identity,
    /// Two disjoint transpositions (dimension 4).
    Order2,
    /// A single n-cycle.
    Cyclic,
}

#[derive(Clone, Debug)]
pub struct SigmaResult {
    /// `G l_i = μ_i l_{sigma[i]}`, 0-based.
    pub sigma: Vec<usize>,
    pub mu: Vec<Mu>,
    /// `m = (G·(1, α, β, γ)ᵀ)_1`; `μ_i = σ_i(m)`.
    pub multiplier: AlgNum,
    /// The automorphism induced on the field by `G`.
    pub automorphism: Automorphism,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub g: IntMat,
    pub sigma: Vec<usize>,
    pub mu: Vec<Mu>,
    pub multiplier: AlgNum,
    pub order_of_sigma: usize,
    pub kind: SymmetryKind,
    pub shape: SigmaShape,
    pub cyclic: bool,
    pub proper: bool,
    /// Relabeling to the normal form: new line `k` is original line `normal_order[k]`.
    pub normal_order: Vec<usize>,
    pub char_poly: Poly,
    pub reduced: Option<Box<SymmetryReport>>,
}

impl SymmetryReport {
    /// Scale factors listed in normal-form order.
    pub fn mu_normal(&self) -> Vec<Mu> {
        self.normal_order.iter().map(|&i| self.mu[i].clone()).collect()
    }

    pub fn sigma_normal(&self) -> Vec<usize> {
        let pos = |orig: usize| self.normal_order.iter().position(|&x| x == orig).unwrap();
        self.normal_order
            .iter()
            .map(|&orig| pos(self.sigma[orig]))
            .collect()
    }
}

/// One-line cycle notation, 1-based, fixed points omitted; `id` for the identity.
pub fn cycle_string(sigma: &[usize]) -> String {
    let mut seen = vec![false; sigma.len()];
    let mut out = String::new();
    for s in 0..sigma.len() {
        if seen[s] || sigma[s] == s {
            continue;
        }
        let mut cyc = vec![];
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = sigma[i];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}

fn cycles(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut out = vec![];
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = vec![];
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i);
            i = sigma[i];
        }
        out.push(cyc);
    }
    out
}

/// Finds `σ_G` and the scale factors.
///
/// `G l_i ∝ l_j` for all `i` exactly when the Q-linear map sending the basis
/// `(1, α, β, γ)` to `G(1, α, β, γ)ᵀ / m` is a field automorphism `τ`; then
/// `G l_i = σ_i(m) · l_j` with `σ_j = σ_i ∘ τ`.
pub fn sigma_of(g: &IntMat, cf: &CfData) -> Result<SigmaResult, CfError> {
    let n = cf.dimension();
    if g.rows() != n || g.cols() != n {
        return Err(CfError::BadDimension(g.rows()));
    }
    let w = cf.apply(g);
    let m = w[0].clone();
    if m.is_zero() {
        return Err(CfError::NotASymmetry("first coordinate of G·l_1 vanishes".into()));
    }
    let rho: Vec<AlgNum> = w.iter().map(|x| x.div(&m)).collect::<Result<_, _>>()?;
    let k = cf.field();
    let theta = AlgNum::generator(k);
    let c = cf.basis_coords(&theta);
    let image = c
        .iter()
        .zip(&rho)
        .fold(AlgNum::zero(k), |acc, (ci, r)| acc.add(&r.scale(ci)));
    let tau = Automorphism::new(image).map_err(|_| {
        CfError::NotASymmetry("G·l_1 is proportional to no eigenline".into())
    })?;
    for (v, r) in cf.vector().iter().zip(&rho) {
        if &tau.apply(v) != r {
            return Err(CfError::NotASymmetry(
                "G does not act on the eigenline coordinates by a field automorphism".into(),
            ));
        }
    }
    let perm = tau.root_permutation()?;
    let sigma: Vec<usize> = (0..n)
        .map(|i| {
            let target = perm[cf.root_of(i)];
            cf.order().iter().position(|&r| r == target).expect("root present")
        })
        .collect();
    let eps = report_eps();
    let mu = (0..n)
        .map(|i| match cf.exact_map(i) {
            Some(kappa) => Mu::Exact(kappa.apply(&m), cf.identity_root()),
            None if m.as_rational().is_some() => Mu::Exact(m.clone(), cf.identity_root()),
            None => Mu::Approx(m.embed(cf.root_of(i), &eps)),
        })
        .collect();
    Ok(SigmaResult {
        sigma,
        mu,
        multiplier: m,
        automorphism: tau,
    })
}

pub fn classify_symmetry(g: &IntMat, cf: &CfData) -> Result<SymmetryReport, CfError> {
    let sr = sigma_of(g, cf)?;
    let n = cf.dimension();
    let cyc = cycles(&sr.sigma);
    let mut lens: Vec<usize> = cyc.iter().map(Vec::len).collect();
    lens.sort_unstable();
    let order = lens.iter().fold(1usize, |a, &b| num_integer::lcm(a, b));
    let shape = if order == 1 {
        SigmaShape::Identity
    } else if lens == [n] {
        SigmaShape::Cyclic
    } else if lens == [2, 2] {
        SigmaShape::Order2
    } else {
        return Err(CfError::StructuralViolation(format!(
            "palindromic permutation {} has cycle type {:?}",
            cycle_string(&sr.sigma),
            lens
        )));
    };
    let proper = shape != SigmaShape::Identity
        && cyc.iter().all(|c| {
            let tau_pows: AlgNum = (0..c.len()).fold(AlgNum::one(cf.field()), |acc, k| {
                acc.mul(&sr.automorphism.pow(k).apply(&sr.multiplier))
            });
            tau_pows.is_one()
        });
    let normal_order = match shape {
        SigmaShape::Identity => (0..n).collect(),
        SigmaShape::Cyclic => {
            let mut v = vec![0];
            while v.len() < n {
                v.push(sr.sigma[*v.last().unwrap()]);
            }
            v
        }
        SigmaShape::Order2 => {
            let r3 = sr.sigma[0];
            let r2 = (1..n).find(|&i| i != r3).unwrap();
            vec![0, r2, r3, sr.sigma[r2]]
        }
    };
    let reduced = if n == 4 && order == 4 {
        Some(Box::new(classify_symmetry(&g.mul_mat(g), cf)?))
    } else {
        None
    };
    Ok(SymmetryReport {
        g: g.clone(),
        sigma: sr.sigma,
        mu: sr.mu,
        multiplier: sr.multiplier,
        order_of_sigma: order,
        kind: if shape == SigmaShape::Identity {
            SymmetryKind::Dirichlet
        } else {
            SymmetryKind::Palindromic
        },
        cyclic: shape == SigmaShape::Cyclic,
        shape,
        proper,
        normal_order,
        char_poly: g.char_poly(),
        reduced,
    })
}

/// Properness from the scale factors of a palindromic report.
pub fn is_proper(report: &SymmetryReport) -> Result<bool, CfError> {
    if report.kind == SymmetryKind::Dirichlet {
        return Ok(false);
    }
    is_proper_from_mu(report.shape, &report.mu_normal(), Some(&report.g))
}

/// Properness from scale factors in normal-form order: a cyclic `σ` needs
/// `μ_1⋯μ_n = 1`, the order-2 form needs `μ_1μ_3 = μ_2μ_4 = 1`. Interval
/// products that cannot exclude 1 are confirmed through the characteristic
/// polynomial of `g` (`(x²-1)²` resp. `xⁿ-1`).
pub fn is_proper_from_mu(shape: SigmaShape, mu: &[Mu], g: Option<&IntMat>) -> Result<bool, CfError> {
    let groups: Vec<Vec<usize>> = match shape {
        SigmaShape::Identity => return Ok(false),
        SigmaShape::Cyclic => vec![(0..mu.len()).collect()],
        SigmaShape::Order2 => {
            if mu.len() != 4 {
                return Err(CfError::BadDimension(mu.len()));
            }
            vec![vec![0, 2], vec![1, 3]]
        }
    };
    let mut undecided = false;
    for grp in &groups {
        let exact: Option<Vec<&AlgNum>> = grp
            .iter()
            .map(|&i| match &mu[i] {
                Mu::Exact(a, _) => Some(a),
                Mu::Approx(_) => None,
            })
            .collect();
        let same_root = grp.windows(2).all(|w| match (&mu[w[0]], &mu[w[1]]) {
            (Mu::Exact(_, r), Mu::Exact(_, s)) => r == s,
            _ => false,
        });
        if let (Some(vals), true) = (exact, same_root) {
            let prod = vals[1..].iter().fold(vals[0].clone(), |acc, v| acc.mul(v));
            if !prod.is_one() {
                return Ok(false);
            }
            continue;
        }
        let eps = report_eps();
        let prod = grp[1..]
            .iter()
            .fold(mu[grp[0]].interval(&eps), |acc, &i| acc.mul(&mu[i].interval(&eps)));
        if !prod.contains(&Rat::one()) {
            return Ok(false);
        }
        undecided = true;
    }
    if !undecided {
        return Ok(true);
    }
    let Some(g) = g else {
        return Err(CfError::Undecidable("interval products contain 1 and no matrix is available".into()));
    };
    let n = g.rows();
    let target = match shape {
        SigmaShape::Order2 => Poly::from_i64(&[-1, 0, 1]).pow(2),
        _ => {
            let mut c = vec![0i64; n + 1];
            c[0] = -1;
            c[n] = 1;
            Poly::from_i64(&c)
        }
    };
    Ok(g.char_poly() == target)
}

/// Checks that the eigenvalue of `G` on `l_1` is irrational when `l_1` is fixed.
pub fn irrational_eigenvalue_check(g: &IntMat, cf: &CfData) -> Result<bool, CfError> {
    let n = g.rows();
    let ident = IntMat::identity(n);
    if *g == ident || *g == -&ident {
        return Err(CfError::Precondition("G = ±I is excluded".into()));
    }
    let sr = sigma_of(g, cf)?;
    if sr.sigma[0] != 0 {
        return Ok(true);
    }
    if sr.multiplier.degree() > 1 {
        Ok(true)
    } else {
        Err(CfError::ViolatedInvariant(format!(
            "eigenvalue {} on l_1 is rational",
            sr.multiplier
        )))
    }
}

