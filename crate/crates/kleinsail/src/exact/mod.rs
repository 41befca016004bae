//! Exact integer and rational linear algebra.

mod hnf;
mod mat;
mod poly;
mod solve;

pub use hnf::{hnf, hnf_rows, integer_kernel, rational_row_lattice, solve_integer};
pub use mat::{IntMat, Mat, RatMat};
pub use poly::Poly;
pub use solve::{nullspace, solve_rational, Solution};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVec = Vec<Int>;
pub type RatVec = Vec<Rat>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(Rat),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_rat_vec(v: &[Int]) -> RatVec {
    v.iter().map(rat_int).collect()
}

/// Returns the integer vector if every entry is integral.
pub fn to_int_vec(v: &[Rat]) -> Option<IntVec> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Divides out the gcd and makes the first nonzero entry positive.
pub fn primitive(v: &[Int]) -> IntVec {
    use num_integer::Integer;
    let g = v.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -Int::one(),
        _ => Int::one(),
    };
    v.iter().map(|x| x / &g * &sign).collect()
}

/// Clears denominators of a rational vector and returns the primitive integer direction.
pub fn primitive_direction(v: &[Rat]) -> IntVec {
    use num_integer::Integer;
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVec = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    primitive(&scaled)
}

/// `true` iff every vector is integral and the vectors form a basis of `Z^n`.
pub fn is_lattice_basis(vs: &[RatVec]) -> Result<bool, ExactError> {
    let n = vs.len();
    if vs.iter().any(|v| v.len() != n) {
        return Err(ExactError::DimensionMismatch(format!(
            "expected {n} vectors of length {n}"
        )));
    }
    if vs.iter().flatten().any(|x| !x.is_integer()) {
        return Ok(false);
    }
    let m = RatMat::from_cols(vs);
    Ok(m.det().abs().is_one())
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
