use num_traits::{One, Zero};

use super::{ExactError, Rat, RatMat, RatVec};

/// Solution set `particular + span(nullspace)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: RatVec,
    pub nullspace: Vec<RatVec>,
}

/// Reduced row echelon form and pivot columns.
pub(crate) fn rref(m: &RatMat) -> (Vec<RatVec>, Vec<usize>) {
    let mut a = m.to_rows();
    let (nr, nc) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for x in &mut a[r] {
            *x /= &piv;
        }
        for i in 0..nr {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..nc {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Solves `A x = b` exactly. Free variables of the homogeneous basis are set to unit vectors.
pub fn solve_rational(a: &RatMat, b: &[Rat]) -> Result<Solution, ExactError> {
    if a.rows() != b.len() {
        return Err(ExactError::DimensionMismatch(format!(
            "{} rows vs right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let aug = RatMat::from_fn(a.rows(), n + 1, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Err(ExactError::Inconsistent);
    }
    let mut particular = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = red[r][n].clone();
    }
    let nullspace = null_from_rref(&red, &pivots, n);
    Ok(Solution {
        particular,
        nullspace,
    })
}

fn null_from_rref(red: &[RatVec], pivots: &[usize], n: usize) -> Vec<RatVec> {
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); n];
            v[free] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -red[r][free].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(a: &RatMat) -> Vec<RatVec> {
    let (red, pivots) = rref(a);
    null_from_rref(&red, &pivots, a.cols())
}
