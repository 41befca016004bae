use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMat, Int, Rat};

/// Row-style Hermite normal form of the row lattice of `m`.
///
/// Lower-triangular convention: each row's last nonzero entry is a positive
/// pivot, pivot columns increase down the rows, and entries below a pivot are
/// reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf(m: &IntMat) -> IntMat {
    let rows = hnf_rows(&m.to_rows());
    if rows.is_empty() {
        return IntMat::zeros(0, m.cols());
    }
    IntMat::from_rows(rows).expect("rectangular")
}

pub fn hnf_rows(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let flipped: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| r.iter().rev().cloned().collect())
        .collect();
    let mut upper = upper_hnf(flipped);
    upper.reverse();
    for r in &mut upper {
        r.reverse();
    }
    upper
}

/// Standard echelon HNF: pivots leftmost and positive, entries above pivots in `[0, pivot)`.
fn upper_hnf(mut a: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = best else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in c..ncols {
                    let t = &q * &a[r][j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in &mut a[r] {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                for j in c..ncols {
                    let t = &q * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// HNF of a lattice generated by rational rows, returned with the common denominator:
/// the lattice equals `rows / denom`.
pub fn rational_row_lattice(rows: &[Vec<Rat>]) -> (Vec<Vec<Int>>, Int) {
    let denom = rows
        .iter()
        .flatten()
        .fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scale = Rat::from_integer(denom.clone());
    let ints: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * &scale).to_integer()).collect())
        .collect();
    (hnf_rows(&ints), denom)
}

/// Basis of the saturated lattice `Z^n ∩ ker(A)`, in lower HNF.
pub fn integer_kernel(a: &IntMat) -> Vec<Vec<Int>> {
    let (m, n) = (a.rows(), a.cols());
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut r: Vec<Int> = (0..m).map(|j| a.get(j, i).clone()).collect();
            r.extend((0..n).map(|j| if i == j { Int::one() } else { Int::zero() }));
            r
        })
        .collect();
    let echelon = upper_hnf(rows);
    let kernel: Vec<Vec<Int>> = echelon
        .into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| r[m..].to_vec())
        .collect();
    hnf_rows(&kernel)
}

/// An integer solution of `a·x = b`, if one exists.
pub fn solve_integer(a: &IntMat, b: &[Int]) -> Option<Vec<Int>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "right-hand side length");
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut r: Vec<Int> = (0..m).map(|j| a.get(j, i).clone()).collect();
            r.extend((0..n).map(|j| if i == j { Int::one() } else { Int::zero() }));
            r
        })
        .collect();
    let echelon = upper_hnf(rows);
    let mut rest: Vec<Int> = b.to_vec();
    let mut x = vec![Int::zero(); n];
    for row in &echelon {
        let Some(c) = row[..m].iter().position(|v| !v.is_zero()) else {
            break;
        };
        let (q, r) = rest[c].div_rem(&row[c]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..m {
            rest[j] -= &q * &row[j];
        }
        for j in 0..n {
            x[j] += &q * &row[m + j];
        }
    }
    rest.iter().all(Zero::is_zero).then_some(x)
}
