//! Brute-force and classical oracles shared by the integration tests.

use std::collections::BTreeSet;

use itertools::Itertools;
use kleinsail::sail::Point;

pub fn laplace_det(m: &[Vec<i128>]) -> i128 {
    det(m)
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            (if j % 2 == 0 { 1 } else { -1 }) * m[0][j] * det(&minor)
        })
        .sum()
}

/// Whether `p` lies in the simplex on `chosen`, which must be affinely independent
/// for a positive answer.
fn in_simplex(p: &[i64], chosen: &[&Point]) -> bool {
    let d = p.len();
    let q0 = chosen[0];
    let edges: Vec<Vec<i128>> = chosen[1..]
        .iter()
        .map(|q| q.iter().zip(q0).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    let rhs: Vec<i128> = p.iter().zip(q0).map(|(a, b)| (a - b) as i128).collect();
    let k = edges.len();
    if k == 0 {
        return rhs.iter().all(|&x| x == 0);
    }
    // Cramer's rule on the first nonsingular choice of k coordinates.
    for rows in (0..d).combinations(k) {
        let sub = |replace: Option<usize>| -> Vec<Vec<i128>> {
            rows.iter()
                .map(|&r| (0..k).map(|c| if Some(c) == replace { rhs[r] } else { edges[c][r] }).collect())
                .collect()
        };
        let mut den = det(&sub(None));
        if den == 0 {
            continue;
        }
        let mut nums: Vec<i128> = (0..k).map(|c| det(&sub(Some(c)))).collect();
        if den < 0 {
            den = -den;
            nums.iter_mut().for_each(|x| *x = -*x);
        }
        let consistent = (0..d).all(|r| (0..k).map(|c| edges[c][r] * nums[c]).sum::<i128>() == rhs[r] * den);
        return consistent && nums.iter().all(|&x| x >= 0) && nums.iter().sum::<i128>() <= den;
    }
    false
}

/// Whether `p` is a convex combination of affinely independent points among `others`.
fn in_hull_of(p: &[i64], others: &[&Point]) -> bool {
    (1..=p.len() + 1).any(|k| others.iter().copied().combinations(k).any(|c| in_simplex(p, &c)))
}

/// Extreme points by Carathéodory: a point is a vertex unless it lies in a
/// simplex spanned by other points. Duplicates keep their first copy.
pub fn brute_vertices(points: &[Point]) -> BTreeSet<Point> {
    let distinct: Vec<Point> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    distinct
        .iter()
        .filter(|p| {
            let others: Vec<&Point> = distinct.iter().filter(|q| q != p).collect();
            !in_hull_of(p, &others)
        })
        .cloned()
        .collect()
}

/// Supporting hyperplanes spanned by `d` affinely independent points, as primitive
/// inner normals with offsets.
pub fn brute_facet_planes(points: &[Point]) -> BTreeSet<(Vec<i128>, i128)> {
    let d = points[0].len();
    let m = points.len();
    let mut out = BTreeSet::new();
    let idx: Vec<Vec<usize>> = if d == 2 {
        (0..m).flat_map(|i| (i + 1..m).map(move |j| vec![i, j])).collect()
    } else {
        (0..m)
            .flat_map(|i| (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| vec![i, j, k])))
            .collect()
    };
    for t in idx {
        let p0 = &points[t[0]];
        let diffs: Vec<Vec<i128>> = t[1..]
            .iter()
            .map(|&i| points[i].iter().zip(p0).map(|(a, b)| (a - b) as i128).collect())
            .collect();
        let mut n: Vec<i128> = if d == 2 {
            vec![-diffs[0][1], diffs[0][0]]
        } else {
            let (u, v) = (&diffs[0], &diffs[1]);
            vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        };
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let g = n.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
        n.iter_mut().for_each(|x| *x /= g);
        let side = |q: &Point| -> i128 { n.iter().zip(q).map(|(a, &b)| a * b as i128).sum() };
        let c = side(p0);
        let vals: Vec<i128> = points.iter().map(|q| side(q) - c).collect();
        if vals.iter().all(|&v| v >= 0) {
            out.insert((n.clone(), c));
        } else if vals.iter().all(|&v| v <= 0) {
            out.insert((n.iter().map(|x| -x).collect(), -c));
        }
    }
    out
}

pub fn affine_full(points: &[Point]) -> bool {
    let d = points[0].len();
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    diffs.iter().cloned().combinations(d).any(|m| det(&m) != 0)
}

/// Continued fraction expansion of `(p + √d)/q` with `q | d - p²`.
fn quadratic_cf(mut p: i64, d: i64, mut q: i64, terms: usize) -> Vec<i64> {
    assert_eq!((d - p * p) % q, 0);
    let s = (d as f64).sqrt() as i64;
    let s = (s - 2..=s + 2).filter(|x| x * x <= d).max().unwrap();
    let mut out = Vec::new();
    for _ in 0..terms {
        // floor((p + √d)/q) using floor(√d) and the sign of q.
        let a = if q > 0 { (p + s).div_euclid(q) } else { (p + s + 1).div_euclid(q) };
        out.push(a);
        p = a * q - p;
        q = (d - p * p) / q;
    }
    out
}

fn convergents(a: &[i64]) -> Vec<(i64, i64)> {
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, a[0], 1i64);
    let mut out = vec![(1, 0), (p1, q1)];
    for &x in &a[1..] {
        let (p2, q2) = (x * p1 + p0, x * q1 + q0);
        out.push((p2, q2));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

/// Sign of `a + b√5` from integers only.
fn sign_sqrt5(a: i128, b: i128) -> i32 {
    let sa = a.signum() as i32;
    let sb = b.signum() as i32;
    if sa >= 0 && sb >= 0 {
        return (sa + sb).signum();
    }
    if sa <= 0 && sb <= 0 {
        return -1;
    }
    let lhs = a * a;
    let rhs = 5 * b * b;
    if sa > 0 {
        (lhs - rhs).signum() as i32
    } else {
        (rhs - lhs).signum() as i32
    }
}

/// Eigen-coordinate signs of `(x, y)` for `l₁ = (1, φ)`, `l₂ = (1, φ')`:
/// `c₁ ∝ y - φ'x` and `c₂ ∝ φx - y`.
pub fn golden_cone(x: i64, y: i64) -> Option<[bool; 2]> {
    let (x, y) = (x as i128, y as i128);
    // 2(y - φ'x) = (2y - x) + x√5 ; 2(φx - y) = (x - 2y) + x√5
    let c1 = sign_sqrt5(2 * y - x, x);
    let c2 = sign_sqrt5(x - 2 * y, x);
    (c1 != 0 && c2 != 0).then_some([c1 > 0, c2 > 0])
}

pub fn golden_oracle(cone: [bool; 2], limit: i64) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    // Expansions of ±φ and ±φ', with φ = (1 + √5)/2 and φ' = (1 - √5)/2;
    // a negated slope contributes its convergents reflected.
    for (p, q, r) in [(1, 2, 1), (-1, -2, 1), (-1, 2, -1), (1, -2, -1)] {
        for (num, den) in convergents(&quadratic_cf(p, 5, q, 40)) {
            for s in [1, -1] {
                let (x, y) = (s * den, s * r * num);
                if x.abs().max(y.abs()) <= limit && golden_cone(x, y) == Some(cone) {
                    out.insert(vec![x, y]);
                }
            }
        }
    }
    out
}

