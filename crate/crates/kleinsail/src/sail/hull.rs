use std::collections::HashSet;

use super::{Point, SailError};

/// A facet with inner normal: every hull point satisfies `normal · x ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i128>,
    pub offset: i128,
    /// Indices into the input points, in cyclic order for polygons.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub dimension: usize,
    /// Indices of the extreme points, ascending.
    pub vertices: Vec<usize>,
    pub facets: Vec<Facet>,
}

fn dot(a: &[i128], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, &y)| x * y as i128).sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn cross2(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Strict convex polygon (collinear points dropped), counter-clockwise; indices into `pts`.
fn polygon(pts: &[[i64; 2]], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by_key(|&i| pts[i]);
    order.dedup_by_key(|i| pts[*i]);
    if order.len() < 3 {
        return order;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && cross2(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i]) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && cross2(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i]) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn linear_rank(points: &[Point]) -> usize {
    let rows: Vec<Vec<crate::exact::Rat>> = points
        .iter()
        .map(|p| p.iter().map(|&x| crate::exact::rat(x, 1)).collect())
        .collect();
    if rows.is_empty() {
        return 0;
    }
    crate::exact::RatMat::from_rows(rows).expect("rectangular").rank()
}

fn affine_rank(points: &[Point]) -> usize {
    let base = &points[0];
    let diffs: Vec<Point> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    linear_rank(&diffs)
}

/// Exact convex hull of integer points in dimension 2 or 3. Point sets of lower
/// affine dimension give a hull with no facets.
pub fn convex_hull(points: &[Point]) -> Result<Hull, SailError> {
    let n = points.first().map_or(0, Vec::len);
    if !(2..=3).contains(&n) {
        return Err(SailError::UnsupportedDimension(n));
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(SailError::Precondition("mixed point dimensions".into()));
    }
    if points.len() < n + 1 || affine_rank(points) < n {
        return Ok(Hull {
            dimension: n,
            vertices: vec![],
            facets: vec![],
        });
    }
    let facets = if n == 2 { hull2(points) } else { hull3(points) };
    let mut vertices: Vec<usize> = facets.iter().flat_map(|f| f.vertices.clone()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    Ok(Hull {
        dimension: n,
        vertices,
        facets,
    })
}

fn hull2(points: &[Point]) -> Vec<Facet> {
    let pts: Vec<[i64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    let idx: Vec<usize> = (0..pts.len()).collect();
    let poly = polygon(&pts, &idx);
    let k = poly.len();
    (0..k)
        .map(|e| {
            let (a, b) = (poly[e], poly[(e + 1) % k]);
            let d = [
                (pts[b][0] - pts[a][0]) as i128,
                (pts[b][1] - pts[a][1]) as i128,
            ];
            // counter-clockwise order: the interior lies to the left
            let g = gcd(d[0], d[1]);
            let normal = vec![-d[1] / g, d[0] / g];
            let offset = dot(&normal, &points[a]);
            Facet {
                normal,
                offset,
                vertices: vec![a, b],
            }
        })
        .collect()
}

fn hull3(points: &[Point]) -> Vec<Facet> {
    let m = points.len();
    let p: Vec<[i128; 3]> = points
        .iter()
        .map(|q| [q[0] as i128, q[1] as i128, q[2] as i128])
        .collect();
    let mut seen: HashSet<(Vec<i128>, i128)> = HashSet::new();
    let mut facets = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let u = [p[j][0] - p[i][0], p[j][1] - p[i][1], p[j][2] - p[i][2]];
            for k in j + 1..m {
                let v = [p[k][0] - p[i][0], p[k][1] - p[i][1], p[k][2] - p[i][2]];
                let mut nrm = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                if nrm == [0, 0, 0] {
                    continue;
                }
                let g = gcd(gcd(nrm[0], nrm[1]), nrm[2]);
                for x in &mut nrm {
                    *x /= g;
                }
                let c = nrm[0] * p[i][0] + nrm[1] * p[i][1] + nrm[2] * p[i][2];
                let key = (nrm.to_vec(), c);
                let neg = (nrm.iter().map(|x| -x).collect::<Vec<_>>(), -c);
                if seen.contains(&key) || seen.contains(&neg) {
                    continue;
                }
                let (mut pos, mut negs) = (false, false);
                let mut on = Vec::new();
                for (t, q) in p.iter().enumerate() {
                    let s = nrm[0] * q[0] + nrm[1] * q[1] + nrm[2] * q[2] - c;
                    if s > 0 {
                        pos = true;
                    } else if s < 0 {
                        negs = true;
                    } else {
                        on.push(t);
                    }
                    if pos && negs {
                        break;
                    }
                }
                seen.insert(key);
                if pos && negs {
                    continue;
                }
                let (normal, offset) = if negs {
                    (nrm.iter().map(|x| -x).collect::<Vec<_>>(), -c)
                } else {
                    (nrm.to_vec(), c)
                };
                let vertices = facet_polygon(points, &on, &normal);
                facets.push(Facet {
                    normal,
                    offset,
                    vertices,
                });
            }
        }
    }
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    facets
}

/// Extreme points of a planar facet in cyclic order, projected along the
/// coordinate where the normal is largest.
fn facet_polygon(points: &[Point], on: &[usize], normal: &[i128]) -> Vec<usize> {
    let drop = (0..3).max_by_key(|&i| normal[i].abs()).unwrap();
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let pts: Vec<[i64; 2]> = points
        .iter()
        .map(|q| [q[keep[0]], q[keep[1]]])
        .collect();
    let mut poly = polygon(&pts, on);
    if let Some(pos) = poly.iter().enumerate().min_by_key(|(_, &i)| i).map(|(k, _)| k) {
        poly.rotate_left(pos);
    }
    poly
}
