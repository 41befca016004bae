use num_traits::ToPrimitive;

use super::cone::{Cone, ConeFrame, Location};
use super::hull::convex_hull;
use super::cone::cone_fiber_ends;
use super::{Point, SailError};
use crate::cf::{sigma_of, CfData};
use crate::exact::{integer_kernel, primitive, Int, IntMat};

/// A bounded piece of the sail of one cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SailPatch {
    pub cone: Cone,
    pub bound: i64,
    /// Vertices of the origin-facing faces, lexicographic.
    pub vertices: Vec<Point>,
    /// Origin-facing faces as indices into `vertices` (cyclic order in dimension 3).
    pub facets: Vec<Vec<usize>>,
    /// `provisional[k]` is set when face `k` touches the window boundary.
    pub provisional: Vec<bool>,
    pub truncated: bool,
}

impl SailPatch {
    /// Vertices not lying on any provisional face.
    pub fn settled_vertices(&self) -> Vec<Point> {
        let mut bad = vec![false; self.vertices.len()];
        for (f, &p) in self.facets.iter().zip(&self.provisional) {
            if p {
                for &i in f {
                    bad[i] = true;
                }
            }
        }
        self.vertices
            .iter()
            .zip(bad)
            .filter(|(_, b)| !b)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

fn linear_rank(points: &[Point]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let rows = points
        .iter()
        .map(|p| p.iter().map(|&x| crate::exact::rat(x, 1)).collect())
        .collect();
    crate::exact::RatMat::from_rows(rows).expect("rectangular").rank()
}

pub fn sail_patch(cf: &CfData, cone: &Cone, bound: i64) -> Result<SailPatch, SailError> {
    let n = cf.dimension();
    let points = cone_fiber_ends(cf, cone, bound)?;
    let empty = |pts: Vec<Point>| SailPatch {
        cone: cone.clone(),
        bound,
        vertices: pts,
        facets: vec![],
        provisional: vec![],
        truncated: true,
    };
    if points.len() < n {
        return Ok(empty(vec![]));
    }
    if linear_rank(&points) < n {
        return Err(SailError::Degenerate);
    }
    if n > 3 {
        return Err(SailError::UnsupportedDimension(n));
    }
    let hull = convex_hull(&points)?;
    let sail: Vec<_> = hull.facets.iter().filter(|f| f.offset > 0).collect();
    let mut used: Vec<usize> = sail.iter().flat_map(|f| f.vertices.clone()).collect();
    used.sort_unstable();
    used.dedup();
    let renumber = |i: usize| used.binary_search(&i).expect("vertex of a kept face");
    let facets: Vec<Vec<usize>> = sail
        .iter()
        .map(|f| f.vertices.iter().map(|&i| renumber(i)).collect())
        .collect();
    let provisional = sail
        .iter()
        .map(|f| {
            f.vertices
                .iter()
                .any(|&i| points[i].iter().any(|x| x.abs() == bound))
        })
        .collect();
    Ok(SailPatch {
        cone: cone.clone(),
        bound,
        vertices: used.iter().map(|&i| points[i].clone()).collect(),
        facets,
        provisional,
        truncated: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub point: Point,
    pub cone: Cone,
}

/// A primitive integer `+1`-eigenvector of `g` strictly inside some cone, searching
/// integer combinations of a kernel basis with coefficients up to `bound`.
/// `None` means `g` has no integer fixed vector at all, or none in the search box.
pub fn fixed_point_on_sail(g: &IntMat, cf: &CfData, bound: i64) -> Result<Option<FixedPoint>, SailError> {
    let n = cf.dimension();
    if g.rows() != n || g.cols() != n {
        return Err(SailError::Precondition("matrix dimension mismatch".into()));
    }
    sigma_of(g, cf)?;
    let kernel = integer_kernel(&g.sub_mat(&IntMat::identity(n)));
    if kernel.is_empty() {
        return Ok(None);
    }
    let frame = ConeFrame::new(cf);
    let k = kernel.len();
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let mut c = vec![-bound.max(1); k];
    let b = bound.max(1);
    loop {
        if c.iter().any(|&x| x != 0) {
            candidates.push(c.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if c[i] < b {
                c[i] += 1;
                break;
            }
            c[i] = -b;
        }
        if c.iter().all(|&x| x == -b) {
            break;
        }
    }
    candidates.sort_by_key(|c| (c.iter().map(|x| x.abs()).max(), c.iter().map(|x| x.abs()).sum::<i64>(), c.clone()));
    for c in candidates {
        let v: Vec<Int> = (0..n)
            .map(|j| {
                kernel
                    .iter()
                    .zip(&c)
                    .map(|(row, &ci)| &row[j] * Int::from(ci))
                    .sum()
            })
            .collect();
        let v = primitive(&v);
        let Some(point) = v.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<i64>>>() else {
            continue;
        };
        if let Location::Inside(cone) = frame.locate(&point)? {
            return Ok(Some(FixedPoint { point, cone }));
        }
    }
    Ok(None)
}
