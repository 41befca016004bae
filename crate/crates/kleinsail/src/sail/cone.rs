use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{Point, SailError};
use crate::cf::CfData;
use crate::exact::{Int, Rat};
use crate::numfield::{FieldError, Interval};

/// One of the `2ⁿ` simplicial cones cut out by the eigen-hyperplanes, named by
/// the signs of the eigenline coordinates of its points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub signs: Vec<bool>,
}

impl Cone {
    pub fn parse(s: &str) -> Option<Cone> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Some(true),
                '-' => Some(false),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        (!signs.is_empty()).then_some(Cone { signs })
    }

    pub fn all(n: usize) -> Vec<Cone> {
        (0..1usize << n)
            .map(|m| Cone {
                signs: (0..n).map(|i| m >> (n - 1 - i) & 1 == 0).collect(),
            })
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.signs.len()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            write!(f, "{}", if s { '+' } else { '-' })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Inside(Cone),
    /// Indices of eigenline coordinates that vanish exactly.
    Boundary(Vec<usize>),
}

const FIXED_SHIFT: u32 = 48;

/// Precomputed enclosures of the linear forms giving eigenline coordinates.
pub struct ConeFrame<'a> {
    cf: &'a CfData,
    forms: Vec<Vec<Interval>>,
    /// The same enclosures widened to multiples of `2^-FIXED_SHIFT`, as integer numerators.
    fixed: Vec<Vec<(i128, i128)>>,
}

fn fixed_point(iv: &Interval) -> Option<(i128, i128)> {
    let scale = Rat::from_integer(BigInt::one() << FIXED_SHIFT);
    let lo = (&iv.lo * &scale).floor().to_integer().to_i128()?;
    let hi = (&iv.hi * &scale).ceil().to_integer().to_i128()?;
    Some((lo, hi))
}

/// `Σ vᵢ·[loᵢ, hiᵢ]` in fixed point, or `None` on overflow.
fn fixed_dot(v: &[i64], form: &[(i128, i128)]) -> Option<(i128, i128)> {
    let (mut lo, mut hi) = (0i128, 0i128);
    for (&x, &(a, b)) in v.iter().zip(form) {
        let x = x as i128;
        let (p, q) = (x.checked_mul(a)?, x.checked_mul(b)?);
        let (p, q) = if x >= 0 { (p, q) } else { (q, p) };
        lo = lo.checked_add(p)?;
        hi = hi.checked_add(q)?;
    }
    Some((lo, hi))
}

fn floor_rat(r: &Rat) -> i64 {
    r.floor().to_integer().to_i64().unwrap_or(if r.is_negative() { i64::MIN / 2 } else { i64::MAX / 2 })
}

impl<'a> ConeFrame<'a> {
    pub fn new(cf: &'a CfData) -> ConeFrame<'a> {
        let n = cf.dimension();
        let eps = Rat::new(Int::one(), BigInt::one() << 48);
        let forms = (0..n)
            .map(|i| {
                (0..n)
                    .map(|m| {
                        let mut e = vec![Int::from(0); n];
                        e[m] = Int::one();
                        cf.cone_element(&e).embed(cf.root_of(i), &eps)
                    })
                    .collect()
            })
            .collect::<Vec<Vec<Interval>>>();
        let fixed = forms
            .iter()
            .map(|row| row.iter().map(|iv| fixed_point(iv).unwrap_or((i128::MIN / 4, i128::MAX / 4))).collect())
            .collect();
        ConeFrame { cf, forms, fixed }
    }

    pub fn cf(&self) -> &CfData {
        self.cf
    }

    /// Sign of the coefficient of eigenline `i` in `v`.
    pub fn coordinate_sign(&self, v: &[i64], i: usize) -> Result<Ordering, SailError> {
        if let Some((lo, hi)) = fixed_dot(v, &self.fixed[i]) {
            if lo > 0 {
                return Ok(Ordering::Greater);
            }
            if hi < 0 {
                return Ok(Ordering::Less);
            }
        }
        let mut acc = Interval::point(Rat::from_integer(0.into()));
        for (x, iv) in v.iter().zip(&self.forms[i]) {
            if *x != 0 {
                acc = acc.add(&iv.scale(&Rat::from_integer(Int::from(*x))));
            }
        }
        if let Some(s) = acc.sign() {
            if s != Ordering::Equal {
                return Ok(s);
            }
        }
        let x: Vec<Int> = v.iter().map(|&c| Int::from(c)).collect();
        let y = self.cf.cone_element(&x);
        y.sign_at(self.cf.root_of(i)).map_err(|e| match e {
            FieldError::Undecidable(m) => SailError::Undecidable(m),
            other => SailError::Cf(other.into()),
        })
    }

    /// Least and greatest `y` with `|y| ≤ bound` and `(prefix, y)` strictly
    /// inside `cone`. The fiber is an interval; midpoint estimates of its ends
    /// are confirmed by exact membership tests one step on either side.
    pub fn fiber_range(&self, cone: &Cone, prefix: &[i64], bound: i64) -> Result<Option<(i64, i64)>, SailError> {
        let last = prefix.len();
        let (mut lo, mut hi) = (-bound, bound);
        for (i, &s) in cone.signs.iter().enumerate() {
            let b = &self.forms[i][last];
            let Some(bs) = b.sign().filter(|o| *o != Ordering::Equal) else {
                continue;
            };
            let t = match (fixed_dot(prefix, &self.fixed[i]), self.fixed[i][last]) {
                (Some((a0, a1)), (b0, b1)) if b0 > 0 || b1 < 0 => {
                    (-(a0 / 2 + a1 / 2)).div_euclid(b0 / 2 + b1 / 2).clamp(i64::MIN as i128 / 2, i64::MAX as i128 / 2) as i64
                }
                _ => {
                    let a: Rat = prefix
                        .iter()
                        .zip(&self.forms[i])
                        .map(|(&x, iv)| iv.mid() * Rat::from_integer(Int::from(x)))
                        .sum();
                    floor_rat(&(-a / b.mid()))
                }
            };
            if (bs == Ordering::Greater) == s {
                lo = lo.max(t - 1);
            } else {
                hi = hi.min(t + 2);
            }
        }
        let (lo, hi) = (lo.max(-bound), hi.min(bound));
        let mut v: Vec<i64> = prefix.to_vec();
        v.push(0);
        let mut inside = |y: i64| -> Result<bool, SailError> {
            v[last] = y;
            if v.iter().all(|&x| x == 0) {
                return Ok(false);
            }
            self.contains(cone, &v)
        };
        let Some(first) = (lo..=hi).map(|y| inside(y).map(|t| t.then_some(y))).find_map(Result::transpose) else {
            return Ok(None);
        };
        let first = first?;
        let mut top = first;
        for y in (first + 1..=hi).rev() {
            if inside(y)? {
                top = y;
                break;
            }
        }
        Ok(Some((first, top)))
    }

    pub fn locate(&self, v: &[i64]) -> Result<Location, SailError> {
        if v.len() != self.cf.dimension() {
            return Err(SailError::Precondition("vector dimension mismatch".into()));
        }
        if v.iter().all(|&x| x == 0) {
            return Err(SailError::Precondition("v = 0 lies in no cone".into()));
        }
        let mut signs = Vec::with_capacity(v.len());
        let mut zeros = Vec::new();
        for i in 0..v.len() {
            match self.coordinate_sign(v, i)? {
                Ordering::Greater => signs.push(true),
                Ordering::Less => signs.push(false),
                Ordering::Equal => zeros.push(i),
            }
        }
        if zeros.is_empty() {
            Ok(Location::Inside(Cone { signs }))
        } else {
            Ok(Location::Boundary(zeros))
        }
    }

    pub fn contains(&self, cone: &Cone, v: &[i64]) -> Result<bool, SailError> {
        for (i, &s) in cone.signs.iter().enumerate() {
            let want = if s { Ordering::Greater } else { Ordering::Less };
            if self.coordinate_sign(v, i)? != want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn locate_cone(cf: &CfData, v: &[i64]) -> Result<Location, SailError> {
    ConeFrame::new(cf).locate(v)
}

/// The least and greatest points of every line parallel to the last axis through
/// the lattice points of sup-norm at most `bound` strictly inside `cone`,
/// lexicographic. Their convex hull is that of all such points.
pub fn cone_fiber_ends(cf: &CfData, cone: &Cone, bound: i64) -> Result<Vec<Point>, SailError> {
    if bound < 1 {
        return Err(SailError::Precondition("bound must be at least 1".into()));
    }
    let n = cf.dimension();
    if cone.dimension() != n {
        return Err(SailError::Precondition("cone dimension mismatch".into()));
    }
    let frame = ConeFrame::new(cf);
    let mut out = Vec::new();
    let mut prefix = vec![-bound; n - 1];
    loop {
        if let Some((a, b)) = frame.fiber_range(cone, &prefix, bound)? {
            for y in if a == b { vec![a] } else { vec![a, b] } {
                let mut p = prefix.clone();
                p.push(y);
                out.push(p);
            }
        }
        let mut k = n - 1;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if prefix[k] < bound {
                prefix[k] += 1;
                break;
            }
            prefix[k] = -bound;
        }
    }
}

/// Nonzero lattice points of sup-norm at most `bound` strictly inside `cone`, lexicographic.
pub fn enumerate_cone_points(cf: &CfData, cone: &Cone, bound: i64) -> Result<Vec<Point>, SailError> {
    if bound < 1 {
        return Err(SailError::Precondition("bound must be at least 1".into()));
    }
    let n = cf.dimension();
    if cone.dimension() != n {
        return Err(SailError::Precondition("cone dimension mismatch".into()));
    }
    let frame = ConeFrame::new(cf);
    let mut out = Vec::new();
    let mut p = vec![-bound; n];
    loop {
        if p.iter().any(|&x| x != 0) && frame.contains(cone, &p)? {
            out.push(p.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if p[k] < bound {
                p[k] += 1;
                break;
            }
            p[k] = -bound;
        }
    }
}
