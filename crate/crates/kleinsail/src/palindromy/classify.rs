use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::conjugator::conjugator_for;
use super::tables::{case_basis_coeffs, ClassKind};
use super::PalindromyError;
use crate::cf::{classify_symmetry, CfData, SigmaShape};
use crate::exact::{
    integer_kernel, is_lattice_basis, rat_int, solve_integer, to_rat_vec, Int, IntMat, IntVec, Rat, RatVec,
};

const ITERATION_CAP: usize = 10_000;

/// A lattice configuration `z₁..z₄` matching one case of the classification,
/// with the case's lattice basis and the conjugator to canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseWitness {
    pub kind: ClassKind,
    pub case_index: usize,
    /// `F` (ord2) or `G` (cyclic).
    pub operator: IntMat,
    pub z: Vec<IntVec>,
    pub basis: Vec<RatVec>,
    pub conjugator: IntMat,
    /// Refinement steps taken before the pair became admissible.
    pub iterations: usize,
}

impl CaseWitness {
    /// Checks the witness invariants: operator action on the `z`, the basis
    /// being the case's combination of the `z` and a basis of `Z⁴`.
    pub fn check(&self) -> Result<(), PalindromyError> {
        let bad = |m: String| Err(PalindromyError::InvalidWitness(m));
        if self.z.len() != 4 || self.z.iter().any(|v| v.len() != 4) || self.operator.rows() != 4 {
            return bad("expected four vectors in dimension 4".into());
        }
        let image = |i: usize| self.operator.mul_vec(&self.z[i]);
        let action_ok = match self.kind {
            ClassKind::Ord2 => (0..4).all(|i| image(i) == self.z[(i + 2) % 4]),
            ClassKind::Cyclic => (0..4).all(|i| image(i) == self.z[(i + 1) % 4]),
        };
        if !action_ok {
            return bad(format!("operator does not act on z as {} requires", self.kind));
        }
        let expected = basis_from(&case_basis_coeffs(self.kind, self.case_index)?, &self.z);
        if expected != self.basis {
            return bad(format!("basis is not the case {} combination of z", self.case_index));
        }
        if !is_lattice_basis(&self.basis)? {
            return bad("basis vectors do not form a basis of Z^4".into());
        }
        Ok(())
    }
}

fn basis_from(coeffs: &[[Rat; 4]; 4], z: &[IntVec]) -> Vec<RatVec> {
    coeffs
        .iter()
        .map(|row| {
            (0..4)
                .map(|j| row.iter().zip(z).map(|(c, v)| c * rat_int(&v[j])).sum())
                .collect()
        })
        .collect()
}

/// Renumberings of `z₁..z₄` compatible with the operator: `r[i]` is the old
/// index placed at position `i`. Eight for ord2, the four rotations for cyclic.
pub fn renumberings(kind: ClassKind) -> Vec<[usize; 4]> {
    match kind {
        ClassKind::Ord2 => {
            let mut out = Vec::new();
            for first in 0..4 {
                for second in [(first + 1) % 4, (first + 3) % 4] {
                    out.push([first, second, (first + 2) % 4, (second + 2) % 4]);
                }
            }
            out
        }
        ClassKind::Cyclic => (0..4).map(|r| [r, (r + 1) % 4, (r + 2) % 4, (r + 3) % 4]).collect(),
    }
}

/// How to pick among the two hyperplanes parallel to the distinguished one.
pub enum Orientation<'a> {
    /// The side containing the first fixed lattice line's positive generator.
    Rational,
    /// The side on which the identity eigenline is positive.
    Eigenline(&'a CfData),
}

impl Orientation<'_> {
    fn keep(&self, f: &[Int], fixed: &[Int]) -> Result<bool, PalindromyError> {
        match self {
            Orientation::Rational => Ok(dot_int(f, fixed).is_positive()),
            Orientation::Eigenline(cf) => {
                let v = cf.vector();
                let x = f
                    .iter()
                    .zip(v)
                    .fold(crate::numfield::AlgNum::zero(cf.field()), |acc, (c, vk)| {
                        acc.add(&vk.scale(&rat_int(c)))
                    });
                Ok(x.sign_at(cf.identity_root())? == Ordering::Greater)
            }
        }
    }
}

fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| rat_int(x) * y).sum()
}

type P2 = [Rat; 2];

fn det2(a: &P2, b: &P2) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn add2(a: &P2, b: &P2, k: i64) -> P2 {
    let k = Rat::from_integer(k.into());
    [&a[0] + &b[0] * &k, &a[1] + &b[1] * &k]
}

fn scale2(a: &P2, k: &Rat) -> P2 {
    [&a[0] * k, &a[1] * k]
}

fn is_zero2(a: &P2) -> bool {
    a[0].is_zero() && a[1].is_zero()
}

/// Whether `c` lies in the parallelogram `conv(±a, ±b)`.
fn in_parallelogram(c: &P2, a: &P2, b: &P2) -> bool {
    let d = det2(a, b);
    let s = det2(c, b) / &d;
    let t = det2(a, c) / &d;
    s.abs() + t.abs() <= Rat::one()
}

/// Points of `off + Z²` inside `conv(±a, ±b)`.
fn lattice_points(off: &P2, a: &P2, b: &P2) -> Vec<P2> {
    let mut ranges = Vec::new();
    for k in 0..2 {
        let m = a[k].abs().max(b[k].abs());
        let lo = (-&m - &off[k]).ceil().to_integer();
        let hi = (&m - &off[k]).floor().to_integer();
        ranges.push((lo, hi));
    }
    let mut out = Vec::new();
    let mut i = ranges[0].0.clone();
    while i <= ranges[0].1 {
        let mut j = ranges[1].0.clone();
        while j <= ranges[1].1 {
            let c = [&off[0] + rat_int(&i), &off[1] + rat_int(&j)];
            if in_parallelogram(&c, a, b) {
                out.push(c);
            }
            j += 1;
        }
        i += 1;
    }
    out
}

/// Nonzero point of `off + Z²` with smallest sup norm, then smallest in order,
/// avoiding directions collinear with `avoid`.
fn nearest_point(off: &P2, avoid: Option<&P2>) -> P2 {
    let reduce = |x: &Rat| x - x.floor();
    let base = [reduce(&off[0]), reduce(&off[1])];
    let mut best: Option<(Rat, P2)> = None;
    for i in -2..=2i64 {
        for j in -2..=2i64 {
            let c = [&base[0] + Rat::from_integer(i.into()), &base[1] + Rat::from_integer(j.into())];
            if is_zero2(&c) || avoid.is_some_and(|a| det2(a, &c).is_zero()) {
                continue;
            }
            let norm = c[0].abs().max(c[1].abs());
            if best.as_ref().is_none_or(|(n, b)| norm < *n || (norm == *n && c < *b)) {
                best = Some((norm, c));
            }
        }
    }
    best.expect("a non-collinear point exists in a 5x5 window").1
}

/// Rational coordinates of lattice planes parallel to a rank-2 sublattice.
struct PlaneFrame {
    w: [IntVec; 2],
    pivot: (usize, usize),
}

impl PlaneFrame {
    fn new(w: [IntVec; 2]) -> PlaneFrame {
        let mut pivot = (0, 1);
        'outer: for i in 0..4 {
            for j in i + 1..4 {
                if &w[0][i] * &w[1][j] != &w[0][j] * &w[1][i] {
                    pivot = (i, j);
                    break 'outer;
                }
            }
        }
        PlaneFrame { w, pivot }
    }

    fn coords(&self, d: &[Rat]) -> P2 {
        let (i, j) = self.pivot;
        let m = [
            [rat_int(&self.w[0][i]), rat_int(&self.w[1][i])],
            [rat_int(&self.w[0][j]), rat_int(&self.w[1][j])],
        ];
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        let c0 = (&d[i] * &m[1][1] - &d[j] * &m[0][1]) / &det;
        let c1 = (&m[0][0] * &d[j] - &m[1][0] * &d[i]) / &det;
        debug_assert!((0..4).all(|k| &c0 * rat_int(&self.w[0][k]) + &c1 * rat_int(&self.w[1][k]) == d[k]));
        [c0, c1]
    }

    fn point(&self, base: &[Rat], c: &P2) -> RatVec {
        (0..4)
            .map(|k| &base[k] + &c[0] * rat_int(&self.w[0][k]) + &c[1] * rat_int(&self.w[1][k]))
            .collect()
    }

    fn lattice_point(&self, base: &[Rat], c: &P2) -> IntVec {
        self.point(base, c)
            .iter()
            .map(|x| {
                assert!(x.is_integer(), "plane point is a lattice point");
                x.to_integer()
            })
            .collect()
    }
}

/// The slice `S₁`, the fixed point `p` and the two nearest parallel planes.
struct Slices {
    frame: PlaneFrame,
    p_q: RatVec,
    p_r: RatVec,
    off_q: P2,
    off_r: P2,
}

fn slices(
    fixed: &IntVec,
    line: &IntVec,
    plane: [IntVec; 2],
    orient: &Orientation,
) -> Result<Slices, PalindromyError> {
    let hyper = IntMat::from_rows(vec![line.clone(), plane[0].clone(), plane[1].clone()])?;
    let mut f = integer_kernel(&hyper).pop().expect("a hyperplane has a normal");
    if dot_int(&f, fixed).is_negative() {
        f = f.iter().map(|x| -x).collect();
    }
    if !orient.keep(&f, fixed)? {
        f = f.iter().map(|x| -x).collect();
    }
    let ann = integer_kernel(&IntMat::from_rows(plane.to_vec())?);
    let (h1, h2) = (&ann[0], &ann[1]);
    let hm = IntMat::from_cols(&[h1.clone(), h2.clone()]);
    let xy = solve_integer(&hm, &f).expect("normal lies in the annihilator");
    let eg = xy[0].extended_gcd(&xy[1]);
    debug_assert!(eg.gcd.is_one());
    // x·t − y·s = 1 with (s, t) = (−eg.y, eg.x)
    let g: IntVec = (0..4).map(|k| &eg.x * &h2[k] - &eg.y * &h1[k]).collect();
    let fg = IntMat::from_rows(vec![f.clone(), g.clone()])?;

    let f_fixed = rat_int(&dot_int(&f, fixed));
    let p: RatVec = fixed.iter().map(|x| rat_int(x) / &f_fixed).collect();
    let b_p = dot_rat(&g, &p);
    let g_line = rat_int(&dot_int(&g, line));
    let b_q = b_p.floor().to_integer() + 1;
    let b_r = b_p.ceil().to_integer() - 1;
    let on_line = |b: &Int| -> RatVec {
        let t = (rat_int(b) - &b_p) / &g_line;
        (0..4).map(|k| &p[k] + &t * rat_int(&line[k])).collect()
    };
    let p_q = on_line(&b_q);
    let p_r = on_line(&b_r);
    let frame = PlaneFrame::new(plane);
    let offset = |b: &Int, base: &RatVec| -> P2 {
        let x0 = solve_integer(&fg, &[Int::one(), b.clone()]).expect("f and g extend to a basis");
        let d: RatVec = (0..4).map(|k| rat_int(&x0[k]) - &base[k]).collect();
        frame.coords(&d)
    };
    let off_q = offset(&b_q, &p_q);
    let off_r = offset(&b_r, &p_r);
    Ok(Slices {
        frame,
        p_q,
        p_r,
        off_q,
        off_r,
    })
}

fn pair(rows: Vec<IntVec>) -> [IntVec; 2] {
    let mut it = rows.into_iter();
    [it.next().unwrap(), it.next().unwrap()]
}

fn require(cond: bool, msg: &str) -> Result<(), PalindromyError> {
    if cond {
        Ok(())
    } else {
        Err(PalindromyError::NotProper(msg.into()))
    }
}

/// Runs the lattice-point construction for an involution `F` (ord2) or an
/// order-4 operator `G` (cyclic) and matches the result against the case list.
pub fn classify_configuration(
    m: &IntMat,
    kind: ClassKind,
    orient: &Orientation,
) -> Result<CaseWitness, PalindromyError> {
    require(m.rows() == 4 && m.cols() == 4, "operator must be 4x4")?;
    let id = IntMat::identity(4);
    let kernel = |a: &IntMat| integer_kernel(a);
    let (z, iterations) = match kind {
        ClassKind::Ord2 => {
            require(m.pow(2) == id && *m != id && *m != -&id, "not an involution other than +-I")?;
            let plus = kernel(&m.sub_mat(&id));
            let minus = kernel(&m.add_mat(&id));
            require(plus.len() == 2 && minus.len() == 2, "eigenspaces of +1 and -1 must both have rank 2")?;
            ord2_iteration(m, &plus[0], &plus[1], pair(minus), orient)?
        }
        ClassKind::Cyclic => {
            require(m.pow(4) == id && m.pow(2) != id, "operator must have order 4")?;
            let plus = kernel(&m.sub_mat(&id));
            let minus = kernel(&m.add_mat(&id));
            let plane = kernel(&m.pow(2).add_mat(&id));
            require(
                plus.len() == 1 && minus.len() == 1 && plane.len() == 2,
                "eigenvalues must be 1, -1, i, -i",
            )?;
            cyclic_iteration(m, &plus[0], &minus[0], pair(plane), orient)?
        }
    };
    match_case(m, kind, &z, iterations)
}

fn match_case(m: &IntMat, kind: ClassKind, z: &[IntVec], iterations: usize) -> Result<CaseWitness, PalindromyError> {
    for case in 1..=kind.case_count() {
        let coeffs = case_basis_coeffs(kind, case)?;
        for r in renumberings(kind) {
            let zr: Vec<IntVec> = r.iter().map(|&i| z[i].clone()).collect();
            let basis = basis_from(&coeffs, &zr);
            if !is_lattice_basis(&basis)? {
                continue;
            }
            let Ok(conjugator) = conjugator_for(kind, case, &zr) else {
                continue;
            };
            let witness = CaseWitness {
                kind,
                case_index: case,
                operator: m.clone(),
                z: zr,
                basis,
                conjugator,
                iterations,
            };
            witness.check()?;
            return Ok(witness);
        }
    }
    Err(PalindromyError::NoConfiguration(format!(
        "z = {:?}",
        z.iter().map(|v| v.iter().map(Int::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()
    )))
}

fn ord2_iteration(
    f_op: &IntMat,
    fixed: &IntVec,
    line: &IntVec,
    plane: [IntVec; 2],
    orient: &Orientation,
) -> Result<(Vec<IntVec>, usize), PalindromyError> {
    let s = slices(fixed, line, plane, orient)?;
    let half = Rat::new(1.into(), 2.into());
    let mut a = nearest_point(&s.off_q, None);
    let mut b = nearest_point(&s.off_r, Some(&a));
    for step in 0..ITERATION_CAP {
        let neg = |x: &P2| scale2(x, &-Rat::one());
        let common = [a.clone(), neg(&a), b.clone(), neg(&b)];
        let excl_q: Vec<P2> = common
            .iter()
            .cloned()
            .chain([scale2(&b, &half), scale2(&b, &-&half)])
            .collect();
        let excl_r: Vec<P2> = common
            .iter()
            .cloned()
            .chain([scale2(&a, &half), scale2(&a, &-&half)])
            .collect();
        let mut found: Option<(IntVec, bool, P2)> = None;
        for (in_q, off, base, excl) in [(true, &s.off_q, &s.p_q, &excl_q), (false, &s.off_r, &s.p_r, &excl_r)] {
            for c in lattice_points(off, &a, &b) {
                if is_zero2(&c) || excl.contains(&c) {
                    continue;
                }
                let pt = s.frame.lattice_point(base, &c);
                if found.as_ref().is_none_or(|(best, _, _)| pt < *best) {
                    found = Some((pt, in_q, c));
                }
            }
        }
        let Some((_, in_q, c)) = found else {
            let z1 = s.frame.lattice_point(&s.p_q, &a);
            let z2 = s.frame.lattice_point(&s.p_r, &b);
            let z3 = f_op.mul_vec(&z1);
            let z4 = f_op.mul_vec(&z2);
            return Ok((vec![z1, z2, z3, z4], step));
        };
        // a point in one plane replaces that plane's generator unless it is
        // collinear with the other one, which then shrinks by twice the point
        let (own, other, excl_other) = if in_q { (&mut a, &mut b, &excl_r) } else { (&mut b, &mut a, &excl_q) };
        if !det2(&c, other).is_zero() {
            *own = c;
        } else {
            let options = [add2(other, &c, -2), add2(other, &c, 2)];
            let next = options
                .into_iter()
                .find(|o| !is_zero2(o) && !excl_other.contains(o) && in_parallelogram(o, own, other))
                .expect("one of the two shifts lies in the parallelogram");
            *other = next;
        }
    }
    Err(PalindromyError::IterationCap(format!(
        "parallelogram generators {:?}, {:?}",
        a.iter().map(Rat::to_string).collect::<Vec<_>>(),
        b.iter().map(Rat::to_string).collect::<Vec<_>>()
    )))
}

fn cyclic_iteration(
    g_op: &IntMat,
    fixed: &IntVec,
    line: &IntVec,
    plane: [IntVec; 2],
    orient: &Orientation,
) -> Result<(Vec<IntVec>, usize), PalindromyError> {
    let s = slices(fixed, line, plane.clone(), orient)?;
    // G restricted to the plane, in plane coordinates
    let j_cols: Vec<P2> = plane
        .iter()
        .map(|w| s.frame.coords(&to_rat_vec(&g_op.mul_vec(w))))
        .collect();
    let apply_j = |c: &P2| -> P2 {
        [
            &c[0] * &j_cols[0][0] + &c[1] * &j_cols[1][0],
            &c[0] * &j_cols[0][1] + &c[1] * &j_cols[1][1],
        ]
    };
    let mut a = nearest_point(&s.off_q, None);
    for step in 0..ITERATION_CAP {
        let ja = apply_j(&a);
        let neg = |x: &P2| scale2(x, &-Rat::one());
        let excl = [a.clone(), neg(&a), ja.clone(), neg(&ja)];
        // points of R inside the parallelogram are images of such points of Q
        let next = lattice_points(&s.off_q, &a, &ja)
            .into_iter()
            .filter(|c| !is_zero2(c) && !excl.contains(c))
            .map(|c| (s.frame.lattice_point(&s.p_q, &c), c))
            .min_by(|x, y| x.0.cmp(&y.0));
        match next {
            Some((_, c)) => a = c,
            None => {
                let z1 = s.frame.lattice_point(&s.p_q, &a);
                let z2 = g_op.mul_vec(&z1);
                let z3 = g_op.mul_vec(&z2);
                let z4 = g_op.mul_vec(&z3);
                return Ok((vec![z1, z2, z3, z4], step));
            }
        }
    }
    Err(PalindromyError::IterationCap(format!(
        "parallelogram generator {:?}",
        a.iter().map(Rat::to_string).collect::<Vec<_>>()
    )))
}

/// Classifies a proper symmetry `g` of `cf`. For `Ord2`, a symmetry whose
/// permutation is a 4-cycle is replaced by its square first.
pub fn classify_points(g: &IntMat, cf: &CfData, kind: ClassKind) -> Result<CaseWitness, PalindromyError> {
    if cf.dimension() != 4 {
        return Err(PalindromyError::BadDimension(cf.dimension()));
    }
    let report = classify_symmetry(g, cf)?;
    match report.shape {
        SigmaShape::Identity => return Err(PalindromyError::NotProper("Dirichlet symmetry".into())),
        SigmaShape::Cyclic if kind == ClassKind::Ord2 => {
            let f = g.pow(2);
            return classify_points(&f, cf, kind);
        }
        SigmaShape::Order2 if kind == ClassKind::Cyclic => {
            return Err(PalindromyError::NotProper("permutation is not a 4-cycle".into()))
        }
        _ => {}
    }
    if !report.proper {
        return Err(PalindromyError::NotProper("no fixed point on a sail".into()));
    }
    classify_configuration(g, kind, &Orientation::Eigenline(cf))
}
