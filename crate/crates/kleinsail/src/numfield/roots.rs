use num_traits::{One, Signed, Zero};

use super::{FieldError, Interval};
use crate::exact::{Poly, Rat};

pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rat) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_changes_at_infinity(seq: &[Poly], positive: bool) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|q| {
            let lead_pos = q.lead().is_positive();
            if positive || q.degree() % 2 == 0 {
                lead_pos
            } else {
                !lead_pos
            }
        })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &Poly) -> usize {
    let seq = sturm_sequence(p);
    sign_changes_at_infinity(&seq, false) - sign_changes_at_infinity(&seq, true)
}

/// Result of root isolation; `complete` is false when some roots are not real.
#[derive(Clone, Debug)]
pub struct RootIsolation {
    pub intervals: Vec<Interval>,
    pub complete: bool,
}

/// Isolating intervals of the real roots of a squarefree polynomial, ascending.
/// Endpoints of non-degenerate intervals are never roots.
pub fn isolate_roots(p: &Poly) -> Result<RootIsolation, FieldError> {
    if p.degree() == 0 {
        return Ok(RootIsolation {
            intervals: vec![],
            complete: true,
        });
    }
    if !p.is_squarefree() {
        return Err(FieldError::NotSquarefree);
    }
    let seq = sturm_sequence(p);
    let lead = p.lead().abs();
    let bound = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rat::zero(), |a, b| a.max(b))
        + Rat::one();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let n = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        match n {
            0 => {}
            1 => out.push(Interval::new(a, b)),
            _ => {
                let m = (&a + &b) / Rat::from_integer(2.into());
                if p.eval(&m).is_zero() {
                    let mut delta = (&b - &a) / Rat::from_integer(4.into());
                    loop {
                        let (l, r) = (&m - &delta, &m + &delta);
                        if !p.eval(&l).is_zero()
                            && !p.eval(&r).is_zero()
                            && sign_changes(&seq, &l) - sign_changes(&seq, &r) == 1
                        {
                            out.push(Interval::point(m.clone()));
                            stack.push((a.clone(), l));
                            stack.push((r, b.clone()));
                            break;
                        }
                        delta /= Rat::from_integer(2.into());
                    }
                    continue;
                }
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    let complete = out.len() == p.degree();
    Ok(RootIsolation {
        intervals: out,
        complete,
    })
}

/// Halves an isolating interval, keeping the root inside.
pub fn bisect_root(p: &Poly, iv: &Interval) -> Interval {
    if iv.lo == iv.hi {
        return iv.clone();
    }
    let m = iv.mid();
    let pm = p.eval(&m);
    if pm.is_zero() {
        return Interval::point(m);
    }
    let plo = p.eval(&iv.lo);
    if plo.is_positive() != pm.is_positive() {
        Interval::new(iv.lo.clone(), m)
    } else {
        Interval::new(m, iv.hi.clone())
    }
}

/// Refines until the width is at most `eps`.
pub fn refine_root(p: &Poly, iv: &Interval, eps: &Rat) -> Interval {
    let mut cur = iv.clone();
    while &cur.width() > eps {
        cur = bisect_root(p, &cur);
    }
    cur
}
