#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use kleinsail::cf::{eigenline_matrix, CfData};
use kleinsail::exact::{rat, Int, IntMat};
use kleinsail::numfield::{AlgNum, Automorphism, NumberField};
use rand::Rng;

/// `Q(√2, √3) = Q[θ]/(θ⁴ - 10θ² + 1)` with `θ = √2 + √3`.
pub fn biquadratic() -> Arc<NumberField> {
    NumberField::from_i64(&[1, 0, -10, 0, 1]).unwrap()
}

/// `(√2, √3)` in the power basis of `θ = √2 + √3`.
pub fn sqrt2_sqrt3(k: &Arc<NumberField>) -> (AlgNum, AlgNum) {
    let half = rat(1, 2);
    let s2 = AlgNum::from_i64(k, &[0, -9, 0, 1]).scale(&half);
    let s3 = AlgNum::from_i64(k, &[0, 11, 0, -1]).scale(&half);
    (s2, s3)
}

/// `(α, β, γ) = (√2+√3, √6-√2, √2-√3)` read through the embedding where `θ ≈ 3.15`.
pub fn r1_instance() -> CfData {
    let k = biquadratic();
    let (s2, s3) = sqrt2_sqrt3(&k);
    let s6 = s2.mul(&s3);
    eigenline_matrix(&k, &[s2.add(&s3), s6.sub(&s2), s2.sub(&s3)], 3).unwrap()
}

pub fn golden() -> CfData {
    let k = NumberField::from_i64(&[-1, -1, 1]).unwrap();
    eigenline_matrix(&k, &[AlgNum::generator(&k)], 1).unwrap()
}

/// `x³ - 3x - 1` with `β = α² - 2`.
pub fn cubic_trace_zero() -> CfData {
    let k = NumberField::from_i64(&[-1, -3, 0, 1]).unwrap();
    let a = AlgNum::generator(&k);
    let b = AlgNum::from_i64(&k, &[-2, 0, 1]);
    eigenline_matrix(&k, &[a, b], 2).unwrap()
}

/// `Q(2cos(π/8))`, cyclic of degree 4.
pub fn cyclic_quartic() -> Arc<NumberField> {
    NumberField::from_i64(&[2, 0, -4, 0, 1]).unwrap()
}

/// A non-normal totally real quartic whose only nontrivial automorphism is `x ↦ -x`.
pub fn dihedral_quartic() -> Arc<NumberField> {
    NumberField::from_i64(&[3, 0, -5, 0, 1]).unwrap()
}

pub fn order_four(k: &Arc<NumberField>) -> Automorphism {
    kleinsail::numfield::find_automorphisms(k)
        .of_order(4)
        .next()
        .cloned()
        .expect("cyclic quartic")
}

/// `(x, σx, σ²x)` over `Q(2cos(π/8))` with `x = θ + θ² - 2`, trace 0.
pub fn q1_instance() -> CfData {
    let k = cyclic_quartic();
    let s = order_four(&k);
    let x = AlgNum::from_i64(&k, &[-2, 1, 1, 0]);
    assert!(num_traits::Zero::is_zero(&x.trace()));
    let y = s.apply(&x);
    let z = s.apply(&y);
    eigenline_matrix(&k, &[x, y, z], 2).unwrap()
}

/// Coordinates `(ω, ψ, ·)` satisfying the ord2 relations of class `i` for `τ`.
pub fn ord2_member(k: &Arc<NumberField>, tau: &Automorphism, i: usize, x: &[i64], w: &[i64]) -> [AlgNum; 3] {
    let (c0, c1) = match i {
        1 | 4 | 6 => (rat(0, 1), rat(-1, 1)),
        2 => (rat(1, 1), rat(-1, 1)),
        3 | 5 | 7 => (rat(2, 1), rat(-1, 1)),
        8 => (rat(1, 1), rat(-1, 2)),
        _ => (rat(2, 1), rat(-1, 2)),
    };
    let fourth = match i {
        1..=3 => [rat(0, 1), rat(0, 1), rat(1, 1)],
        4 | 5 | 8 | 9 => [rat(0, 1), rat(1, 2), rat(1, 2)],
        6 | 7 => [rat(1, 2), rat(1, 2), rat(1, 2)],
        _ => [rat(0, 1), rat(-1, 4), rat(1, 4)],
    };
    let omega = AlgNum::from_i64(k, x);
    let t_omega = tau.apply(&omega);
    let w = AlgNum::from_i64(k, w);
    let target = omega.add(&t_omega).scale(&c1).add_rat(&c0);
    let psi = target.scale(&rat(1, 2)).add(&w).sub(&tau.apply(&w));
    let z = omega.scale(&fourth[1]).add(&t_omega.scale(&fourth[2])).add_rat(&fourth[0]);
    [omega, psi, z]
}

/// Coordinates `(x, σx, ·)` satisfying the cyclic relations of class `i`.
pub fn cyclic_member(k: &Arc<NumberField>, sigma: &Automorphism, i: usize, x: &[i64]) -> [AlgNum; 3] {
    let fourth = match i {
        1..=3 => [rat(0, 1), rat(0, 1), rat(1, 1)],
        4 | 5 => [rat(0, 1), rat(1, 2), rat(1, 2)],
        _ => [rat(1, 2), rat(1, 2), rat(1, 2)],
    };
    let trace = match i {
        1 | 4 | 6 => rat(0, 1),
        2 => rat(1, 1),
        _ => rat(2, 1),
    };
    let x = AlgNum::from_i64(k, x);
    let x = x.add_rat(&((trace - x.trace()) * rat(1, 4)));
    let s2 = sigma.pow(2).apply(&x);
    let z = x.scale(&fourth[1]).add(&s2.scale(&fourth[2])).add_rat(&fourth[0]);
    [x.clone(), sigma.apply(&x), z]
}

pub fn int_mat(rows: &[&[i64]]) -> IntMat {
    IntMat::from_i64(rows)
}

/// A random product of elementary matrices, entries kept within `bound`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntMat {
    loop {
        let mut m = IntMat::identity(n);
        for _ in 0..2 * n {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                continue;
            }
            let c: i64 = rng.gen_range(-2..=2);
            let mut e = IntMat::identity(n);
            e.set(i, j, Int::from(c));
            let next = e.mul_mat(&m);
            if next.max_abs() <= Int::from(bound) {
                m = next;
            }
        }
        if rng.gen_bool(0.5) {
            let p = rng.gen_range(0..n);
            let mut d = IntMat::identity(n);
            d.set(p, p, Int::from(-1));
            m = d.mul_mat(&m);
        }
        if m != IntMat::identity(n) {
            return m;
        }
    }
}

pub fn conjugate(u: &IntMat, g: &IntMat) -> IntMat {
    u.mul_mat(g).mul_mat(&u.inv_unimodular().unwrap())
}
