//! Acceptance checks, one PASS/FAIL line each. Runs as a plain binary so the
//! lines always reach the test output.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::oracle::{affine_full, brute_facet_planes, brute_vertices, golden_oracle, laplace_det};
use common::{conjugate, random_unimodular};
use kleinsail::cf::*;
use kleinsail::exact::{int, is_lattice_basis, IntMat, Poly};
use kleinsail::numfield::find_automorphisms;
use kleinsail::palindromy::*;
use kleinsail::sail::*;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLES_LIMIT: Duration = Duration::from_secs(1);
const IDENTITIES_LIMIT: Duration = Duration::from_secs(1);
const BIQUADRATIC_LIMIT: Duration = Duration::from_secs(5);
const WITNESS_LIMIT: Duration = Duration::from_secs(5);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(60);
const SAIL_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_LIMIT: Duration = Duration::from_secs(30);

const ROUND_TRIP_CONJUGATES: usize = 20;
const CONJUGATE_ENTRY_BOUND: i64 = 3;
const SAIL_BOUND: i64 = 10_000;
const SAIL_WINDOW: i64 = 100;
const ORACLE_INSTANCES: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_integrity() -> Outcome {
    let id = IntMat::identity(4);
    let ord2_poly = Poly::from_i64(&[1, 0, -2, 0, 1]);
    let cyclic_poly = Poly::from_i64(&[-1, 0, 0, 0, 1]);
    for kind in [ClassKind::Ord2, ClassKind::Cyclic] {
        for i in 1..=kind.class_count() {
            let g = canonical_matrix(kind, i).map_err(|e| e.to_string())?;
            ensure(g.det().magnitude().is_one(), || format!("{kind} {i}: |det| = {}", g.det()))?;
            match kind {
                ClassKind::Ord2 => {
                    ensure(g.pow(2) == id, || format!("G~{i} squared is not I"))?;
                    ensure(g.char_poly() == ord2_poly, || format!("G~{i} char poly {}", g.char_poly()))?;
                }
                ClassKind::Cyclic => {
                    ensure(g.pow(4) == id, || format!("G'{i} fourth power is not I"))?;
                    ensure(g.char_poly() == cyclic_poly, || format!("G'{i} char poly {}", g.char_poly()))?;
                }
            }
        }
    }
    Ok("10 ord2 and 7 cyclic canonical matrices".into())
}

fn conjugation_identities() -> Outcome {
    let report = verify_tables();
    let cases: Vec<&TableCheck> = report.checks.iter().filter(|c| c.name.contains(" case ")).collect();
    ensure(cases.len() == 18, || format!("expected 18 case identities, found {}", cases.len()))?;
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(format!("{}: {}", c.name, c.detail));
    }
    Ok(format!("{} case identities exact, {} table lines", cases.len(), report.checks.len()))
}

fn biquadratic_instance() -> Outcome {
    let cf = common::r1_instance();
    let e = |x: &dyn std::fmt::Display| x.to_string();
    ensure(
        verify_class_membership(&cf, ClassKind::Ord2, 1).map_err(|x| e(&x))?,
        || "class 1 relations do not hold".into(),
    )?;
    let g = canonical_matrix(ClassKind::Ord2, 1).map_err(|x| e(&x))?;
    let r = classify_symmetry(&g, &cf).map_err(|x| e(&x))?;
    ensure(r.kind == SymmetryKind::Palindromic, || "not palindromic".into())?;
    ensure(r.shape == SigmaShape::Order2 && r.order_of_sigma == 2, || "sigma is not of order 2".into())?;
    ensure(r.proper, || "not proper".into())?;
    ensure(r.mu.iter().all(Mu::is_exactly_one), || "some mu is not exactly 1".into())?;
    let f = fixed_point_on_sail(&g, &cf, 8).map_err(|x| e(&x))?.ok_or("no fixed point found")?;
    let v: Vec<_> = f.point.iter().map(|&x| int(x)).collect();
    ensure(g.mul_vec(&v) == v, || "fixed point is not fixed".into())?;
    let gcd = f.point.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
    ensure(gcd == 1, || "fixed point is not primitive".into())?;
    ensure(
        locate_cone(&cf, &f.point).map_err(|x| e(&x))? == Location::Inside(f.cone.clone()),
        || "fixed point is not strictly inside its cone".into(),
    )?;
    Ok(format!("sigma {}, mu = 1, fixed point {:?} in cone {}", cycle_string(&r.sigma), f.point, f.cone))
}

fn criterion_witnesses() -> Outcome {
    let e = |x: PalindromyError| x.to_string();
    let Verdict::Holds(c2) = criterion(&common::golden(), ClassKind::Ord2, None, DEFAULT_SEARCH_BOUND).map_err(e)? else {
        return Err("golden ratio rejected".into());
    };
    ensure(c2.trace == Some(kleinsail::exact::rat(1, 1)), || format!("golden trace {:?}", c2.trace))?;

    let cubic = common::cubic_trace_zero();
    ensure(find_automorphisms(cubic.field()).is_normal(), || "cubic not normal".into())?;
    let Verdict::Holds(c3) = criterion(&cubic, ClassKind::Ord2, None, DEFAULT_SEARCH_BOUND).map_err(e)? else {
        return Err("cubic rejected".into());
    };
    ensure(c3.trace == Some(kleinsail::exact::rat(0, 1)), || format!("cubic trace {:?}", c3.trace))?;

    let w = Witness { x: IntMat::identity(4), omega: None, psi: None, condition: Some(1) };
    let Verdict::Holds(c4) = criterion(&common::r1_instance(), ClassKind::Ord2, Some(&w), DEFAULT_SEARCH_BOUND).map_err(e)? else {
        return Err("biquadratic instance rejected".into());
    };
    ensure(c4.condition == 1, || format!("condition {}", c4.condition))?;
    Ok("dim 2 trace 1, dim 3 trace 0 (normal cubic), dim 4 condition 1 with X = I".into())
}

fn round_trip(m: &IntMat, kind: ClassKind) -> Result<(), String> {
    let w = classify_configuration(m, kind, &Orientation::Rational).map_err(|e| e.to_string())?;
    w.check().map_err(|e| e.to_string())?;
    ensure(is_lattice_basis(&w.basis).map_err(|e| e.to_string())?, || "basis fails".into())?;
    let x = build_conjugator(&w).map_err(|e| e.to_string())?;
    let target = x.mul_mat(m).mul_mat(&x.inv_unimodular().map_err(|e| e.to_string())?);
    let hit = [ClassKind::Ord2, ClassKind::Cyclic]
        .into_iter()
        .any(|k| (1..=k.class_count()).any(|i| canonical_matrix(k, i).is_ok_and(|c| c == target)));
    ensure(hit, || "X F X^-1 is not canonical".into())
}

fn classification_round_trip() -> Outcome {
    let all: Vec<(ClassKind, usize)> = [ClassKind::Ord2, ClassKind::Cyclic]
        .into_iter()
        .flat_map(|k| (1..=k.class_count()).map(move |i| (k, i)))
        .collect();
    for &(kind, i) in &all {
        round_trip(&canonical_matrix(kind, i).unwrap(), kind).map_err(|e| format!("{kind} {i}: {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for t in 0..ROUND_TRIP_CONJUGATES {
        let (kind, i) = all[rng.gen_range(0..all.len())];
        let u = random_unimodular(&mut rng, 4, CONJUGATE_ENTRY_BOUND);
        round_trip(&conjugate(&u, &canonical_matrix(kind, i).unwrap()), kind)
            .map_err(|e| format!("conjugate {t} of {kind} {i}: {e}"))?;
    }
    Ok(format!("{} canonical configurations, {ROUND_TRIP_CONJUGATES} conjugates", all.len()))
}

fn sail_oracle() -> Outcome {
    let cf = common::golden();
    let mut total = 0;
    for cone in Cone::all(2) {
        let patch = sail_patch(&cf, &cone, SAIL_BOUND).map_err(|e| e.to_string())?;
        let got: BTreeSet<Point> = patch
            .vertices
            .iter()
            .filter(|v| v.iter().all(|x| x.abs() <= SAIL_WINDOW))
            .cloned()
            .collect();
        let expected = golden_oracle([cone.signs[0], cone.signs[1]], SAIL_WINDOW);
        ensure(got == expected, || format!("cone {cone}: {got:?} vs {expected:?}"))?;
        total += got.len();
    }
    Ok(format!("{total} vertices in 4 cones match convergents, bound {SAIL_BOUND}"))
}

fn structural_guards() -> Outcome {
    let mut reports: Vec<(IntMat, CfData)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let r1 = common::r1_instance();
    let q1 = common::q1_instance();
    for (cf, kind) in [(r1.clone(), ClassKind::Ord2), (q1.clone(), ClassKind::Cyclic)] {
        let g = canonical_matrix(kind, 1).unwrap();
        let a = synthesize_operator(&cf, 5).map_err(|e| e.to_string())?.operator.a;
        for e in 0..3 {
            reports.push((g.mul_mat(&a.pow(e)), cf.clone()));
            reports.push((a.pow(e).mul_mat(&g), cf.clone()));
        }
        reports.push((g.pow(3), cf.clone()));
        for _ in 0..3 {
            let u = random_unimodular(&mut rng, 4, 3);
            reports.push((conjugate(&u, &g), cf.transport(&u).map_err(|e| e.to_string())?));
        }
    }
    let bq = common::biquadratic();
    let taus: Vec<_> = find_automorphisms(&bq).of_order(2).cloned().collect();
    for i in 1..=10 {
        let coords = common::ord2_member(&bq, &taus[i % taus.len()], i, &[1, 2, 0, -1], &[0, 1, 1, 0]);
        if let Ok(cf) = eigenline_matrix(&bq, &coords, i % 4) {
            reports.push((canonical_matrix(ClassKind::Ord2, i).unwrap(), cf));
        }
    }
    let cq = common::cyclic_quartic();
    let sigma = common::order_four(&cq);
    for i in 1..=7 {
        let coords = common::cyclic_member(&cq, &sigma, i, &[1, -1, 2, 1]);
        if let Ok(cf) = eigenline_matrix(&cq, &coords, i % 4) {
            reports.push((canonical_matrix(ClassKind::Cyclic, i).unwrap(), cf));
        }
    }

    let mut violations = Vec::new();
    let mut palindromic = 0;
    for (g, cf) in &reports {
        let r = classify_symmetry(g, cf).map_err(|e| e.to_string())?;
        if r.kind != SymmetryKind::Palindromic {
            continue;
        }
        palindromic += 1;
        let normal = r.sigma_normal();
        if normal != [2, 3, 0, 1] && normal != [1, 2, 3, 0] {
            violations.push(format!("cycle type {}", cycle_string(&r.sigma)));
        }
        let proper = is_proper(&r).map_err(|e| e.to_string())?;
        if proper != r.proper {
            violations.push("report and is_proper disagree".into());
        }
        if r.order_of_sigma == 4 {
            let sq = classify_symmetry(&g.pow(2), cf).map_err(|e| e.to_string())?;
            if is_proper(&sq).map_err(|e| e.to_string())? != proper {
                violations.push(format!("is_proper(G) != is_proper(G^2) for {g:?}"));
            }
        }
        if proper {
            let dims = invariant_subspaces(g, &r).map_err(|e| e.to_string())?.dims();
            let expected = if r.order_of_sigma == 4 { vec![1, 1, 2] } else { vec![2, 2] };
            if dims != expected {
                violations.push(format!("subspace dims {dims:?}"));
            }
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("{palindromic} palindromic symmetries, zero violations"))
}

fn exact_core_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut mismatches = Vec::new();
    for t in 0..ORACLE_INSTANCES / 2 {
        let n = rng.gen_range(1..=5);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let slices: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        if IntMat::from_i64(&slices).det() != int(laplace_det(&wide) as i64) {
            mismatches.push(format!("det instance {t}"));
        }
    }
    for t in 0..ORACLE_INSTANCES / 2 {
        let d = if t % 2 == 0 { 2 } else { 3 };
        let m = rng.gen_range(1..=30);
        let points: Vec<Point> = (0..m).map(|_| (0..d).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let hull = convex_hull(&points).map_err(|e| e.to_string())?;
        if !affine_full(&points) {
            if !hull.facets.is_empty() {
                mismatches.push(format!("hull instance {t}: degenerate set has facets"));
            }
            continue;
        }
        let got: BTreeSet<Point> = hull.vertices.iter().map(|&i| points[i].clone()).collect();
        let planes: BTreeSet<(Vec<i128>, i128)> = hull.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect();
        if got != brute_vertices(&points) || planes != brute_facet_planes(&points) {
            mismatches.push(format!("hull instance {t}"));
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join(", "))?;
    Ok(format!("{ORACLE_INSTANCES} determinant and hull instances, zero mismatches"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("table integrity", table_integrity, TABLES_LIMIT),
        ("conjugation identities", conjugation_identities, IDENTITIES_LIMIT),
        ("biquadratic instance", biquadratic_instance, BIQUADRATIC_LIMIT),
        ("criterion witnesses", criterion_witnesses, WITNESS_LIMIT),
        ("classification round trip", classification_round_trip, ROUND_TRIP_LIMIT),
        ("sail oracle", sail_oracle, SAIL_LIMIT),
        ("structural guards", structural_guards, Duration::MAX),
        ("exact-core oracles", exact_core_oracles, ORACLE_LIMIT),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let time = format!("{:.2}s", elapsed.as_secs_f64());
        let line = match outcome {
            Ok(msg) if elapsed <= limit => format!("PASS criterion {}: {name}: {msg} ({time})", k + 1),
            Ok(msg) => format!("FAIL criterion {}: {name}: {msg}, but took {time} (limit {limit:?})", k + 1),
            Err(msg) => format!("FAIL criterion {}: {name}: {msg} ({time})", k + 1),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
