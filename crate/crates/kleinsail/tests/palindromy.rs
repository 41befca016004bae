mod common;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use common::{conjugate, int_mat, random_unimodular};
use kleinsail::cf::{classify_symmetry, eigenline_matrix, CfData, Mu, SigmaShape};
use kleinsail::exact::{is_lattice_basis, rat, IntMat, Rat};
use kleinsail::numfield::{find_automorphisms, AlgNum, Automorphism, NumberField};
use kleinsail::palindromy::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `GL₄(Z)` conjugacy classes among the canonical matrices, as observed by the
/// conjugators: several ord2 classes share a matrix class, the cyclic ones do not.
fn conjugacy_group(kind: ClassKind, i: usize) -> usize {
    match (kind, i) {
        (ClassKind::Ord2, 2) => 2,
        (ClassKind::Ord2, 4 | 5) => 4,
        (ClassKind::Ord2, _) => 1,
        (ClassKind::Cyclic, i) => 10 + i,
    }
}

fn all_classes() -> Vec<(ClassKind, usize)> {
    [ClassKind::Ord2, ClassKind::Cyclic]
        .into_iter()
        .flat_map(|k| (1..=k.class_count()).map(move |i| (k, i)))
        .collect()
}

#[test]
fn tables_verify() {
    let report = verify_tables();
    let lines = report.lines();
    assert_eq!(lines.len(), 35);
    assert!(report.passed(), "{lines:#?}");
    assert!(lines.iter().all(|l| l.starts_with("PASS ")));
    assert!(report.into_result().is_ok());
}

#[test]
fn corrupted_table_entry_is_caught() {
    for (kind, i) in all_classes() {
        let report = verify_tables_with(&|k, j| {
            let mut m = canonical_matrix(k, j).unwrap();
            if (k, j) == (kind, i) {
                let v = m.get(2, 0).clone();
                m.set(2, 0, v + 1);
            }
            m
        });
        assert!(!report.passed(), "{kind} {i}");
        assert!(matches!(report.into_result(), Err(PalindromyError::TableMismatch(_))));
    }
}

#[test]
fn canonical_matrices_have_the_expected_shape() {
    let id = IntMat::identity(4);
    for (kind, i) in all_classes() {
        let g = canonical_matrix(kind, i).unwrap();
        assert!(g.is_unimodular());
        match kind {
            ClassKind::Ord2 => assert!(g.pow(2) == id && g != id),
            ClassKind::Cyclic => assert!(g.pow(4) == id && g.pow(2) != id),
        }
    }
    assert_eq!(
        canonical_matrix(ClassKind::Ord2, 11),
        Err(PalindromyError::IndexOutOfRange { kind: ClassKind::Ord2, index: 11 })
    );
    assert!(canonical_matrix(ClassKind::Cyclic, 0).is_err());
    assert!(case_class(ClassKind::Cyclic, 8).is_err());
    let distinct: BTreeSet<String> = all_classes()
        .into_iter()
        .map(|(k, i)| format!("{:?}", canonical_matrix(k, i).unwrap()))
        .collect();
    assert_eq!(distinct.len(), 17);
}

/// Classifies `m` and checks the conjugator; returns the class reached, which
/// need not be the class `m` was built from since several canonical matrices are
/// conjugate in `GL₄(Z)`.
fn check_round_trip(m: &IntMat, kind: ClassKind) -> usize {
    let w = classify_configuration(m, kind, &Orientation::Rational).unwrap();
    w.check().unwrap();
    assert!(is_lattice_basis(&w.basis).unwrap());
    let x = build_conjugator(&w).unwrap();
    let class = case_class(kind, w.case_index).unwrap();
    let c = canonical_matrix(kind, class).unwrap();
    assert_eq!(x.mul_mat(m).mul_mat(&x.inv_unimodular().unwrap()), c);
    class
}

#[test]
fn canonical_matrices_classify_to_themselves() {
    for (kind, i) in all_classes() {
        let reached = check_round_trip(&canonical_matrix(kind, i).unwrap(), kind);
        assert_eq!(conjugacy_group(kind, reached), conjugacy_group(kind, i), "{kind} {i}");
    }
}

#[test]
fn random_conjugates_classify_to_their_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (kind, i) in all_classes() {
        let g = canonical_matrix(kind, i).unwrap();
        for _ in 0..3 {
            let u = random_unimodular(&mut rng, 4, 3);
            let reached = check_round_trip(&conjugate(&u, &g), kind);
            assert_eq!(conjugacy_group(kind, reached), conjugacy_group(kind, i), "{kind} {i}");
        }
    }
}

#[test]
fn distinct_conjugacy_groups_have_distinct_invariants() {
    // Index of the sum of the fixed and anti-fixed lattices in Z⁴.
    let index = |g: &IntMat| {
        let id = IntMat::identity(4);
        let mut rows = kleinsail::exact::integer_kernel(&g.sub_mat(&id));
        rows.extend(kleinsail::exact::integer_kernel(&g.add_mat(&id)));
        IntMat::from_rows(rows).unwrap().det().magnitude().clone()
    };
    let mut seen = std::collections::BTreeMap::new();
    for i in 1..=10 {
        let g = canonical_matrix(ClassKind::Ord2, i).unwrap();
        let group = conjugacy_group(ClassKind::Ord2, i);
        let idx = index(&g);
        assert_eq!(*seen.entry(group).or_insert(idx.clone()), idx, "class {i}");
    }
    let values: BTreeSet<_> = seen.values().cloned().collect();
    assert_eq!(values.len(), seen.len(), "{seen:?}");
}

#[test]
fn non_involutions_are_refused() {
    let g = canonical_matrix(ClassKind::Cyclic, 1).unwrap();
    assert!(matches!(
        classify_configuration(&g, ClassKind::Ord2, &Orientation::Rational),
        Err(PalindromyError::NotProper(_))
    ));
    let f = canonical_matrix(ClassKind::Ord2, 1).unwrap();
    assert!(matches!(
        classify_configuration(&f, ClassKind::Cyclic, &Orientation::Rational),
        Err(PalindromyError::NotProper(_))
    ));
}

#[test]
fn witness_check_rejects_tampering() {
    let g = canonical_matrix(ClassKind::Ord2, 4).unwrap();
    let mut w = classify_configuration(&g, ClassKind::Ord2, &Orientation::Rational).unwrap();
    w.z.swap(0, 1);
    assert!(matches!(w.check(), Err(PalindromyError::InvalidWitness(_))));
    assert!(build_conjugator(&w).is_err());
}

#[test]
fn renumberings_respect_the_operator() {
    for (kind, count) in [(ClassKind::Ord2, 8), (ClassKind::Cyclic, 4)] {
        let r = renumberings(kind);
        assert_eq!(r.len(), count);
        let step = if kind == ClassKind::Ord2 { 2 } else { 1 };
        for p in r {
            for i in 0..4 {
                assert_eq!(p[(i + step) % 4], (p[i] + step) % 4);
            }
        }
    }
}

#[test]
fn transported_r1_classifies_through_its_lattice_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let cf = common::r1_instance();
    let g = canonical_matrix(ClassKind::Ord2, 1).unwrap();
    let mut cases = BTreeSet::new();
    for _ in 0..6 {
        let u = random_unimodular(&mut rng, 4, 3);
        let cf2 = cf.transport(&u).unwrap();
        let g2 = conjugate(&u, &g);
        let w = classify_points(&g2, &cf2, ClassKind::Ord2).unwrap();
        let x = build_conjugator(&w).unwrap();
        let class = case_class(ClassKind::Ord2, w.case_index).unwrap();
        assert!(verify_class_membership(&cf2.transport(&x).unwrap(), ClassKind::Ord2, class).unwrap());
        cases.insert(w.case_index);
    }
    assert!(cases.iter().all(|c| [1, 6, 7].contains(c)), "{cases:?}");
}

#[test]
fn r1_is_in_the_first_class() {
    let cf = common::r1_instance();
    let m = class_membership(&cf, ClassKind::Ord2, 1).unwrap();
    assert!(m.holds);
    assert_eq!(m.automorphism.unwrap().order(), 2);
    assert!(matches!(
        class_membership(&cf, ClassKind::Cyclic, 1),
        Err(PalindromyError::NoSuchAutomorphism(_))
    ));
    assert_eq!(
        class_membership(&common::golden(), ClassKind::Ord2, 1).unwrap_err(),
        PalindromyError::BadDimension(2)
    );
}

#[test]
fn criterion_in_dimension_two() {
    let v = criterion(&common::golden(), ClassKind::Ord2, None, DEFAULT_SEARCH_BOUND).unwrap();
    let Verdict::Holds(c) = v else { panic!("golden ratio should be palindromic") };
    assert_eq!(c.trace, Some(rat(1, 1)));
    assert_eq!(c.condition, 2);
    assert_eq!(c.omega.trace(), rat(1, 1));
    // Tr √7 = 0 already.
    let k = NumberField::from_i64(&[-7, 0, 1]).unwrap();
    let cf = eigenline_matrix(&k, &[AlgNum::generator(&k)], 1).unwrap();
    let Verdict::Holds(c) = criterion(&cf, ClassKind::Ord2, None, 2).unwrap() else { panic!() };
    assert_eq!(c.trace, Some(Rat::zero()));
    let w = Witness { x: int_mat(&[&[1, 0], &[0, 2]]), omega: None, psi: None, condition: None };
    assert!(matches!(criterion(&cf, ClassKind::Ord2, Some(&w), 2), Err(PalindromyError::InvalidWitness(_))));
}

#[test]
fn criterion_in_dimension_three() {
    let Verdict::Holds(c) = criterion(&common::cubic_trace_zero(), ClassKind::Ord2, None, 1).unwrap() else {
        panic!("trace-zero cubic should satisfy the criterion")
    };
    assert_eq!(c.trace, Some(Rat::zero()));
    assert_eq!(c.condition, 1);
    let k = NumberField::from_i64(&[1, -4, 0, 1]).unwrap();
    let a = AlgNum::generator(&k);
    let cf = eigenline_matrix(&k, &[a.clone(), a.pow(2)], 0).unwrap();
    assert!(matches!(criterion(&cf, ClassKind::Ord2, None, 1).unwrap(), Verdict::Fails(_)));
}

#[test]
fn criterion_in_dimension_four() {
    let cf = common::r1_instance();
    let w = Witness { x: IntMat::identity(4), omega: None, psi: None, condition: Some(1) };
    let Verdict::Holds(c) = criterion(&cf, ClassKind::Ord2, Some(&w), 2).unwrap() else { panic!() };
    assert_eq!(c.condition, 1);
    assert!(c.automorphism.is_some());
    let Verdict::Holds(c) = criterion(&cf, ClassKind::Ord2, None, 2).unwrap() else { panic!() };
    assert_eq!(c.condition, 1);
    let wrong = Witness { condition: Some(3), ..w.clone() };
    assert!(matches!(criterion(&cf, ClassKind::Ord2, Some(&wrong), 2), Err(PalindromyError::InvalidWitness(_))));
    assert!(matches!(criterion(&cf, ClassKind::Cyclic, None, 2).unwrap(), Verdict::Fails(_)));
    let u = int_mat(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let moved = cf.transport(&u).unwrap();
    assert!(matches!(
        criterion(&moved, ClassKind::Ord2, None, 2),
        Err(PalindromyError::BoundedSearchFailed(_))
    ));
    let back = Witness { x: u.inv_unimodular().unwrap(), ..w };
    assert!(criterion(&moved, ClassKind::Ord2, Some(&back), 2).unwrap().holds());
}

struct FieldCase {
    field: Arc<NumberField>,
    involutions: Vec<Automorphism>,
    generators: Vec<Automorphism>,
}

fn quartic_fields() -> &'static [FieldCase] {
    static FIELDS: OnceLock<Vec<FieldCase>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [common::biquadratic(), common::cyclic_quartic(), common::dihedral_quartic()]
            .into_iter()
            .map(|k| {
                let a = find_automorphisms(&k);
                FieldCase {
                    involutions: a.of_order(2).cloned().collect(),
                    generators: a.of_order(4).cloned().collect(),
                    field: k,
                }
            })
            .collect()
    })
}

fn check_member(cf: &CfData, kind: ClassKind, i: usize) -> Result<(), TestCaseError> {
    let m = class_membership(cf, kind, i).unwrap();
    prop_assert!(m.holds);
    let g = canonical_matrix(kind, i).unwrap();
    let r = classify_symmetry(&g, cf).unwrap();
    prop_assert!(r.proper);
    prop_assert!(r.mu.iter().all(Mu::is_exactly_one));
    let shape = if kind == ClassKind::Ord2 { SigmaShape::Order2 } else { SigmaShape::Cyclic };
    prop_assert_eq!(r.shape, shape);
    let w = classify_points(&g, cf, kind).unwrap();
    w.check().unwrap();
    let x = build_conjugator(&w).unwrap();
    let c = case_class(kind, w.case_index).unwrap();
    prop_assert!(verify_class_membership(&cf.transport(&x).unwrap(), kind, c).unwrap());
    Ok(())
}

fn small() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ord2_class_members_have_proper_symmetries(
        which in 0usize..3, t in 0usize..3, i in 1usize..=10, root in 0usize..4, x in small(), w in small()
    ) {
        let fc = &quartic_fields()[which];
        let tau = &fc.involutions[t % fc.involutions.len()];
        let coords = common::ord2_member(&fc.field, tau, i, &x, &w);
        let Ok(cf) = eigenline_matrix(&fc.field, &coords, root) else { return Err(TestCaseError::reject("dependent")) };
        check_member(&cf, ClassKind::Ord2, i)?;
    }

    #[test]
    fn cyclic_class_members_have_proper_symmetries(
        g in 0usize..2, i in 1usize..=7, root in 0usize..4, x in small()
    ) {
        let fc = &quartic_fields()[1];
        let coords = common::cyclic_member(&fc.field, &fc.generators[g], i, &x);
        let Ok(cf) = eigenline_matrix(&fc.field, &coords, root) else { return Err(TestCaseError::reject("dependent")) };
        check_member(&cf, ClassKind::Cyclic, i)?;
    }

    #[test]
    fn dimension_four_criterion_accepts_class_members(
        which in 0usize..3, i in 1usize..=10, root in 0usize..4, x in small(), w in small()
    ) {
        let fc = &quartic_fields()[which];
        let coords = common::ord2_member(&fc.field, &fc.involutions[0], i, &x, &w);
        let Ok(cf) = eigenline_matrix(&fc.field, &coords, root) else { return Err(TestCaseError::reject("dependent")) };
        let Verdict::Holds(c) = criterion(&cf, ClassKind::Ord2, None, 2).unwrap() else {
            return Err(TestCaseError::fail("criterion failed on a class member"));
        };
        prop_assert!(c.x.is_unimodular());
        let again = Witness { x: c.x.clone(), omega: Some(c.omega.clone()), psi: c.psi.clone(), condition: Some(c.condition) };
        prop_assert!(criterion(&cf, ClassKind::Ord2, Some(&again), 2).unwrap().holds());
    }
}
