mod common;

use common::{gf, q, random_base_change, rng};
use schurdefect_core::catalog;
use schurdefect_core::classify::{build_verdict, classify_t012, recognize_heisenberg, stem_decomposition, Evidence, Verdict};
use schurdefect_core::invariants::{self, t_invariant};
use schurdefect_core::{FieldSpec, LieAlgebra, Subspace};

fn sum(l: &LieAlgebra, k: usize) -> LieAlgebra {
    l.direct_sum(&catalog::abelian(l.field(), k)).unwrap()
}

#[test]
fn zero_defect_family() {
    let mut r = rng(1);
    for n in 0..=10 {
        let a = catalog::abelian(q(), n);
        assert_eq!(t_invariant(&a).unwrap(), 0);
        assert_eq!(classify_t012(&a).unwrap().verdict, Verdict::Abelian(n));
    }
    for m in 1..=4 {
        for k in 0..=3 {
            let l = sum(&catalog::heisenberg(q(), m).unwrap(), k);
            for trial in 0..5 {
                let l = if trial == 0 { l.clone() } else { random_base_change(&l, &mut r) };
                let res = classify_t012(&l).unwrap();
                assert_eq!(res.t, 0);
                assert_eq!(res.verdict, Verdict::HeisenbergSum { m, k });
                assert!(matches!(res.evidence, Evidence::Isomorphism(ref h) if h.is_isomorphism()));
            }
        }
    }
}

#[test]
fn defect_one_and_two_families_over_several_fields() {
    let mut r = rng(2);
    for field in [q(), gf(2), gf(3), gf(7)] {
        for k in 0..=3 {
            for v in [Verdict::L43Sum(k), Verdict::L55Sum(k), Verdict::L56Sum(k), Verdict::L57Sum(k)] {
                let l = build_verdict(v, field).unwrap();
                let expected_t = if matches!(v, Verdict::L43Sum(_)) { 1 } else { 2 };
                for _ in 0..4 {
                    let m = random_base_change(&l, &mut r);
                    let res = classify_t012(&m).unwrap();
                    assert_eq!((res.t, res.verdict), (expected_t, v), "over {field}");
                }
            }
        }
    }
}

#[test]
fn l5_6_and_l5_7_are_separated_by_the_derived_centralizer() {
    let l56 = catalog::get("L5_6", q(), &[]).unwrap();
    let l57 = catalog::get("L5_7", q(), &[]).unwrap();
    assert_eq!(invariants::report(&l56).dim_centralizer_derived, 3);
    assert_eq!(invariants::report(&l57).dim_centralizer_derived, 4);
    let (a, b) = (invariants::report(&l56), invariants::report(&l57));
    assert_eq!((a.dim_derived, a.t, a.lcs_dims.clone()), (b.dim_derived, b.t, b.lcs_dims.clone()));
}

#[test]
fn filiform_defects() {
    for t in 1..=30 {
        let f = catalog::filiform(q(), t).unwrap();
        let r = invariants::report(&f);
        assert_eq!(r.t, Some(t as i64));
        assert_eq!(r.dim, t + 3);
        assert_eq!(r.dim_center, 1);
        assert_eq!(r.nilpotency_class, Some(t + 2));
    }
    let f1 = invariants::report(&catalog::filiform(q(), 1).unwrap());
    let f2 = invariants::report(&catalog::filiform(q(), 2).unwrap());
    assert_eq!(f1, invariants::report(&catalog::get("L4_3", q(), &[]).unwrap()));
    assert_eq!(f2, invariants::report(&catalog::get("L5_7", q(), &[]).unwrap()));
}

#[test]
fn stem_decomposition_of_catalog_sums() {
    for field in [q(), gf(2)] {
        for e in catalog::list_all(field) {
            let l = e.algebra().unwrap();
            let inner = stem_decomposition(&l).abelian_dim;
            for k in 0..=3 {
                let s = sum(&l, k);
                let split = stem_decomposition(&s);
                assert_eq!(split.abelian_dim, k + inner, "{}", e.label());
                let derived = invariants::derived_subalgebra(&s);
                let center = invariants::center(&s);
                let expected = derived.intersect(&center).unwrap();
                // Z(T), pushed into L ⊕ A(k) through the witness.
                let stem_center = invariants::center(&split.stem);
                let images: Vec<Vec<_>> = stem_center
                    .basis_vectors()
                    .map(|v| {
                        let mut padded = v.to_vec();
                        padded.resize(s.dim(), field.zero());
                        split.witness.apply(&padded).unwrap()
                    })
                    .collect();
                let pushed = Subspace::span(field, s.dim(), &images).unwrap();
                assert_eq!(pushed, expected, "{}", e.label());
                assert_eq!(t_invariant(&s).unwrap(), t_invariant(&split.stem).unwrap());
                assert!(split.witness.is_isomorphism());
            }
        }
    }
}

#[test]
fn heisenberg_recognition_after_base_change() {
    let mut r = rng(3);
    for field in [q(), gf(2), gf(3)] {
        for m in 1..=3 {
            for k in 0..=2 {
                let l = sum(&catalog::heisenberg(field, m).unwrap(), k);
                for _ in 0..5 {
                    let b = random_base_change(&l, &mut r);
                    let rec = recognize_heisenberg(&b).unwrap();
                    assert_eq!((rec.m, rec.k), (m, k));
                    assert!(rec.witness.is_bracket_preserving());
                    assert!(rec.witness.is_isomorphism());
                }
            }
        }
    }
}

#[test]
fn central_quotient_generators_agree_with_the_quotient() {
    for e in catalog::list_all(q()) {
        let l = e.algebra().unwrap();
        let (quot, _) = l.quotient(&invariants::center(&l)).unwrap();
        assert_eq!(
            invariants::central_quotient_generators(&l).unwrap(),
            invariants::min_generators(&quot).unwrap()
        );
    }
}

#[test]
fn bounds_hold_across_the_catalog() {
    for field in [q(), gf(2), gf(3)] {
        for e in catalog::list_all(field) {
            let r = invariants::report(&e.algebra().unwrap());
            let t = r.t.unwrap();
            assert!(t >= 0);
            assert!(r.dim_derived < 2 || t >= 1);
            assert!(r.dim_derived < 3 || t >= 2);
            assert!(r.dim_derived < 4 || t >= 3);
            assert!(r.moneyhun_holds());
            let res = classify_t012(&e.algebra().unwrap()).unwrap();
            assert!(!res.verdict.is_counterexample(), "{}", e.label());
        }
    }
}

#[test]
fn non_nilpotent_input_is_an_error() {
    let f: FieldSpec = q();
    let l = LieAlgebra::new(f, 2, [schurdefect_core::BracketSpec::new(0, 1, [(1, f.one())])]).unwrap();
    assert!(classify_t012(&l).is_err());
}
