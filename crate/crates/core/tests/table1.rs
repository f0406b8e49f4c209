mod common;

use common::{gf, q};
use schurdefect_core::catalog::{self, ParamKind};
use schurdefect_core::invariants;
use schurdefect_core::FieldSpec;

/// The defect table transcribed row by row: (dim L/Z, d(L/Z), dim L²) and its members.
const TABLE: &[((usize, usize, usize), &[&str])] = &[
    ((3, 2, 2), &["L4_3", "L5_3", "L6_3"]),
    ((4, 3, 2), &["L5_5", "L6_5"]),
    ((4, 2, 3), &["L5_6", "L5_7", "L6_6", "L6_7"]),
    ((3, 3, 2), &["L5_8", "L6_8"]),
    ((3, 2, 3), &["L5_9", "L6_9"]),
    ((5, 4, 2), &["L6_10"]),
    ((5, 3, 3), &["L6_11", "L6_12", "L6_13", "L6_19", "L6_20", "L2_6_1", "L2_6_5"]),
    (
        (5, 2, 4),
        &["L6_14", "L6_15", "L6_16", "L6_17", "L6_18", "L6_21", "L2_6_2", "L2_6_3", "L2_6_4", "L2_6_6"],
    ),
    ((4, 4, 2), &["L6_22", "L2_6_7"]),
    ((4, 3, 3), &["L6_23", "L6_24", "L6_25", "L6_27", "L2_6_8"]),
    ((3, 3, 3), &["L6_26"]),
    ((4, 2, 4), &["L6_28"]),
];

fn expected(key: &str) -> (usize, usize, usize) {
    TABLE
        .iter()
        .find(|(_, keys)| keys.contains(&key))
        .map(|(row, _)| *row)
        .unwrap_or_else(|| panic!("{key} missing from the table"))
}

fn parameter_values(kind: ParamKind, field: FieldSpec) -> Vec<Vec<schurdefect_core::Scalar>> {
    let mut values: Vec<Vec<_>> = match kind {
        ParamKind::None => return vec![vec![]],
        ParamKind::Eta => vec![field.zero(), field.one()].into_iter().map(|v| vec![v]).collect(),
        ParamKind::Epsilon | ParamKind::NonzeroEpsilon => [0, 1, 2, -1]
            .into_iter()
            .map(|v| field.from_int(v))
            .filter(|v| kind == ParamKind::Epsilon || !v.is_zero())
            .map(|v| vec![v])
            .collect(),
    };
    values.dedup();
    values
}

fn check_field(field: FieldSpec) -> usize {
    let mut checked = 0;
    for p in catalog::PRESENTATIONS.iter().filter(|p| p.constraint.admits(field)) {
        assert_eq!(p.row, expected(p.key), "stored row for {}", p.key);
        for params in parameter_values(p.params, field) {
            let l = catalog::get(p.key, field, &params).unwrap();
            let row = invariants::report(&l).table_row();
            assert_eq!(row, Some(expected(p.key)), "{} {params:?} over {field}", p.key);
            checked += 1;
        }
    }
    checked
}

#[test]
fn every_table_member_is_in_the_catalog() {
    for (_, keys) in TABLE {
        for key in *keys {
            assert!(catalog::presentation(key).is_some(), "{key}");
        }
    }
    assert_eq!(catalog::PRESENTATIONS.len(), TABLE.iter().map(|(_, k)| k.len()).sum::<usize>());
}

#[test]
fn rows_over_the_rationals() {
    assert!(check_field(q()) >= 31);
}

#[test]
fn rows_over_gf3_and_gf5() {
    check_field(gf(3));
    check_field(gf(5));
}

#[test]
fn rows_over_gf2() {
    let n = check_field(gf(2));
    // L4_3, the six L5 entries and the eight L⁽²⁾ entries with their parameters.
    assert!(n >= 15);
    assert!(catalog::list_all(gf(2)).iter().all(|e| !e.key.starts_with("L6_")));
}

#[test]
fn all_entries_are_nilpotent_lie_algebras() {
    for field in [q(), gf(2), gf(3)] {
        for e in catalog::list_all(field) {
            let l = e.algebra().unwrap();
            assert!(l.check_jacobi().is_empty());
            assert!(invariants::is_nilpotent(&l), "{}", e.label());
            assert!(invariants::moneyhun_check(&l));
        }
    }
}
