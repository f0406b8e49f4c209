use std::fs;
use std::path::Path;

use proptest::prelude::*;
use schurdefect::document::{parse_document, render_document};
use schurdefect::randomize::{random_base_change, seeded};
use schurdefect::run;
use schurdefect_core::catalog;
use schurdefect_core::invariants::t_invariant;
use schurdefect_core::FieldSpec;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("schurdefect").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path_arg(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn catalog_over_q_matches_the_table() {
    let r = cli(&["catalog", "--field", "q"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("catalog over Q"));
    for key in ["L4_3", "L5_7", "L6_19", "L6_26"] {
        assert!(r.out.contains(key), "{key} missing");
    }
    assert!(!r.out.contains("MISMATCH"));
    assert!(!r.out.contains("L2_"));

    let j = cli(&["catalog", "--field", "gf:2", "--json"]);
    assert_eq!(j.code, 0);
    let items: serde_json::Value = serde_json::from_str(&j.out).unwrap();
    let items = items.as_array().unwrap();
    assert!(items.iter().all(|e| e["matches_table"] == true));
    assert!(items.iter().any(|e| e["key"].as_str().unwrap().starts_with("L2_")));
}

#[test]
fn invariants_of_l5_7() {
    let r = cli(&["invariants", "L5_7", "--json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["t"], 2);
    assert_eq!(v["dim"], 5);
    assert_eq!(v["dim_centralizer_derived"], 4);
    let text = cli(&["invariants", "L5_7"]);
    assert!(text.out.starts_with("L5_7 over Q"));
    assert_eq!(cli(&["t", "L5_7"]).out, "2\n");
    assert_eq!(cli(&["t", "L6_19", "--param", "-1"]).code, 0);
}

#[test]
fn verify_table1_passes() {
    let r = cli(&["verify", "table1"]);
    assert_eq!(r.code, 0);
    assert!(r.out.ends_with("PASS\n"));
    assert!(!r.out.contains("FAIL"));
}

#[test]
fn classify_a_disguised_heisenberg_sum() {
    let q = FieldSpec::rational();
    let l = catalog::heisenberg(q, 2)
        .unwrap()
        .direct_sum(&catalog::abelian(q, 1))
        .unwrap();
    let mystery = random_base_change(&l, &mut seeded(17)).without_name();
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("mystery.json");
    fs::write(&file, render_document(&mystery)).unwrap();
    let r = cli(&["classify", "--file", &path_arg(&file)]);
    assert_eq!((r.code, r.out.as_str()), (0, "heisenberg(2)+A(1)\n"), "{}", r.err);
    let j = cli(&["classify", "--file", &path_arg(&file), "--json"]);
    assert_eq!(j.out, "{\"t\":0,\"verdict\":\"heisenberg(2)+A(1)\"}\n");
}

#[test]
fn filiform_emit_is_a_document() {
    let r = cli(&["filiform", "7", "--emit"]);
    assert_eq!(r.code, 0);
    let l = parse_document(&r.out).unwrap();
    assert_eq!(l.dim(), 10);
    assert_eq!(t_invariant(&l).unwrap(), 7);
}

#[test]
fn enumerate_small_census_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("census.csv");
    let r = cli(&["enumerate", "--dim", "3", "--field", "gf:2", "--verify", "--out", &path_arg(&file)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("candidates       512\n"));
    assert!(r.out.ends_with("bounds: pass\n"));
    let csv = fs::read_to_string(&file).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("tensor_id,n,dim_derived,dim_center,d,t,verdict"));
    assert_eq!(lines.next(), Some("0,3,0,3,0,0,abelian(3)"));
}

#[test]
fn census_over_budget_needs_force() {
    let r = cli(&["enumerate", "--dim", "4", "--field", "gf:3"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("budget") && r.err.contains("--force"), "{}", r.err);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["catalog", "--bogus"],
        &["invariants"],
        &["invariants", "L9_9"],
        &["enumerate", "--dim", "3", "--field", "gf:4"],
        &["enumerate", "--dim", "3", "--field", "gf:2", "--jobs", "0"],
        &["verify", "everything"],
    ] {
        let r = cli(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.err);
        assert!(!r.err.is_empty(), "{args:?}");
    }
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn bad_documents_report_positions() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(
        &file,
        r#"{"dim": 3, "field": {"kind": "rational"}, "brackets": [{"lhs": [2, 1], "rhs": {"3": "1"}}]}"#,
    )
    .unwrap();
    let r = cli(&["t", "--file", &path_arg(&file)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("brackets[0].lhs"), "{}", r.err);
    let missing = dir.path().join("absent.json");
    assert_eq!(cli(&["t", "--file", &path_arg(&missing)]).code, 2);
}

#[test]
fn non_nilpotent_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("solvable.json");
    fs::write(
        &file,
        r#"{"dim": 2, "field": {"kind": "rational"}, "brackets": [{"lhs": [1, 2], "rhs": {"2": "1"}}]}"#,
    )
    .unwrap();
    let r = cli(&["classify", "--file", &path_arg(&file)]);
    assert_eq!(r.code, 2, "{}", r.out);
}

#[test]
fn output_is_deterministic() {
    for args in [&["catalog", "--field", "gf:2"][..], &["invariants", "F12", "--json"], &["filiform", "5"]] {
        let a = cli(args);
        let b = cli(args);
        assert_eq!((a.code, &a.out, &a.err), (b.code, &b.out, &b.err), "{args:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rendered_base_changes_round_trip(seed in any::<u64>(), m in 1usize..=3, k in 0usize..=2, p in prop::sample::select(vec![0u32, 2, 3, 5])) {
        let field = if p == 0 { FieldSpec::rational() } else { FieldSpec::prime(p).unwrap() };
        let l = catalog::heisenberg(field, m).unwrap().direct_sum(&catalog::abelian(field, k)).unwrap();
        let b = random_base_change(&l, &mut seeded(seed));
        let text = render_document(&b);
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(render_document(&back), text);
    }
}
