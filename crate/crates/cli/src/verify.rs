//! The `verify table1` and `verify theorems` suites.

use schurdefect_core::catalog::{self, ParamKind, Presentation};
use schurdefect_core::classify::{build_verdict, classify_t012, stem_decomposition, Verdict};
use schurdefect_core::invariants::{self, t_invariant};
use schurdefect_core::{FieldSpec, LieAlgebra, Scalar};

use crate::document::{parse_document, render_document};
use crate::randomize::{random_base_change, seeded};

#[derive(Clone, Debug)]
pub struct Failure {
    pub what: String,
    pub algebra: Option<LieAlgebra>,
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub failures: Vec<Failure>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: String, algebra: impl FnOnce() -> Option<LieAlgebra>) {
        if ok {
            self.lines.push(format!("ok    {what}"));
        } else {
            self.lines.push(format!("FAIL  {what}"));
            self.failures.push(Failure {
                what,
                algebra: algebra(),
            });
        }
    }

    fn absorb(&mut self, other: Outcome) {
        self.lines.extend(other.lines);
        self.failures.extend(other.failures);
    }

    /// Check lines, then each failing algebra as a document.
    pub fn render(&self) -> String {
        let mut text = String::new();
        for line in &self.lines {
            text.push_str(line);
            text.push('\n');
        }
        for f in &self.failures {
            if let Some(l) = &f.algebra {
                text.push_str(&format!("offending algebra for {}:\n", f.what));
                text.push_str(&render_document(l));
            }
        }
        text.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        text
    }
}

/// Parameter values exercised for one presentation: defaults plus
/// `ε ∈ {0, 1, 2, −1}` where admissible, reduced into the field.
pub fn parameter_values(kind: ParamKind, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let mut values: Vec<Scalar> = match kind {
        ParamKind::None => return vec![Vec::new()],
        ParamKind::Eta => vec![field.zero(), field.one()],
        ParamKind::Epsilon | ParamKind::NonzeroEpsilon => [1, 0, 2, -1]
            .into_iter()
            .map(|v| field.from_int(v))
            .filter(|v| kind == ParamKind::Epsilon || !v.is_zero())
            .collect(),
    };
    let mut seen = Vec::new();
    values.retain(|v| {
        let fresh = !seen.contains(v);
        seen.push(v.clone());
        fresh
    });
    values.into_iter().map(|v| vec![v]).collect()
}

/// Every tabulated instance checked against the table: the characteristic ≠ 2
/// list over ℚ and the characteristic-2 list over GF(2).
pub fn table1_instances() -> Vec<(FieldSpec, &'static Presentation, Vec<Scalar>)> {
    let mut out = Vec::new();
    for field in [FieldSpec::rational(), FieldSpec::prime(2).expect("2 is prime")] {
        for p in catalog::PRESENTATIONS.iter().filter(|p| p.constraint.admits(field)) {
            for params in parameter_values(p.params, field) {
                out.push((field, p, params));
            }
        }
    }
    out
}

fn label(p: &Presentation, params: &[Scalar], field: FieldSpec) -> String {
    match (p.params.symbol(), params.first()) {
        (Some(sym), Some(v)) => format!("{}({sym}={v}) over {field}", p.key),
        _ => format!("{} over {field}", p.key),
    }
}

pub fn table1() -> Outcome {
    let mut out = Outcome::default();
    for (field, p, params) in table1_instances() {
        let what = label(p, &params, field);
        match p.build(field, &params) {
            Ok(l) => {
                let row = invariants::report(&l).table_row();
                let (a, b, c) = p.row;
                let shown = match row {
                    Some((x, y, z)) => format!("({x},{y},{z})"),
                    None => "not nilpotent".into(),
                };
                out.check(
                    row == Some(p.row),
                    format!("{what}: {shown}, table ({a},{b},{c})"),
                    || Some(l.clone()),
                );
            }
            Err(e) => out.check(false, format!("{what}: {e}"), || None),
        }
    }
    out
}

fn catalog_classification() -> Outcome {
    let mut out = Outcome::default();
    let mut rng = seeded(0x5eed);
    for (field, p, params) in table1_instances() {
        let what = label(p, &params, field);
        let Ok(l) = p.build(field, &params) else {
            out.check(false, format!("{what}: construction"), || None);
            continue;
        };
        let reparsed = parse_document(&render_document(&l));
        out.check(
            reparsed.as_ref().is_ok_and(|r| r == &l),
            format!("{what}: document round trip"),
            || Some(l.clone()),
        );
        let direct = match classify_t012(&l) {
            Ok(r) => r,
            Err(e) => {
                out.check(false, format!("{what}: classify failed: {e}"), || Some(l.clone()));
                continue;
            }
        };
        let mut ok = !direct.verdict.is_counterexample();
        if let Ok(canonical) = build_verdict(direct.verdict, field) {
            ok &= invariants::report(&canonical) == invariants::report(&l);
        }
        for _ in 0..3 {
            let m = random_base_change(&l, &mut rng);
            ok &= classify_t012(&m).is_ok_and(|r| r.verdict == direct.verdict);
        }
        out.check(ok, format!("{what}: classified {} (t = {})", direct.verdict, direct.t), || Some(l.clone()));
    }
    out
}

fn stem_sums() -> Outcome {
    let mut out = Outcome::default();
    for (field, p, params) in table1_instances() {
        let what = label(p, &params, field);
        let Ok(l) = p.build(field, &params) else { continue };
        let inner = stem_decomposition(&l).abelian_dim;
        let mut ok = true;
        for k in 0..=3 {
            let s = l.direct_sum(&catalog::abelian(field, k)).expect("same field");
            let split = stem_decomposition(&s);
            ok &= split.abelian_dim == k + inner;
            ok &= t_invariant(&s).ok() == t_invariant(&split.stem).ok();
            ok &= invariants::center(&split.stem).dim() == {
                let d = invariants::derived_subalgebra(&s);
                d.intersect(&invariants::center(&s)).expect("same space").dim()
            };
        }
        out.check(ok, format!("{what}: L ⊕ A(k) splits with t(L ⊕ A(k)) = t(T), k ≤ 3"), || Some(l.clone()));
    }
    out
}

fn families() -> Outcome {
    let mut out = Outcome::default();
    let q = FieldSpec::rational();
    let mut rng = seeded(0xfa31);
    for n in 0..=10 {
        let a = catalog::abelian(q, n);
        let ok = classify_t012(&a).is_ok_and(|r| r.t == 0 && r.verdict == Verdict::Abelian(n));
        out.check(ok, format!("A({n}): t = 0, abelian({n})"), || Some(a.clone()));
    }
    for m in 1..=6 {
        for k in 0..=3 {
            let l = catalog::heisenberg(q, m)
                .and_then(|h| h.direct_sum(&catalog::abelian(q, k)))
                .expect("valid sizes");
            let expected = Verdict::HeisenbergSum { m, k };
            let mut ok = classify_t012(&l).is_ok_and(|r| r.t == 0 && r.verdict == expected);
            let b = random_base_change(&l, &mut rng);
            ok &= classify_t012(&b).is_ok_and(|r| r.verdict == expected);
            out.check(ok, format!("H({m}) ⊕ A({k}): t = 0, {expected}"), || Some(b.clone()));
        }
    }
    for k in 0..=3 {
        for (v, t) in [
            (Verdict::L43Sum(k), 1),
            (Verdict::L55Sum(k), 2),
            (Verdict::L56Sum(k), 2),
            (Verdict::L57Sum(k), 2),
        ] {
            let l = build_verdict(v, q).expect("canonical form");
            let b = random_base_change(&l, &mut rng);
            let ok = [&l, &b]
                .iter()
                .all(|x| classify_t012(x).is_ok_and(|r| r.t == t && r.verdict == v));
            out.check(ok, format!("{v}: t = {t}"), || Some(b.clone()));
        }
    }
    out
}

fn filiform_defects() -> Outcome {
    let mut out = Outcome::default();
    let q = FieldSpec::rational();
    let mut bad = Vec::new();
    for t in 1..=100 {
        let f = catalog::filiform(q, t).expect("t ≥ 1");
        let r = invariants::report(&f);
        let ok = r.t == Some(t as i64) && r.dim == t + 3 && r.dim_center == 1 && r.nilpotency_class == Some(t + 2);
        if !ok {
            bad.push(t);
            out.check(false, format!("F({t}): t = {:?}, class {:?}", r.t, r.nilpotency_class), || Some(f));
        }
    }
    if bad.is_empty() {
        out.check(true, "F(t): t(F(t)) = t, dim t+3, dim Z = 1, class t+2 for 1 ≤ t ≤ 100".into(), || None);
    }
    let fingerprint = |l: LieAlgebra| invariants::report(&l);
    let pairs = [(1, "L4_3"), (2, "L5_7")];
    for (t, key) in pairs {
        let f = catalog::filiform(q, t).expect("t ≥ 1");
        let l = catalog::get(key, q, &[]).expect("catalog key");
        let ok = fingerprint(f.clone()) == fingerprint(l);
        out.check(ok, format!("F({t}) has the fingerprint of {key}"), || Some(f));
    }
    out
}

pub fn theorems() -> Outcome {
    let mut out = table1();
    out.absorb(catalog_classification());
    out.absorb(stem_sums());
    out.absorb(families());
    out.absorb(filiform_defects());
    out
}
