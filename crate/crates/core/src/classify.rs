//! Recognition of nilpotent algebras with defect `t ≤ 2`.
//!
//! A nilpotent algebra with `t = 0` is abelian or `H(m) ⊕ A(k)`; with `t = 1`
//! it is `L4_3 ⊕ A(k)`; with `t = 2` it is `L5_5`, `L5_6` or `L5_7` plus an
//! abelian summand. Within that range the isomorphism type is fixed by `t`,
//! the dimension of the stem part, `dim T²` and, to separate `L5_6` from
//! `L5_7`, `dim C_T(T²)`. Anything else is reported as a counterexample.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{pair_count, Homomorphism, LieAlgebra};
use crate::catalog;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::invariants::{self, InvariantReport};
use crate::linalg::{axpy, Matrix, Subspace};

/// `L = T ⊕ A` with `A` abelian and `Z(T) = L² ∩ Z(L)`.
#[derive(Clone, Debug)]
pub struct StemDecomposition {
    /// The stem part on the echelon basis of its subspace.
    pub stem: LieAlgebra,
    pub abelian_dim: usize,
    /// The subspaces of `L` carrying `T` and `A`.
    pub stem_subspace: Subspace,
    pub abelian_subspace: Subspace,
    /// `T ⊕ A(k) → L`.
    pub witness: Homomorphism,
}

pub fn stem_decomposition(l: &LieAlgebra) -> StemDecomposition {
    let field = l.field();
    let n = l.dim();
    let full = Subspace::full(field, n);
    let derived = invariants::derived_subalgebra(l);
    let center = invariants::center(l);
    let derived_central = derived.intersect(&center).expect("same ambient space");
    let abelian_subspace = derived_central
        .complement_in(&center)
        .expect("L² ∩ Z(L) ⊆ Z(L)");
    let derived_plus_abelian = derived.sum(&abelian_subspace).expect("same ambient space");
    let filler = derived_plus_abelian
        .complement_in(&full)
        .expect("everything lies in L");
    let stem_subspace = derived.sum(&filler).expect("same ambient space");

    let m = stem_subspace.dim();
    let basis: Vec<Vec<Scalar>> = stem_subspace.basis_vectors().map(<[Scalar]>::to_vec).collect();
    let mut pairs = Vec::with_capacity(pair_count(m));
    for a in 0..m {
        for b in a + 1..m {
            let image = l.bracket_unchecked(&basis[a], &basis[b]);
            let coords = stem_subspace
                .coordinates(&image)
                .expect("same ambient space")
                .expect("T contains L²");
            pairs.push(coords);
        }
    }
    // A subalgebra of a Lie algebra satisfies Jacobi.
    let stem = LieAlgebra::from_dense_pairs(field, m, pairs);
    let k = abelian_subspace.dim();
    let columns = basis
        .iter()
        .map(Vec::as_slice)
        .chain(abelian_subspace.basis_vectors());
    let matrix = Matrix::from_columns(field, n, columns).expect("vectors of length n");
    let source = stem
        .direct_sum(&LieAlgebra::abelian(field, k))
        .expect("same field");
    let witness = Homomorphism::new(source, l.clone(), matrix)
        .expect("the splitting L = T ⊕ A preserves brackets");
    StemDecomposition {
        stem,
        abelian_dim: k,
        stem_subspace,
        abelian_subspace,
        witness,
    }
}

/// `L ≅ H(m) ⊕ A(k)` recovered from an algebra with one-dimensional `L²`.
#[derive(Clone, Debug)]
pub struct HeisenbergRecognition {
    pub m: usize,
    pub k: usize,
    /// `H(m) ⊕ A(k) → L`, checked bracket by bracket.
    pub witness: Homomorphism,
}

/// Puts the form `B(x, y) = [x, y]` (valued in the line `L²`) on a complement
/// of the center into symplectic normal form.
pub fn recognize_heisenberg(l: &LieAlgebra) -> Result<HeisenbergRecognition> {
    let field = l.field();
    let n = l.dim();
    let derived = invariants::derived_subalgebra(l);
    if derived.dim() != 1 {
        return Err(Error::DerivedNotLine { dim: derived.dim() });
    }
    let center = invariants::center(l);
    if !derived.is_subspace_of(&center)? {
        // [L, L²] ≠ 0 with dim L² = 1 means L is not nilpotent.
        return Err(Error::NotNilpotent);
    }
    let z: Vec<Scalar> = derived.basis_vectors().next().expect("dim 1").to_vec();
    let z_pivot = derived.pivots()[0];
    // [x, y] = B(x, y)·z, and z has a 1 at its pivot.
    let coefficients: Vec<(usize, usize, Scalar)> = l
        .brackets()
        .filter_map(|(a, b, terms)| {
            let c = terms.iter().find(|(k, _)| *k == z_pivot)?;
            Some((a, b, c.1.clone()))
        })
        .collect();
    let form = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let mut acc = field.zero();
        for (a, b, c) in &coefficients {
            let mut d = &x[*a] * &y[*b];
            d.sub_product(&x[*b], &y[*a]);
            acc.add_product(c, &d);
        }
        acc
    };

    let complement = center
        .complement_in(&Subspace::full(field, n))
        .expect("Z(L) ⊆ L");
    let mut pool: Vec<Vec<Scalar>> = complement.basis_vectors().map(<[Scalar]>::to_vec).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    while let Some(x) = pool.first().cloned() {
        pool.remove(0);
        let partner = pool
            .iter()
            .position(|v| !form(&x, v).is_zero())
            .expect("the form is nondegenerate off the center");
        let mut y = pool.remove(partner);
        let inv = form(&x, &y).inv()?;
        crate::linalg::scale(&mut y, &inv);
        // w ← w − B(w, y)·x + B(w, x)·y leaves w orthogonal to x and y.
        for w in pool.iter_mut() {
            let by = form(w, &y).neg();
            let bx = form(w, &x);
            axpy(w, &by, &x);
            axpy(w, &bx, &y);
        }
        xs.push(x);
        ys.push(y);
    }
    let m = xs.len();
    let abelian_part = derived.complement_in(&center)?;
    let k = abelian_part.dim();
    let columns: Vec<Vec<Scalar>> = xs
        .into_iter()
        .chain(ys)
        .chain(core::iter::once(z))
        .chain(abelian_part.basis_vectors().map(<[Scalar]>::to_vec))
        .collect();
    let matrix = Matrix::from_columns(field, n, &columns)?;
    let source = catalog::heisenberg(field, m)?.direct_sum(&LieAlgebra::abelian(field, k))?;
    let witness = Homomorphism::new(source, l.clone(), matrix)?;
    debug_assert!(witness.is_isomorphism());
    Ok(HeisenbergRecognition { m, k, witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Abelian(usize),
    HeisenbergSum { m: usize, k: usize },
    L43Sum(usize),
    L55Sum(usize),
    L56Sum(usize),
    L57Sum(usize),
    OutOfScope(i64),
    Counterexample,
}

impl Verdict {
    pub fn is_counterexample(self) -> bool {
        self == Verdict::Counterexample
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Abelian(n) => write!(f, "abelian({n})"),
            Verdict::HeisenbergSum { m, k } => write!(f, "heisenberg({m})+A({k})"),
            Verdict::L43Sum(k) => write!(f, "L4_3+A({k})"),
            Verdict::L55Sum(k) => write!(f, "L5_5+A({k})"),
            Verdict::L56Sum(k) => write!(f, "L5_6+A({k})"),
            Verdict::L57Sum(k) => write!(f, "L5_7+A({k})"),
            Verdict::OutOfScope(t) => write!(f, "out-of-scope(t={t})"),
            Verdict::Counterexample => f.write_str("COUNTEREXAMPLE"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Evidence {
    None,
    /// An explicit isomorphism from the canonical form onto the input.
    Isomorphism(Homomorphism),
    /// The stem part's invariants, which fix the type when `t ≤ 2`; for a
    /// counterexample, the offending algebra's own report.
    Fingerprint(Box<InvariantReport>),
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub t: i64,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl ClassificationResult {
    fn counterexample(t: i64, l: &LieAlgebra) -> ClassificationResult {
        ClassificationResult {
            t,
            verdict: Verdict::Counterexample,
            evidence: Evidence::Fingerprint(Box::new(invariants::report(l))),
        }
    }
}

/// Builds the canonical algebra a verdict names, over `field`.
pub fn build_verdict(verdict: Verdict, field: crate::field::FieldSpec) -> Result<LieAlgebra> {
    let with_abelian = |key: &str, k: usize| -> Result<LieAlgebra> {
        catalog::get(key, field, &[])?.direct_sum(&catalog::abelian(field, k))
    };
    match verdict {
        Verdict::Abelian(n) => Ok(catalog::abelian(field, n)),
        Verdict::HeisenbergSum { m, k } => catalog::heisenberg(field, m)?.direct_sum(&catalog::abelian(field, k)),
        Verdict::L43Sum(k) => with_abelian("L4_3", k),
        Verdict::L55Sum(k) => with_abelian("L5_5", k),
        Verdict::L56Sum(k) => with_abelian("L5_6", k),
        Verdict::L57Sum(k) => with_abelian("L5_7", k),
        Verdict::OutOfScope(_) | Verdict::Counterexample => Err(Error::UnknownKey(alloc::format!("{verdict}"))),
    }
}

pub fn classify_t012(l: &LieAlgebra) -> Result<ClassificationResult> {
    let t = invariants::t_invariant(l)?;
    let field = l.field();
    let n = l.dim();
    if t < 0 {
        return Ok(ClassificationResult::counterexample(t, l));
    }
    if t >= 3 {
        return Ok(ClassificationResult {
            t,
            verdict: Verdict::OutOfScope(t),
            evidence: Evidence::None,
        });
    }
    if t == 0 {
        let derived = invariants::derived_subalgebra(l).dim();
        return Ok(match derived {
            0 => ClassificationResult {
                t,
                verdict: Verdict::Abelian(n),
                evidence: Evidence::None,
            },
            1 => {
                let rec = recognize_heisenberg(l)?;
                ClassificationResult {
                    t,
                    verdict: Verdict::HeisenbergSum { m: rec.m, k: rec.k },
                    evidence: Evidence::Isomorphism(rec.witness),
                }
            }
            _ => ClassificationResult::counterexample(t, l),
        });
    }
    let split = stem_decomposition(l);
    let k = split.abelian_dim;
    let stem_report = invariants::report(&split.stem);
    let candidate = match (t, stem_report.dim, stem_report.dim_derived, stem_report.dim_centralizer_derived) {
        (1, 4, _, _) => Some((Verdict::L43Sum(k), "L4_3")),
        (2, 5, 2, _) => Some((Verdict::L55Sum(k), "L5_5")),
        (2, 5, 3, 3) => Some((Verdict::L56Sum(k), "L5_6")),
        (2, 5, 3, 4) => Some((Verdict::L57Sum(k), "L5_7")),
        _ => None,
    };
    let Some((verdict, key)) = candidate else {
        return Ok(ClassificationResult::counterexample(t, l));
    };
    let expected = invariants::report(&catalog::get(key, field, &[])?);
    if expected != stem_report {
        return Ok(ClassificationResult::counterexample(t, l));
    }
    Ok(ClassificationResult {
        t,
        verdict,
        evidence: Evidence::Fingerprint(Box::new(stem_report)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use alloc::string::ToString;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn verdict_strings() {
        assert_eq!(Verdict::Abelian(3).to_string(), "abelian(3)");
        assert_eq!(Verdict::HeisenbergSum { m: 2, k: 1 }.to_string(), "heisenberg(2)+A(1)");
        assert_eq!(Verdict::L56Sum(0).to_string(), "L5_6+A(0)");
        assert_eq!(Verdict::OutOfScope(4).to_string(), "out-of-scope(t=4)");
        assert_eq!(Verdict::Counterexample.to_string(), "COUNTEREXAMPLE");
    }

    #[test]
    fn canonical_forms_classify_to_themselves() {
        let cases = [
            Verdict::Abelian(3),
            Verdict::HeisenbergSum { m: 2, k: 1 },
            Verdict::L43Sum(2),
            Verdict::L55Sum(0),
            Verdict::L56Sum(1),
            Verdict::L57Sum(3),
        ];
        for v in cases {
            let l = build_verdict(v, q()).unwrap();
            assert_eq!(classify_t012(&l).unwrap().verdict, v);
        }
    }

    #[test]
    fn larger_defects_are_out_of_scope() {
        let l = catalog::filiform(q(), 3).unwrap();
        assert_eq!(classify_t012(&l).unwrap().verdict, Verdict::OutOfScope(3));
    }

    #[test]
    fn heisenberg_witness() {
        let l = catalog::heisenberg(q(), 2)
            .unwrap()
            .direct_sum(&catalog::abelian(q(), 2))
            .unwrap();
        let rec = recognize_heisenberg(&l).unwrap();
        assert_eq!((rec.m, rec.k), (2, 2));
        assert!(rec.witness.is_isomorphism());
        let l43 = catalog::get("L4_3", q(), &[]).unwrap();
        assert_eq!(recognize_heisenberg(&l43).unwrap_err(), Error::DerivedNotLine { dim: 2 });
    }

    #[test]
    fn stem_split_of_l5_3() {
        let l = catalog::get("L5_3", q(), &[]).unwrap();
        let split = stem_decomposition(&l);
        assert_eq!(split.abelian_dim, 1);
        assert_eq!(split.stem.dim(), 4);
        assert!(split.witness.is_isomorphism());
    }
}
