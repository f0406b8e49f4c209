//! Central series, generator counts and the Schur defect.
//!
//! For a nilpotent algebra `L` the defect is the integer
//! `t(L) = d(L/Z(L)) · dim L² − dim L/Z(L)`, where `d` is the minimal number
//! of generators. For nilpotent algebras `d(M) = dim M − dim M²`, and
//! `(L/Z)² = (L² + Z)/Z`, so `d(L/Z(L)) = dim L − dim(L² + Z(L))`.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Subspace;

pub fn derived_subalgebra(l: &LieAlgebra) -> Subspace {
    let full = Subspace::full(l.field(), l.dim());
    l.product_subspace(&full, &full).expect("subspaces of l")
}

/// `Z(L)`, the joint kernel of all adjoint maps.
pub fn center(l: &LieAlgebra) -> Subspace {
    l.relative_centralizer(&Subspace::full(l.field(), l.dim()), &Subspace::zero(l.field(), l.dim()))
}

/// `Z₂(L)`: the preimage of `Z(L/Z(L))` under the projection.
pub fn second_center(l: &LieAlgebra) -> Subspace {
    let z = center(l);
    let (quotient, projection) = l.quotient(&z).expect("the center is an ideal");
    Subspace::preimage(projection.matrix(), &center(&quotient)).expect("shapes agree")
}

/// `C_L(U) = {x : [x, u] = 0 for all u ∈ U}`.
pub fn centralizer(l: &LieAlgebra, u: &Subspace) -> Result<Subspace> {
    l.check_subspace(u)?;
    Ok(l.relative_centralizer(u, &Subspace::zero(l.field(), l.dim())))
}

/// `L = L¹ ⊇ L² ⊇ …`, stopping at the first repeated term (kept once).
pub fn lower_central_series(l: &LieAlgebra) -> Vec<Subspace> {
    let full = Subspace::full(l.field(), l.dim());
    let mut series = alloc::vec![full.clone()];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = l.product_subspace(&full, last).expect("subspaces of l");
        if next.dim() == last.dim() {
            break;
        }
        series.push(next);
    }
    series
}

/// `Z₁ ⊆ Z₂ ⊆ …` with `Z_{i+1} = {x : [x, L] ⊆ Z_i}`, stopping when stable.
pub fn upper_central_series(l: &LieAlgebra) -> Vec<Subspace> {
    let full = Subspace::full(l.field(), l.dim());
    let mut previous = Subspace::zero(l.field(), l.dim());
    let mut series = Vec::new();
    loop {
        let next = l.relative_centralizer(&full, &previous);
        let stable = next.dim() == previous.dim() && !series.is_empty();
        if stable {
            break;
        }
        let done = next.is_full() || next.dim() == previous.dim();
        series.push(next.clone());
        if done {
            break;
        }
        previous = next;
    }
    series
}

/// Least `c` with `L^{c+1} = 0`, or `None` when `L` is not nilpotent.
pub fn nilpotency_class(l: &LieAlgebra) -> Option<usize> {
    class_from_lcs(&lower_central_series(l))
}

fn class_from_lcs(lcs: &[Subspace]) -> Option<usize> {
    lcs.iter().position(Subspace::is_zero)
}

/// Nilpotency class read off the upper central series.
pub fn class_from_ucs(l: &LieAlgebra) -> Option<usize> {
    if l.dim() == 0 {
        return Some(0);
    }
    upper_central_series(l)
        .iter()
        .position(Subspace::is_full)
        .map(|i| i + 1)
}

pub fn is_nilpotent(l: &LieAlgebra) -> bool {
    nilpotency_class(l).is_some()
}

/// `d(L) = dim L − dim L²` for nilpotent `L`.
pub fn min_generators(l: &LieAlgebra) -> Result<usize> {
    if !is_nilpotent(l) {
        return Err(Error::NotNilpotent);
    }
    Ok(l.dim() - derived_subalgebra(l).dim())
}

/// `d(L/Z(L))` without forming the quotient.
pub fn central_quotient_generators(l: &LieAlgebra) -> Result<usize> {
    if !is_nilpotent(l) {
        return Err(Error::NotNilpotent);
    }
    let sum = derived_subalgebra(l).sum(&center(l))?;
    Ok(l.dim() - sum.dim())
}

pub fn t_invariant(l: &LieAlgebra) -> Result<i64> {
    let d = central_quotient_generators(l)?;
    let derived = derived_subalgebra(l).dim();
    let central_quotient = l.dim() - center(l).dim();
    Ok(defect(d, derived, central_quotient))
}

fn defect(d: usize, dim_derived: usize, dim_central_quotient: usize) -> i64 {
    (d * dim_derived) as i64 - dim_central_quotient as i64
}

fn moneyhun_holds(dim_derived: usize, dim_central_quotient: usize) -> bool {
    let q = dim_central_quotient;
    2 * dim_derived <= q * q.saturating_sub(1)
}

/// `dim L² ≤ q(q−1)/2` with `q = dim L/Z(L)`.
pub fn moneyhun_check(l: &LieAlgebra) -> bool {
    moneyhun_holds(derived_subalgebra(l).dim(), l.dim() - center(l).dim())
}

/// Isomorphism-invariant dimensions of an algebra; equal reports are what
/// "fingerprint-equal" means throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantReport {
    pub dim: usize,
    pub dim_derived: usize,
    pub dim_center: usize,
    pub dim_second_center: usize,
    pub lcs_dims: Vec<usize>,
    pub ucs_dims: Vec<usize>,
    pub nilpotency_class: Option<usize>,
    pub d_central_quotient: Option<usize>,
    pub t: Option<i64>,
    pub dim_centralizer_derived: usize,
}

impl InvariantReport {
    pub fn dim_central_quotient(&self) -> usize {
        self.dim - self.dim_center
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class.is_some()
    }

    /// `(dim L/Z(L), d(L/Z(L)), dim L²)`, the columns of the classical table.
    pub fn table_row(&self) -> Option<(usize, usize, usize)> {
        Some((self.dim_central_quotient(), self.d_central_quotient?, self.dim_derived))
    }

    pub fn moneyhun_holds(&self) -> bool {
        moneyhun_holds(self.dim_derived, self.dim_central_quotient())
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn dims(v: &[usize]) -> alloc::string::String {
            let parts: Vec<alloc::string::String> = v.iter().map(|d| alloc::format!("{d}")).collect();
            alloc::format!("({})", parts.join(","))
        }
        fn opt<T: fmt::Display>(v: &Option<T>) -> alloc::string::String {
            match v {
                Some(x) => alloc::format!("{x}"),
                None => "-".into(),
            }
        }
        writeln!(f, "dim                    {}", self.dim)?;
        writeln!(f, "dim L^2                {}", self.dim_derived)?;
        writeln!(f, "dim Z(L)               {}", self.dim_center)?;
        writeln!(f, "dim Z2(L)              {}", self.dim_second_center)?;
        writeln!(f, "dim L/Z(L)             {}", self.dim_central_quotient())?;
        writeln!(f, "d(L/Z(L))              {}", opt(&self.d_central_quotient))?;
        writeln!(f, "t(L)                   {}", opt(&self.t))?;
        writeln!(f, "nilpotency class       {}", opt(&self.nilpotency_class))?;
        writeln!(f, "lower central series   {}", dims(&self.lcs_dims))?;
        writeln!(f, "upper central series   {}", dims(&self.ucs_dims))?;
        write!(f, "dim C_L(L^2)           {}", self.dim_centralizer_derived)
    }
}

pub fn report(l: &LieAlgebra) -> InvariantReport {
    let lcs = lower_central_series(l);
    let ucs = upper_central_series(l);
    let n = l.dim();
    let derived = match lcs.get(1) {
        Some(d) => d.clone(),
        // Perfect (or zero) algebra: the series never left L.
        None => derived_subalgebra(l),
    };
    let center = &ucs[0];
    let nilpotency_class = class_from_lcs(&lcs);
    let d_central_quotient = nilpotency_class.map(|_| {
        let sum = derived.sum(center).expect("same ambient space");
        n - sum.dim()
    });
    let dim_central_quotient = n - center.dim();
    let t = d_central_quotient.map(|d| defect(d, derived.dim(), dim_central_quotient));
    let dim_second_center = ucs.get(1).unwrap_or(center).dim();
    InvariantReport {
        dim: n,
        dim_derived: derived.dim(),
        dim_center: center.dim(),
        dim_second_center,
        lcs_dims: lcs.iter().map(Subspace::dim).collect(),
        ucs_dims: ucs.iter().map(Subspace::dim).collect(),
        nilpotency_class,
        d_central_quotient,
        t,
        dim_centralizer_derived: l
            .relative_centralizer(&derived, &Subspace::zero(l.field(), n))
            .dim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::FieldSpec;
    use alloc::vec;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn heisenberg_invariants() {
        let h = catalog::heisenberg(q(), 2).unwrap();
        let r = report(&h);
        assert_eq!((r.dim_derived, r.dim_center, r.dim_second_center), (1, 1, 5));
        assert_eq!(r.t, Some(0));
        assert_eq!(r.nilpotency_class, Some(2));
        assert_eq!(r.lcs_dims, vec![5, 1, 0]);
        assert_eq!(r.ucs_dims, vec![1, 5]);
    }

    #[test]
    fn l4_3_row() {
        let l = catalog::get("L4_3", q(), &[]).unwrap();
        let r = report(&l);
        assert_eq!(r.table_row(), Some((3, 2, 2)));
        assert_eq!(r.t, Some(1));
        assert_eq!(t_invariant(&l).unwrap(), 1);
        assert_eq!(class_from_ucs(&l), nilpotency_class(&l));
        assert!(moneyhun_check(&l));
    }

    #[test]
    fn second_center_matches_upper_series() {
        for key in ["L5_6", "L5_9", "L6_14", "L6_22"] {
            let params = if key == "L6_22" { vec![q().one()] } else { vec![] };
            let l = catalog::get(key, q(), &params).unwrap();
            assert_eq!(second_center(&l).dim(), report(&l).dim_second_center, "{key}");
        }
    }

    #[test]
    fn non_nilpotent_algebra() {
        // [x1, x2] = x2
        let l = LieAlgebra::new(q(), 2, [crate::algebra::BracketSpec::new(0, 1, [(1, q().one())])]).unwrap();
        assert!(!is_nilpotent(&l));
        assert_eq!(t_invariant(&l).unwrap_err(), Error::NotNilpotent);
        assert_eq!(min_generators(&l).unwrap_err(), Error::NotNilpotent);
        let r = report(&l);
        assert_eq!(r.t, None);
        assert_eq!(r.lcs_dims, vec![2, 1]);
        assert_eq!(class_from_ucs(&l), None);
    }

    #[test]
    fn abelian_has_zero_defect() {
        let a = catalog::abelian(q(), 4);
        assert_eq!(t_invariant(&a).unwrap(), 0);
        assert_eq!(report(&a).ucs_dims, vec![4]);
        let zero = catalog::abelian(q(), 0);
        assert_eq!(t_invariant(&zero).unwrap(), 0);
    }
}
