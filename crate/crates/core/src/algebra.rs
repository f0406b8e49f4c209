//! Lie algebras given by structure constants.
//!
//! Only brackets `[e_i, e_j]` with `i < j` are stored; `[e_j, e_i]` is the
//! negation and `[e_i, e_i]` is zero, so every stored tensor is alternating
//! in every characteristic. Basis indices are 0-based.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::linalg::{axpy, is_zero_vector, zero_vector, Echelon, LinalgError, Matrix, Subspace};

/// One tabulated bracket `[e_i, e_j] = Σ c_k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketSpec {
    pub lhs: (usize, usize),
    pub rhs: Vec<(usize, Scalar)>,
}

impl BracketSpec {
    pub fn new(i: usize, j: usize, rhs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        BracketSpec {
            lhs: (i, j),
            rhs: rhs.into_iter().collect(),
        }
    }
}

/// Position of the pair `(i, j)`, `i < j`, in the order
/// `(0,1), (0,2), …, (0,n-1), (1,2), …, (n-2,n-1)`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

type Terms = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: Option<String>,
    field: FieldSpec,
    dim: usize,
    // Indexed by `pair_index`; sorted by basis index, no zero coefficients.
    table: Vec<Terms>,
    // For each i, the partners j with a nonzero [e_i, e_j], as (j, pair index).
    partners: Vec<Vec<(usize, usize)>>,
}

impl LieAlgebra {
    /// Builds and validates an algebra; unlisted brackets are zero.
    ///
    /// Pairs given as `(j, i)` with `j > i` are stored negated. Repeated basis
    /// indices on one right-hand side are summed.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        brackets: impl IntoIterator<Item = BracketSpec>,
    ) -> Result<LieAlgebra> {
        let mut table: Vec<Option<Terms>> = vec![None; pair_count(dim)];
        for spec in brackets {
            let (a, b) = spec.lhs;
            for idx in [a, b] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if a == b {
                return Err(Error::SelfBracket { index: a });
            }
            let (i, j, negate) = if a < b { (a, b, false) } else { (b, a, true) };
            let slot = &mut table[pair_index(dim, i, j)];
            if slot.is_some() {
                return Err(Error::DuplicatePair { i, j });
            }
            let mut dense = zero_vector(field, dim);
            for (k, c) in spec.rhs {
                if k >= dim {
                    return Err(Error::IndexOutOfRange { index: k, dim });
                }
                let c = if negate { c.neg() } else { c };
                dense[k] = dense[k].checked_add(&c)?;
            }
            *slot = Some(sparse(&dense));
        }
        let table = table.into_iter().map(Option::unwrap_or_default).collect();
        let algebra = LieAlgebra::from_table(None, field, dim, table);
        if let Some((i, j, k)) = algebra.check_jacobi().into_iter().next() {
            return Err(Error::NotALieAlgebra { i, j, k });
        }
        Ok(algebra)
    }

    /// The abelian algebra of dimension `dim`.
    pub fn abelian(field: FieldSpec, dim: usize) -> LieAlgebra {
        LieAlgebra::from_table(None, field, dim, vec![Vec::new(); pair_count(dim)])
    }

    // Caller guarantees the Jacobi identity.
    pub(crate) fn from_table(
        name: Option<String>,
        field: FieldSpec,
        dim: usize,
        table: Vec<Terms>,
    ) -> LieAlgebra {
        debug_assert_eq!(table.len(), pair_count(dim));
        let mut partners = vec![Vec::new(); dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let p = pair_index(dim, i, j);
                if !table[p].is_empty() {
                    partners[i].push((j, p));
                    partners[j].push((i, p));
                }
            }
        }
        for list in partners.iter_mut() {
            list.sort_unstable();
        }
        LieAlgebra {
            name,
            field,
            dim,
            table,
            partners,
        }
    }

    // Builds from dense bracket vectors of every pair `i < j`, in pair order.
    pub(crate) fn from_dense_pairs(field: FieldSpec, dim: usize, pairs: Vec<Vec<Scalar>>) -> LieAlgebra {
        let table = pairs.iter().map(|v| sparse(v)).collect();
        LieAlgebra::from_table(None, field, dim, table)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn without_name(mut self) -> Self {
        self.name = None;
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Same field, dimension and structure constants; names are ignored.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// Nonzero tabulated brackets `(i, j, terms)` with `i < j`, in pair order.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Scalar)])> + '_ {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(move |(i, j)| {
                let terms = &self.table[pair_index(n, i, j)];
                (!terms.is_empty()).then_some((i, j, terms.as_slice()))
            })
    }

    /// `[e_i, e_j]` as a dense vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = zero_vector(self.field, self.dim);
        if i != j {
            let (lo, hi, negate) = if i < j { (i, j, false) } else { (j, i, true) };
            for (k, c) in &self.table[pair_index(self.dim, lo, hi)] {
                out[*k] = if negate { c.neg() } else { c.clone() };
            }
        }
        out
    }

    /// `out += coeff · [e_i, e_j]`.
    fn accumulate_basis_bracket(&self, out: &mut [Scalar], coeff: &Scalar, i: usize, j: usize, p: usize) {
        let c = if i < j { coeff.clone() } else { coeff.neg() };
        for (k, v) in &self.table[p] {
            out[*k].add_product(&c, v);
        }
    }

    /// `[e_i, v]`.
    pub fn ad_basis(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vector(self.field, self.dim);
        for &(j, p) in &self.partners[i] {
            if !v[j].is_zero() {
                self.accumulate_basis_bracket(&mut out, &v[j], i, j, p);
            }
        }
        out
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            }
            .into());
        }
        if let Some(x) = v.iter().find(|x| x.field() != self.field) {
            return Err(FieldError::FieldMismatch {
                left: self.field,
                right: x.field(),
            }
            .into());
        }
        Ok(())
    }

    /// The bilinear extension of the tabulated brackets.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vector(self.field, self.dim);
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for &(j, p) in &self.partners[i] {
                if y[j].is_zero() {
                    continue;
                }
                let coeff = &x[i] * &y[j];
                self.accumulate_basis_bracket(&mut out, &coeff, i, j, p);
            }
        }
        out
    }

    /// Matrix of `ad x = [x, ·]`, column j = `[x, e_j]`.
    pub fn adjoint(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_vector(x)?;
        let columns: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.ad_basis(j, x).iter().map(Scalar::neg).collect())
            .collect();
        Ok(Matrix::from_columns(self.field, self.dim, columns)?)
    }

    /// Basis triples `i < j < k` whose Jacobiator is nonzero.
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut bad = Vec::new();
        let mut acc = zero_vector(self.field, n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let jk = &self.table[pair_index(n, j, k)];
                    let ik = &self.table[pair_index(n, i, k)];
                    let ij = &self.table[pair_index(n, i, j)];
                    if jk.is_empty() && ik.is_empty() && ij.is_empty() {
                        continue;
                    }
                    for x in acc.iter_mut() {
                        *x = self.field.zero();
                    }
                    // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
                    // with [e_k,e_i] = -[e_i,e_k].
                    self.accumulate_ad_terms(&mut acc, i, jk, false);
                    self.accumulate_ad_terms(&mut acc, j, ik, true);
                    self.accumulate_ad_terms(&mut acc, k, ij, false);
                    if !is_zero_vector(&acc) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    fn accumulate_ad_terms(&self, acc: &mut [Scalar], i: usize, terms: &[(usize, Scalar)], negate: bool) {
        for (l, c) in terms {
            if *l == i {
                continue;
            }
            let (lo, hi) = if i < *l { (i, *l) } else { (*l, i) };
            let p = pair_index(self.dim, lo, hi);
            if self.table[p].is_empty() {
                continue;
            }
            let coeff = if negate { c.neg() } else { c.clone() };
            self.accumulate_basis_bracket(acc, &coeff, i, *l, p);
        }
    }

    /// `L1 ⊕ L2`: the second summand's basis is shifted past the first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch {
                left: self.field,
                right: other.field,
            }
            .into());
        }
        let (n1, n) = (self.dim, self.dim + other.dim);
        let mut table = vec![Vec::new(); pair_count(n)];
        for (i, j, terms) in self.brackets() {
            table[pair_index(n, i, j)] = terms.to_vec();
        }
        for (i, j, terms) in other.brackets() {
            table[pair_index(n, n1 + i, n1 + j)] = terms.iter().map(|(k, c)| (n1 + k, c.clone())).collect();
        }
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(alloc::format!("{a} + {b}")),
            _ => None,
        };
        Ok(LieAlgebra::from_table(name, self.field, n, table))
    }

    pub(crate) fn check_subspace(&self, u: &Subspace) -> Result<()> {
        if u.ambient_dim() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: u.ambient_dim(),
            }
            .into());
        }
        if u.field() != self.field {
            return Err(FieldError::FieldMismatch {
                left: self.field,
                right: u.field(),
            }
            .into());
        }
        Ok(())
    }

    /// `[U, V]`, the span of all brackets of basis vectors of `u` and `v`.
    pub fn product_subspace(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut echelon = Echelon::new(self.field, self.dim);
        if u.is_full() {
            for w in v.basis_vectors() {
                for i in self.partner_support(w) {
                    echelon.insert(self.ad_basis(i, w));
                    if echelon.is_full() {
                        return Ok(echelon.into_subspace());
                    }
                }
            }
        } else {
            for a in u.basis_vectors() {
                for b in v.basis_vectors() {
                    echelon.insert(self.bracket_unchecked(a, b));
                }
            }
        }
        Ok(echelon.into_subspace())
    }

    /// `{x : [x, u] ∈ w for every u ∈ U}`.
    pub(crate) fn relative_centralizer(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let n = self.dim;
        let mut echelon = Echelon::new(self.field, n);
        for b in u.basis_vectors() {
            // Row r of the map x ↦ [x, b] mod W, built column by column.
            let mut rows: Vec<Option<Vec<Scalar>>> = vec![None; n];
            for i in self.partner_support(b) {
                let col = w.reduce(&self.ad_basis(i, b)).expect("ambient dimension checked");
                for (r, c) in col.into_iter().enumerate() {
                    if !c.is_zero() {
                        rows[r].get_or_insert_with(|| vec![self.field.zero(); n])[i] = c;
                    }
                }
            }
            for row in rows.into_iter().flatten() {
                echelon.insert(row);
                if echelon.is_full() {
                    return echelon.null_space();
                }
            }
        }
        echelon.null_space()
    }

    /// Indices `i` for which `[e_i, v]` can be nonzero, ascending.
    fn partner_support(&self, v: &[Scalar]) -> Vec<usize> {
        let mut hit = vec![false; self.dim];
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                for &(i, _) in &self.partners[j] {
                    hit[i] = true;
                }
            }
        }
        (0..self.dim).filter(|&i| hit[i]).collect()
    }

    /// Whether `[L, I] ⊆ I`.
    pub fn is_ideal(&self, ideal: &Subspace) -> Result<bool> {
        self.check_subspace(ideal)?;
        for b in ideal.basis_vectors() {
            for i in 0..self.dim {
                if !ideal.contains(&self.ad_basis(i, b))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `L / I` on the basis `e_c + I` for the columns `c` that are not pivots
    /// of `I`, together with the projection `L → L/I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Homomorphism)> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let n = self.dim;
        let pivots = ideal.pivots();
        let kept: Vec<usize> = (0..n).filter(|c| pivots.binary_search(c).is_err()).collect();
        let m = kept.len();
        let project = |x: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(x).expect("ambient dimension checked");
            kept.iter().map(|&c| r[c].clone()).collect()
        };
        let mut pairs = Vec::with_capacity(pair_count(m));
        for a in 0..m {
            for b in a + 1..m {
                pairs.push(project(&self.basis_bracket(kept[a], kept[b])));
            }
        }
        let quotient = LieAlgebra::from_dense_pairs(self.field, m, pairs);
        if let Some((i, j, k)) = quotient.check_jacobi().into_iter().next() {
            return Err(Error::NotALieAlgebra { i, j, k });
        }
        let matrix = Matrix::from_columns(
            self.field,
            m,
            (0..n).map(|i| project(&crate::linalg::unit_vector(self.field, n, i))),
        )?;
        let projection = Homomorphism {
            source: self.clone(),
            target: quotient.clone(),
            matrix,
        };
        Ok((quotient, projection))
    }

    /// The same algebra on the basis `f_i = P e_i` (the columns of `P`).
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: p.rows().max(p.cols()),
            }
            .into());
        }
        if p.field() != self.field {
            return Err(FieldError::FieldMismatch {
                left: self.field,
                right: p.field(),
            }
            .into());
        }
        let inverse = p.inverse()?;
        let n = self.dim;
        let columns: Vec<Vec<Scalar>> = (0..n).map(|c| p.column(c)).collect();
        let mut pairs = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                let image = self.bracket_unchecked(&columns[i], &columns[j]);
                pairs.push(inverse.mul_vec(&image)?);
            }
        }
        // Isomorphic to a validated algebra, so Jacobi holds.
        let mut out = LieAlgebra::from_dense_pairs(self.field, n, pairs);
        out.name = self.name.clone();
        Ok(out)
    }
}

fn sparse(v: &[Scalar]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// A linear map between algebras; column `i` of `matrix` is the image of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: LieAlgebra,
    target: LieAlgebra,
    matrix: Matrix,
}

impl Homomorphism {
    /// Validates shape and bracket preservation.
    pub fn new(source: LieAlgebra, target: LieAlgebra, matrix: Matrix) -> Result<Homomorphism> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            }
            .into());
        }
        let hom = Homomorphism { source, target, matrix };
        if !hom.is_bracket_preserving() {
            return Err(Error::NotAHomomorphism);
        }
        Ok(hom)
    }

    pub fn source(&self) -> &LieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &LieAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(self.matrix.mul_vec(x)?)
    }

    /// `φ([e_i, e_j]) = [φ(e_i), φ(e_j)]` for every basis pair.
    pub fn is_bracket_preserving(&self) -> bool {
        let n = self.source.dim();
        let m = self.target.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| self.matrix.column(i)).collect();
        for j in 0..n {
            // Column a is [e_a, φ(e_j)], so [φ(e_i), φ(e_j)] = Σ_a φ(e_i)_a · column a.
            let ad: Vec<Vec<Scalar>> = (0..m).map(|a| self.target.ad_basis(a, &images[j])).collect();
            for i in 0..j {
                let mut lhs = vec![self.target.field.zero(); m];
                for (k, c) in self.source.basis_bracket(i, j).iter().enumerate() {
                    axpy(&mut lhs, c, &images[k]);
                }
                let mut rhs = vec![self.target.field.zero(); m];
                for (a, x) in images[i].iter().enumerate() {
                    axpy(&mut rhs, x, &ad[a]);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.rank() == self.source.dim()
    }

    pub fn kernel(&self) -> Subspace {
        crate::linalg::kernel(&self.matrix)
    }
}
