//! Exact dense linear algebra over a [`FieldSpec`].
//!
//! Every [`Subspace`] stores its basis in reduced row-echelon form, so two
//! subspaces are equal exactly when their basis matrices are equal entry by
//! entry. All lattice operations (sum, intersection, complement, preimage)
//! return canonical subspaces.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{FieldError, FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inner subspace is not contained in the outer subspace")]
    NotContained,
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn check_len(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, found })
    }
}

fn check_field(expected: FieldSpec, found: FieldSpec) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(FieldError::FieldMismatch {
            left: expected,
            right: found,
        }
        .into())
    }
}

pub fn zero_vector(field: FieldSpec, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`.
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        yi.add_product(a, xi);
    }
}

pub fn scale(v: &mut [Scalar], a: &Scalar) {
    if a.is_one() {
        return;
    }
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x * a;
        }
    }
}

/// Dense row-major matrix whose entries share one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let x = f(r, c);
                assert_eq!(x.field(), field, "entry over the wrong field");
                data.push(x);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from row vectors of length `cols`.
    pub fn from_rows<R: AsRef<[Scalar]>>(
        field: FieldSpec,
        cols: usize,
        rows: impl IntoIterator<Item = R>,
    ) -> Result<Matrix, LinalgError> {
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            let row = row.as_ref();
            check_len(cols, row.len())?;
            for x in row {
                check_field(field, x.field())?;
            }
            data.extend_from_slice(row);
            count += 1;
        }
        Ok(Matrix {
            field,
            rows: count,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns<C: AsRef<[Scalar]>>(
        field: FieldSpec,
        rows: usize,
        columns: impl IntoIterator<Item = C>,
    ) -> Result<Matrix, LinalgError> {
        Ok(Matrix::from_rows(field, rows, columns)?.transpose())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        assert_eq!(x.field(), self.field, "entry over the wrong field");
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        check_field(self.field, other.field)?;
        check_len(self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let start = r * out.cols;
                axpy(&mut out.data[start..start + other.cols], a, other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        check_len(self.cols, v.len())?;
        if let Some(x) = v.first() {
            check_field(self.field, x.field())?;
        }
        Ok(self
            .row_iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (a, b) in row.iter().zip(v) {
                    acc.add_product(a, b);
                }
                acc
            })
            .collect())
    }

    /// Reduced row-echelon form and its pivot columns (0-based, increasing).
    ///
    /// Zero rows are kept at the bottom so the shape is unchanged.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).inv().expect("pivot is nonzero");
            scale(m.row_mut(lead), &inv);
            let pivot_row: Vec<Scalar> = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c).neg();
                if !factor.is_zero() {
                    axpy(m.row_mut(r), &factor, &pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut echelon = Echelon::new(self.field, self.cols);
        for row in self.row_iter() {
            echelon.insert(row.to_vec());
        }
        echelon.rank()
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        check_len(self.rows, self.cols)?;
        let n = self.rows;
        let augmented = Matrix::from_fn(self.field, n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (reduced, pivots) = augmented.rref();
        if pivots.iter().filter(|&&p| p < n).count() < n {
            return Err(LinalgError::Singular);
        }
        Ok(Matrix::from_fn(self.field, n, n, |r, c| {
            reduced.get(r, n + c).clone()
        }))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            f.write_str("[")?;
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Incrementally maintained reduced row-echelon basis.
///
/// Inserting a vector costs O(rank · n), which keeps kernels of tall,
/// mostly redundant constraint systems (such as the stacked adjoint maps
/// behind the center) cheap.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ambient: usize,
    // Sorted by pivot; each row has a 1 at its pivot and 0 at every other pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ambient: usize) -> Echelon {
        Echelon {
            field,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Reduces `v` against the current rows in place; the remainder is zero
    /// at every pivot column.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let factor = v[*p].neg();
                axpy(v, &factor, row);
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("leading entry is nonzero");
        scale(&mut v, &inv);
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let factor = row[p].neg();
                axpy(row, &factor, &v);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let basis = Matrix::from_rows(self.field, self.ambient, self.rows.iter().map(|(_, r)| r))
            .expect("rows have ambient length");
        Subspace {
            basis,
            pivots: self.rows.iter().map(|(p, _)| *p).collect(),
        }
    }

    /// Basis of `{x : r · x = 0 for every row r}`.
    pub fn null_space(&self) -> Subspace {
        let n = self.ambient;
        let mut pivot_of = vec![None; n];
        for (idx, (p, _)) in self.rows.iter().enumerate() {
            pivot_of[*p] = Some(idx);
        }
        let mut out = Echelon::new(self.field, n);
        for f in (0..n).filter(|c| pivot_of[*c].is_none()) {
            let mut x = unit_vector(self.field, n, f);
            for (p, row) in &self.rows {
                x[*p] = row[f].neg();
            }
            out.insert(x);
        }
        out.into_subspace()
    }
}

/// A subspace of `field^ambient` held by its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    // Leading column of each basis row, increasing.
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<V: AsRef<[Scalar]>>(
        field: FieldSpec,
        ambient: usize,
        vectors: impl IntoIterator<Item = V>,
    ) -> Result<Subspace, LinalgError> {
        let mut echelon = Echelon::new(field, ambient);
        for v in vectors {
            let v = v.as_ref();
            check_len(ambient, v.len())?;
            for x in v {
                check_field(field, x.field())?;
            }
            echelon.insert(v.to_vec());
        }
        Ok(echelon.into_subspace())
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        self.basis.row_iter()
    }

    /// Pivot column of each basis row, increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon {
        Echelon {
            field: self.field(),
            ambient: self.ambient_dim(),
            rows: self.pivots.iter().copied().zip(self.basis.row_iter().map(<[Scalar]>::to_vec)).collect(),
        }
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        check_field(self.field(), other.field())?;
        check_len(self.ambient_dim(), other.ambient_dim())
    }

    /// The remainder of `x` modulo this subspace: zero at every pivot column.
    pub fn reduce(&self, x: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        check_len(self.ambient_dim(), x.len())?;
        let mut v = x.to_vec();
        for (&p, row) in self.pivots.iter().zip(self.basis.row_iter()) {
            if !v[p].is_zero() {
                let factor = v[p].neg();
                axpy(&mut v, &factor, row);
            }
        }
        Ok(v)
    }

    pub fn contains(&self, x: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(is_zero_vector(&self.reduce(x)?))
    }

    /// Coordinates of `x` in the echelon basis, or `None` if `x` lies outside.
    pub fn coordinates(&self, x: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if !self.contains(x)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| x[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        for v in self.basis_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let mut echelon = self.echelon();
        for v in other.basis_vectors() {
            echelon.insert(v.to_vec());
        }
        Ok(echelon.into_subspace())
    }

    /// Intersection via the kernel of the stacked bases: coefficient vectors
    /// `(a, b)` with `a·U = b·V` give exactly the common vectors `a·U`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let (a, b, n) = (self.dim(), other.dim(), self.ambient_dim());
        let field = self.field();
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(field, n));
        }
        // Column j of the stacked system is basis vector j (u's then -v's).
        let stacked = Matrix::from_fn(field, n, a + b, |r, c| {
            if c < a {
                self.basis.get(c, r).clone()
            } else {
                other.basis.get(c - a, r).neg()
            }
        });
        let relations = kernel(&stacked);
        let mut echelon = Echelon::new(field, n);
        for coeffs in relations.basis_vectors() {
            let mut v = zero_vector(field, n);
            for (i, c) in coeffs[..a].iter().enumerate() {
                axpy(&mut v, c, self.basis.row(i));
            }
            echelon.insert(v);
        }
        Ok(echelon.into_subspace())
    }

    /// A direct complement of `self` inside `outer`: the echelon rows of
    /// `outer` whose pivot columns are not pivots of `self`, in increasing
    /// pivot order.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(outer)?;
        if !self.is_subspace_of(outer)? {
            return Err(LinalgError::NotContained);
        }
        let inner_pivots = self.pivots();
        let (pivots, rows): (Vec<usize>, Vec<&[Scalar]>) = outer
            .pivots
            .iter()
            .zip(outer.basis_vectors())
            .filter(|(p, _)| inner_pivots.binary_search(p).is_err())
            .map(|(p, r)| (*p, r))
            .unzip();
        // Leading columns are distinct and increasing, and each row is zero
        // at the other outer pivots, so these rows are already canonical.
        let basis = Matrix::from_rows(self.field(), self.ambient_dim(), rows)?;
        Ok(Subspace { basis, pivots })
    }

    /// Vectors `y` with `y · b = 0` for every basis vector `b`.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// `{x : m·x ∈ w}`.
    pub fn preimage(m: &Matrix, w: &Subspace) -> Result<Subspace, LinalgError> {
        check_field(m.field(), w.field())?;
        check_len(m.rows(), w.ambient_dim())?;
        let constraints = w.annihilator();
        let mut echelon = Echelon::new(m.field(), m.cols());
        for y in constraints.basis_vectors() {
            let mut row = zero_vector(m.field(), m.cols());
            for (r, coeff) in y.iter().enumerate() {
                axpy(&mut row, coeff, m.row(r));
            }
            echelon.insert(row);
        }
        Ok(echelon.null_space())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, row) in self.basis_vectors().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

/// `{x : m·x = 0}` as a canonical subspace of `field^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let mut echelon = Echelon::new(m.field(), m.cols());
    for row in m.row_iter() {
        echelon.insert(row.to_vec());
    }
    echelon.null_space()
}

pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    m.rref()
}
