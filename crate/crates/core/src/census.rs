//! Exhaustive enumeration of structure tensors over a small prime field.
//!
//! A tensor on `n` generators assigns `[e_i, e_j] = Σ_k c_{ij}^k e_k` for every
//! pair `i < j`. Its id is the base-`p` number whose digit at position
//! `pair_index(i, j) · n + k` is `c_{ij}^k` (least significant digit first),
//! so pairs run `(1,2), (1,3), …, (n−1,n)` and each contributes `n` digits.
//!
//! Jacobi and nilpotency are decided on small residue arrays; only nilpotent
//! tensors are handed to the exact pipeline.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::algebra::{pair_count, pair_index, LieAlgebra};
use crate::classify::{classify_t012, Verdict};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::invariants;

/// Largest dimension the residue evaluator handles.
pub const MAX_DIM: usize = 8;
const MAX_DIGITS: usize = MAX_DIM * (MAX_DIM * (MAX_DIM - 1) / 2);

/// Candidate count allowed without the override flag: `2^24`, the GF(2)
/// dimension-4 census.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

pub fn digit_count(n: usize) -> usize {
    n * pair_count(n)
}

/// `p^(n·C(n,2))`, or `None` past `u128`.
pub fn candidate_count(n: usize, field: FieldSpec) -> Option<u128> {
    let p = field.modulus()? as u128;
    let mut total: u128 = 1;
    for _ in 0..digit_count(n) {
        total = total.checked_mul(p)?;
    }
    Some(total)
}

fn modulus_of(field: FieldSpec) -> Result<u32> {
    match field.modulus() {
        Some(p) if p <= u8::MAX as u32 => Ok(p),
        _ => Err(Error::UnsupportedField(field)),
    }
}

/// Checks the budget guard and returns the number of candidates.
pub fn check_budget(n: usize, field: FieldSpec, force: bool) -> Result<u64> {
    modulus_of(field)?;
    if n > MAX_DIM {
        return Err(Error::BudgetExceeded {
            candidates: candidate_count(n, field).unwrap_or(u128::MAX),
        });
    }
    let candidates = candidate_count(n, field).unwrap_or(u128::MAX);
    if candidates > DEFAULT_BUDGET && !force {
        return Err(Error::BudgetExceeded { candidates });
    }
    u64::try_from(candidates).map_err(|_| Error::BudgetExceeded { candidates })
}

/// Digits of `id`, least significant first.
pub fn decode(n: usize, field: FieldSpec, mut id: u64) -> Result<Vec<u8>> {
    let p = modulus_of(field)? as u64;
    let mut digits = vec![0u8; digit_count(n)];
    for d in digits.iter_mut() {
        *d = (id % p) as u8;
        id /= p;
    }
    if id != 0 {
        return Err(Error::IndexOutOfRange {
            index: digit_count(n),
            dim: digit_count(n),
        });
    }
    Ok(digits)
}

pub fn encode(field: FieldSpec, digits: &[u8]) -> Result<u64> {
    let p = modulus_of(field)? as u64;
    let mut id: u64 = 0;
    for &d in digits.iter().rev() {
        if d as u64 >= p {
            return Err(Error::Field(crate::field::FieldError::Parse {
                text: alloc::format!("{d}"),
                field,
                reason: "digit out of range",
            }));
        }
        id = id
            .checked_mul(p)
            .and_then(|v| v.checked_add(d as u64))
            .ok_or(Error::BudgetExceeded { candidates: u128::MAX })?;
    }
    Ok(id)
}

/// The bracket table a tensor id describes, validated as a Lie algebra.
pub fn tensor_algebra(n: usize, field: FieldSpec, id: u64) -> Result<LieAlgebra> {
    let digits = decode(n, field, id)?;
    let mut brackets = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            let base = pair_index(n, i, j) * n;
            let rhs = (0..n)
                .filter(|&k| digits[base + k] != 0)
                .map(|k| (k, Scalar::from_int(field, digits[base + k] as i64)));
            brackets.push(crate::algebra::BracketSpec::new(i, j, rhs));
        }
    }
    LieAlgebra::new(field, n, brackets)
}

fn dense_algebra(n: usize, field: FieldSpec, digits: &[u8]) -> LieAlgebra {
    let pairs = digits
        .chunks(n.max(1))
        .take(pair_count(n))
        .map(|chunk| chunk.iter().map(|&d| Scalar::from_int(field, d as i64)).collect())
        .collect();
    LieAlgebra::from_dense_pairs(field, n, pairs)
}

type Vector = [u8; MAX_DIM];

/// Residue arithmetic on one tensor.
struct Evaluator<'a> {
    n: usize,
    p: u32,
    digits: &'a [u8],
}

impl Evaluator<'_> {
    /// `[v, e_b]`.
    fn bracket_with_basis(&self, v: &Vector, b: usize) -> Vector {
        let n = self.n;
        let p = self.p;
        let mut acc = [0u32; MAX_DIM];
        for (m, &vm) in v.iter().enumerate().take(n) {
            if vm == 0 || m == b {
                continue;
            }
            // [e_m, e_b] = c_{mb} or −c_{bm}.
            let (lo, hi, flip) = if m < b { (m, b, false) } else { (b, m, true) };
            let base = pair_index(n, lo, hi) * n;
            let coeff = if flip { p - vm as u32 } else { vm as u32 };
            for (k, a) in acc.iter_mut().enumerate().take(n) {
                *a += coeff * self.digits[base + k] as u32;
            }
        }
        let mut out = [0u8; MAX_DIM];
        for k in 0..n {
            out[k] = (acc[k] % p) as u8;
        }
        out
    }

    fn basis_pair(&self, i: usize, j: usize) -> Vector {
        let base = pair_index(self.n, i, j) * self.n;
        let mut out = [0u8; MAX_DIM];
        out[..self.n].copy_from_slice(&self.digits[base..base + self.n]);
        out
    }

    fn is_lie(&self) -> bool {
        let n = self.n;
        let p = self.p;
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.basis_pair(i, j);
                for k in j + 1..n {
                    let a = self.bracket_with_basis(&ij, k);
                    let b = self.bracket_with_basis(&self.basis_pair(j, k), i);
                    // [[e_k, e_i], e_j] = −[[e_i, e_k], e_j]
                    let c = self.bracket_with_basis(&self.basis_pair(i, k), j);
                    for m in 0..n {
                        let s = a[m] as u32 + b[m] as u32 + (p - c[m] as u32);
                        if s % p != 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Runs the lower central series on residue vectors; `true` once it hits 0.
    fn is_nilpotent(&self) -> bool {
        let n = self.n;
        let mut span = SmallSpan::new(n, self.p);
        for i in 0..n {
            for j in i + 1..n {
                span.insert(self.basis_pair(i, j));
            }
        }
        let mut previous = n;
        while span.rank > 0 {
            if span.rank >= previous {
                return false;
            }
            previous = span.rank;
            let mut next = SmallSpan::new(n, self.p);
            for r in 0..span.rank {
                for b in 0..n {
                    next.insert(self.bracket_with_basis(&span.rows[r], b));
                }
            }
            span = next;
        }
        true
    }
}

/// Echelon rows over GF(p), one pivot per row.
struct SmallSpan {
    n: usize,
    p: u32,
    rows: [Vector; MAX_DIM],
    pivots: [usize; MAX_DIM],
    rank: usize,
}

impl SmallSpan {
    fn new(n: usize, p: u32) -> Self {
        SmallSpan {
            n,
            p,
            rows: [[0; MAX_DIM]; MAX_DIM],
            pivots: [0; MAX_DIM],
            rank: 0,
        }
    }

    fn insert(&mut self, mut v: Vector) {
        let p = self.p;
        for r in 0..self.rank {
            let c = v[self.pivots[r]] as u32;
            if c != 0 {
                for k in 0..self.n {
                    v[k] = ((v[k] as u32 + (p - c) * self.rows[r][k] as u32) % p) as u8;
                }
            }
        }
        let Some(pivot) = (0..self.n).find(|&k| v[k] != 0) else {
            return;
        };
        let inv = inverse_mod(v[pivot] as u32, p);
        for x in v.iter_mut().take(self.n) {
            *x = ((*x as u32 * inv) % p) as u8;
        }
        self.rows[self.rank] = v;
        self.pivots[self.rank] = pivot;
        self.rank += 1;
    }
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("p is prime and a ≠ 0")
}

/// One nilpotent tensor and its invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CensusRow {
    pub tensor_id: u64,
    pub n: usize,
    pub dim_derived: usize,
    pub dim_center: usize,
    pub dim_central_quotient: usize,
    /// `d(L/Z(L))`.
    pub d: usize,
    pub t: i64,
    pub verdict: Verdict,
}

impl CensusRow {
    pub const CSV_HEADER: &'static str = "tensor_id,n,dim_derived,dim_center,d,t,verdict";

    pub fn csv_line(&self) -> alloc::string::String {
        alloc::format!(
            "{},{},{},{},{},{},{}",
            self.tensor_id, self.n, self.dim_derived, self.dim_center, self.d, self.t, self.verdict
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusSummary {
    pub n: usize,
    pub field: FieldSpec,
    pub candidates: u64,
    pub lie_algebras: u64,
    pub nilpotent: u64,
    pub t_counts: BTreeMap<i64, u64>,
    pub rows: Vec<CensusRow>,
}

impl CensusSummary {
    pub fn empty(n: usize, field: FieldSpec) -> Self {
        CensusSummary {
            n,
            field,
            candidates: 0,
            lie_algebras: 0,
            nilpotent: 0,
            t_counts: BTreeMap::new(),
            rows: Vec::new(),
        }
    }

    /// Appends a summary covering the ids right after this one's.
    pub fn merge(&mut self, later: CensusSummary) {
        self.candidates += later.candidates;
        self.lie_algebras += later.lie_algebras;
        self.nilpotent += later.nilpotent;
        for (t, c) in later.t_counts {
            *self.t_counts.entry(t).or_insert(0) += c;
        }
        self.rows.extend(later.rows);
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &CensusRow> {
        self.rows.iter().filter(|r| r.verdict.is_counterexample())
    }
}

fn row_for(n: usize, field: FieldSpec, id: u64, digits: &[u8]) -> Result<CensusRow> {
    let l = dense_algebra(n, field, digits);
    let derived = invariants::derived_subalgebra(&l);
    let center = invariants::center(&l);
    let d = n - derived.sum(&center)?.dim();
    let result = classify_t012(&l)?;
    Ok(CensusRow {
        tensor_id: id,
        n,
        dim_derived: derived.dim(),
        dim_center: center.dim(),
        dim_central_quotient: n - center.dim(),
        d,
        t: result.t,
        verdict: result.verdict,
    })
}

/// Enumerates the ids in `range`, calling `consumer` on each nilpotent row
/// in id order. No budget check.
pub fn enumerate_range<F: FnMut(&CensusRow)>(
    n: usize,
    field: FieldSpec,
    range: Range<u64>,
    mut consumer: F,
) -> Result<CensusSummary> {
    let p = modulus_of(field)?;
    if n > MAX_DIM {
        return Err(Error::BudgetExceeded {
            candidates: candidate_count(n, field).unwrap_or(u128::MAX),
        });
    }
    let mut summary = CensusSummary::empty(n, field);
    if range.start >= range.end {
        return Ok(summary);
    }
    let mut digits_buf = [0u8; MAX_DIGITS];
    let digits = &mut digits_buf[..digit_count(n)];
    digits.copy_from_slice(&decode(n, field, range.start)?);
    let top = p as u8;
    for id in range {
        let eval = Evaluator { n, p, digits };
        summary.candidates += 1;
        if eval.is_lie() {
            summary.lie_algebras += 1;
            if eval.is_nilpotent() {
                summary.nilpotent += 1;
                let row = row_for(n, field, id, digits)?;
                *summary.t_counts.entry(row.t).or_insert(0) += 1;
                consumer(&row);
                summary.rows.push(row);
            }
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < top {
                break;
            }
            *d = 0;
        }
    }
    Ok(summary)
}

/// The full census on `n` generators, behind the budget guard.
pub fn enumerate_algebras<F: FnMut(&CensusRow)>(
    n: usize,
    field: FieldSpec,
    force: bool,
    consumer: F,
) -> Result<CensusSummary> {
    let total = check_budget(n, field, force)?;
    enumerate_range(n, field, 0..total, consumer)
}

/// Splits `0..total` into at most `parts` contiguous ranges whose boundaries
/// fix the high digits of the id.
pub fn partition(n: usize, field: FieldSpec, parts: usize) -> Result<Vec<Range<u64>>> {
    let p = modulus_of(field)? as u64;
    let total = u64::try_from(candidate_count(n, field).unwrap_or(u128::MAX))
        .map_err(|_| Error::BudgetExceeded { candidates: u128::MAX })?;
    let parts = parts.max(1) as u64;
    // Smallest block p^s with at most 4·parts blocks of high-digit prefixes.
    let mut block = 1u64;
    let mut digits = 0;
    while digits < digit_count(n) && total / block > 4 * parts {
        block *= p;
        digits += 1;
    }
    let blocks = total / block;
    let mut ranges = Vec::new();
    let mut start_block = 0;
    for i in 0..parts.min(blocks.max(1)) {
        let end_block = blocks * (i + 1) / parts.min(blocks.max(1));
        if end_block > start_block {
            ranges.push(start_block * block..(end_block * block).min(total));
        }
        start_block = end_block;
    }
    if ranges.is_empty() {
        ranges.push(0..total);
    }
    Ok(ranges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    NegativeDefect,
    /// `dim L² ≥ 2` but `t < 1`.
    Derived2,
    /// `dim L² ≥ 3` but `t < 2`.
    Derived3,
    /// `dim L² ≥ 4` but `t < 3`.
    Derived4,
    Moneyhun,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub tensor_id: u64,
    pub kind: BoundKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerificationVerdict {
    Pass,
    Fail(Vec<BoundViolation>),
}

impl VerificationVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, VerificationVerdict::Pass)
    }
}

pub fn violations(row: &CensusRow) -> Vec<BoundKind> {
    let mut out = Vec::new();
    let t = row.t;
    if t < 0 {
        out.push(BoundKind::NegativeDefect);
    }
    if row.dim_derived >= 2 && t < 1 {
        out.push(BoundKind::Derived2);
    }
    if row.dim_derived >= 3 && t < 2 {
        out.push(BoundKind::Derived3);
    }
    if row.dim_derived >= 4 && t < 3 {
        out.push(BoundKind::Derived4);
    }
    let q = row.dim_central_quotient;
    if 2 * row.dim_derived > q * q.saturating_sub(1) {
        out.push(BoundKind::Moneyhun);
    }
    if row.verdict.is_counterexample() {
        out.push(BoundKind::Counterexample);
    }
    out
}

pub fn verify_bounds(census: &CensusSummary) -> VerificationVerdict {
    let failures: Vec<BoundViolation> = census
        .rows
        .iter()
        .flat_map(|row| {
            violations(row).into_iter().map(move |kind| BoundViolation {
                tensor_id: row.tensor_id,
                kind,
            })
        })
        .collect();
    if failures.is_empty() {
        VerificationVerdict::Pass
    } else {
        VerificationVerdict::Fail(failures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn dimension_two_over_gf2() {
        let s = enumerate_algebras(2, gf(2), false, |_| {}).unwrap();
        assert_eq!(s.candidates, 4);
        assert_eq!(s.lie_algebras, 4);
        assert_eq!(s.nilpotent, 1);
        assert_eq!(s.rows[0].tensor_id, 0);
        assert_eq!(s.rows[0].t, 0);
        assert_eq!(s.rows[0].verdict, Verdict::Abelian(2));
    }

    #[test]
    fn digit_layout_is_little_endian_over_pairs() {
        // [e1, e3] = e2 in dimension 3: pair (1,3) has index 1, so digit 1·3 + 1.
        let l = tensor_algebra(3, gf(2), 1 << 4).unwrap();
        assert_eq!(l.basis_bracket(0, 2), vec![gf(2).zero(), gf(2).one(), gf(2).zero()]);
        assert_eq!(encode(gf(3), &decode(3, gf(3), 12345).unwrap()).unwrap(), 12345);
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            enumerate_algebras(5, gf(2), false, |_| {}),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(check_budget(4, gf(3), false), Err(Error::BudgetExceeded { .. })));
        assert_eq!(check_budget(3, gf(3), false).unwrap(), 19_683);
        assert!(matches!(check_budget(3, FieldSpec::rational(), true), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn partitions_cover_everything() {
        for parts in [1, 2, 3, 4, 7, 64] {
            let ranges = partition(3, gf(2), parts).unwrap();
            assert!(ranges.len() <= parts);
            assert_eq!(ranges[0].start, 0);
            assert_eq!(ranges.last().unwrap().end, 512);
            for w in ranges.windows(2) {
                assert_eq!(w[0].end, w[1].start);
            }
        }
    }

    #[test]
    fn mutated_row_fails_verification() {
        let mut s = enumerate_algebras(3, gf(2), false, |_| {}).unwrap();
        assert!(verify_bounds(&s).passed());
        let target = s.rows[3].tensor_id;
        s.rows[3].t = -1;
        match verify_bounds(&s) {
            VerificationVerdict::Fail(v) => {
                assert!(v.iter().all(|f| f.tensor_id == target));
                assert!(v.iter().any(|f| f.kind == BoundKind::NegativeDefect));
            }
            VerificationVerdict::Pass => panic!("mutation not detected"),
        }
    }
}
