//! Named algebras: `A(n)`, `H(m)`, the filiform family `F(t)`, and the
//! nilpotent algebras of dimension at most 6 with `dim L² ≥ 2`, including the
//! characteristic-2 list.
//!
//! Keys: `A<n>`, `H<m>`, `F<t>`, `L<d>_<k>` (for example `L5_6`) and
//! `L2_6_<k>` for the characteristic-2 family. Parameters (ε or η) are passed
//! separately and used verbatim; no normalization up to equivalence is done.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{BracketSpec, LieAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldConstraint {
    Any,
    NotChar2,
    Char2,
}

impl FieldConstraint {
    pub fn admits(self, field: FieldSpec) -> bool {
        match self {
            FieldConstraint::Any => true,
            FieldConstraint::NotChar2 => field.characteristic() != 2,
            FieldConstraint::Char2 => field.characteristic() == 2,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            FieldConstraint::Any => "any field",
            FieldConstraint::NotChar2 => "characteristic not 2",
            FieldConstraint::Char2 => "characteristic 2",
        }
    }
}

impl fmt::Display for FieldConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamKind {
    None,
    /// ε ranging over the nonzero scalars.
    NonzeroEpsilon,
    /// ε ranging over all scalars.
    Epsilon,
    /// η ∈ {0, ω}.
    Eta,
}

impl ParamKind {
    pub fn count(self) -> usize {
        match self {
            ParamKind::None => 0,
            _ => 1,
        }
    }

    pub fn symbol(self) -> Option<&'static str> {
        match self {
            ParamKind::None => None,
            ParamKind::NonzeroEpsilon | ParamKind::Epsilon => Some("eps"),
            ParamKind::Eta => Some("eta"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Coef {
    Int(i64),
    Param,
}

const ONE: Coef = Coef::Int(1);
const PARAM: Coef = Coef::Param;

// 1-based (i, j, [(k, c)]) as written in the presentations.
type Rel = (usize, usize, &'static [(usize, Coef)]);

/// A tabulated presentation together with its `(dim L/Z, d(L/Z), dim L²)` row.
#[derive(Debug)]
pub struct Presentation {
    pub key: &'static str,
    pub dim: usize,
    pub params: ParamKind,
    pub constraint: FieldConstraint,
    pub row: (usize, usize, usize),
    relations: &'static [Rel],
}

macro_rules! pres {
    ($key:literal, $dim:literal, $params:ident, $constraint:ident, $row:expr, [$(($i:literal, $j:literal) => [$(($k:literal, $c:expr)),+]),* $(,)?]) => {
        Presentation {
            key: $key,
            dim: $dim,
            params: ParamKind::$params,
            constraint: FieldConstraint::$constraint,
            row: $row,
            relations: &[$(($i, $j, &[$(($k, $c)),+])),*],
        }
    };
}

/// Every tabulated presentation, in table order.
pub static PRESENTATIONS: &[Presentation] = &[
    pres!("L4_3", 4, None, Any, (3, 2, 2), [(1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)]]),
    pres!("L5_3", 5, None, Any, (3, 2, 2), [(1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)]]),
    pres!("L5_5", 5, None, Any, (4, 3, 2), [(1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (2, 4) => [(5, ONE)]]),
    pres!("L5_6", 5, None, Any, (4, 2, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (2, 3) => [(5, ONE)],
    ]),
    pres!("L5_7", 5, None, Any, (4, 2, 3), [(1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)]]),
    pres!("L5_8", 5, None, Any, (3, 3, 2), [(1, 2) => [(4, ONE)], (1, 3) => [(5, ONE)]]),
    pres!("L5_9", 5, None, Any, (3, 2, 3), [(1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (2, 3) => [(5, ONE)]]),
    pres!("L6_3", 6, None, NotChar2, (3, 2, 2), [(1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)]]),
    pres!("L6_5", 6, None, NotChar2, (4, 3, 2), [(1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (2, 4) => [(5, ONE)]]),
    pres!("L6_6", 6, None, NotChar2, (4, 2, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (2, 3) => [(5, ONE)],
    ]),
    pres!("L6_7", 6, None, NotChar2, (4, 2, 3), [(1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)]]),
    pres!("L6_8", 6, None, NotChar2, (3, 3, 2), [(1, 2) => [(4, ONE)], (1, 3) => [(5, ONE)]]),
    pres!("L6_9", 6, None, NotChar2, (3, 2, 3), [(1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (2, 3) => [(5, ONE)]]),
    pres!("L6_10", 6, None, NotChar2, (5, 4, 2), [(1, 2) => [(3, ONE)], (1, 3) => [(6, ONE)], (4, 5) => [(6, ONE)]]),
    pres!("L6_11", 6, None, NotChar2, (5, 3, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(6, ONE)], (2, 3) => [(6, ONE)],
        (2, 5) => [(6, ONE)],
    ]),
    pres!("L6_12", 6, None, NotChar2, (5, 3, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(6, ONE)], (2, 5) => [(6, ONE)],
    ]),
    pres!("L6_13", 6, None, NotChar2, (5, 3, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (2, 4) => [(5, ONE)], (1, 5) => [(6, ONE)],
        (3, 4) => [(6, ONE)],
    ]),
    pres!("L6_14", 6, None, NotChar2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (2, 3) => [(5, ONE)],
        (2, 5) => [(6, ONE)], (3, 4) => [(6, Coef::Int(-1))],
    ]),
    pres!("L6_15", 6, None, NotChar2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (2, 3) => [(5, ONE)],
        (1, 5) => [(6, ONE)], (2, 4) => [(6, ONE)],
    ]),
    pres!("L6_16", 6, None, NotChar2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (2, 5) => [(6, ONE)],
        (3, 4) => [(6, Coef::Int(-1))],
    ]),
    pres!("L6_17", 6, None, NotChar2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (1, 5) => [(6, ONE)],
        (2, 3) => [(6, ONE)],
    ]),
    pres!("L6_18", 6, None, NotChar2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (1, 5) => [(6, ONE)],
    ]),
    pres!("L6_19", 6, NonzeroEpsilon, NotChar2, (5, 3, 3), [
        (1, 2) => [(4, ONE)], (1, 3) => [(5, ONE)], (1, 5) => [(6, ONE)], (2, 4) => [(6, ONE)],
        (3, 5) => [(6, PARAM)],
    ]),
    pres!("L6_20", 6, None, NotChar2, (5, 3, 3), [
        (1, 2) => [(4, ONE)], (1, 3) => [(5, ONE)], (1, 5) => [(6, ONE)], (2, 4) => [(6, ONE)],
    ]),
    pres!("L6_21", 6, NonzeroEpsilon, NotChar2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (2, 3) => [(5, ONE)], (1, 4) => [(6, ONE)],
        (2, 5) => [(6, PARAM)],
    ]),
    pres!("L6_22", 6, Epsilon, NotChar2, (4, 4, 2), [
        (1, 2) => [(5, ONE)], (1, 3) => [(6, ONE)], (2, 4) => [(6, PARAM)], (3, 4) => [(5, ONE)],
    ]),
    pres!("L6_23", 6, None, NotChar2, (4, 3, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (1, 4) => [(6, ONE)], (2, 4) => [(5, ONE)],
    ]),
    pres!("L6_24", 6, Epsilon, NotChar2, (4, 3, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (1, 4) => [(6, PARAM)], (2, 3) => [(6, ONE)],
        (2, 4) => [(5, ONE)],
    ]),
    pres!("L6_25", 6, None, NotChar2, (4, 3, 3), [(1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (1, 4) => [(6, ONE)]]),
    pres!("L6_26", 6, None, NotChar2, (3, 3, 3), [(1, 2) => [(4, ONE)], (1, 3) => [(5, ONE)], (2, 3) => [(6, ONE)]]),
    pres!("L6_27", 6, None, NotChar2, (4, 3, 3), [(1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (2, 4) => [(6, ONE)]]),
    pres!("L6_28", 6, None, NotChar2, (4, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (2, 3) => [(6, ONE)],
    ]),
    pres!("L2_6_1", 6, None, Char2, (5, 3, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (1, 5) => [(6, ONE)], (2, 4) => [(5, ONE), (6, ONE)],
        (3, 4) => [(6, ONE)],
    ]),
    pres!("L2_6_2", 6, None, Char2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (1, 5) => [(6, ONE)],
        (2, 3) => [(5, ONE), (6, ONE)], (2, 4) => [(6, ONE)],
    ]),
    pres!("L2_6_3", 6, NonzeroEpsilon, Char2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (2, 3) => [(5, ONE), (6, PARAM)],
        (2, 5) => [(6, ONE)], (3, 4) => [(6, ONE)],
    ]),
    pres!("L2_6_4", 6, NonzeroEpsilon, Char2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 4) => [(5, ONE)], (2, 3) => [(6, PARAM)],
        (2, 5) => [(6, ONE)], (3, 4) => [(6, ONE)],
    ]),
    pres!("L2_6_5", 6, None, Char2, (5, 3, 3), [
        (1, 2) => [(4, ONE)], (1, 3) => [(5, ONE)], (2, 5) => [(6, ONE)], (3, 4) => [(6, ONE)],
    ]),
    pres!("L2_6_6", 6, None, Char2, (5, 2, 4), [
        (1, 2) => [(3, ONE)], (1, 3) => [(4, ONE)], (1, 5) => [(6, ONE)], (2, 3) => [(5, ONE)],
        (2, 4) => [(6, ONE)],
    ]),
    pres!("L2_6_7", 6, Eta, Char2, (4, 4, 2), [
        (1, 2) => [(5, ONE)], (1, 3) => [(6, ONE)], (2, 4) => [(6, PARAM)], (3, 4) => [(5, ONE), (6, ONE)],
    ]),
    pres!("L2_6_8", 6, Eta, Char2, (4, 3, 3), [
        (1, 2) => [(3, ONE)], (1, 3) => [(5, ONE)], (1, 4) => [(6, PARAM)], (2, 3) => [(6, ONE)],
        (2, 4) => [(5, ONE), (6, ONE)],
    ]),
];

pub fn presentation(key: &str) -> Option<&'static Presentation> {
    PRESENTATIONS.iter().find(|p| p.key == key)
}

impl Presentation {
    /// Builds the algebra over `field` with the given parameters, checking the
    /// field constraint and the parameter count.
    pub fn build(&self, field: FieldSpec, params: &[Scalar]) -> Result<LieAlgebra> {
        if !self.constraint.admits(field) {
            return Err(Error::FieldConstraint {
                key: self.key.to_string(),
                field,
                constraint: self.constraint.describe(),
            });
        }
        self.build_ungated(field, params)
    }

    /// As [`Presentation::build`] but without the characteristic gate.
    pub fn build_ungated(&self, field: FieldSpec, params: &[Scalar]) -> Result<LieAlgebra> {
        let expected = self.params.count();
        if params.len() != expected {
            return Err(Error::ParameterCount {
                key: self.key.to_string(),
                expected,
                found: params.len(),
            });
        }
        for p in params {
            if p.field() != field {
                return Err(crate::field::FieldError::FieldMismatch {
                    left: field,
                    right: p.field(),
                }
                .into());
            }
        }
        if self.params == ParamKind::NonzeroEpsilon && params[0].is_zero() {
            return Err(Error::ZeroParameter {
                key: self.key.to_string(),
            });
        }
        let brackets = self.relations.iter().map(|(i, j, rhs)| {
            BracketSpec::new(
                i - 1,
                j - 1,
                rhs.iter().map(|(k, c)| {
                    let value = match c {
                        Coef::Int(v) => field.from_int(*v),
                        Coef::Param => params[0].clone(),
                    };
                    (k - 1, value)
                }),
            )
        });
        let name = instance_name(self.key, params);
        Ok(LieAlgebra::new(field, self.dim, brackets)?.with_name(name))
    }
}

fn instance_name(key: &str, params: &[Scalar]) -> String {
    match params {
        [] => key.to_string(),
        [p] => format!("{key}({p})"),
        _ => {
            let parts: Vec<String> = params.iter().map(|p| p.to_string()).collect();
            format!("{key}({})", parts.join(","))
        }
    }
}

/// The abelian algebra `A(n)`.
pub fn abelian(field: FieldSpec, n: usize) -> LieAlgebra {
    LieAlgebra::abelian(field, n).with_name(format!("A{n}"))
}

/// `H(m)` on the basis `x_1 … x_m, y_1 … y_m, z` with `[x_i, y_i] = z`.
pub fn heisenberg(field: FieldSpec, m: usize) -> Result<LieAlgebra> {
    if m < 1 {
        return Err(Error::InvalidSize {
            family: "H",
            value: m,
        });
    }
    let z = 2 * m;
    let brackets = (0..m).map(|i| BracketSpec::new(i, m + i, [(z, field.one())]));
    Ok(LieAlgebra::new(field, 2 * m + 1, brackets)?.with_name(format!("H{m}")))
}

/// `F(t)` on the basis `s, s_1 … s_{t+2}` with `[s, s_i] = s_{i+1}` for
/// `1 ≤ i ≤ t+1`; its defect is exactly `t`.
pub fn filiform(field: FieldSpec, t: usize) -> Result<LieAlgebra> {
    if t < 1 {
        return Err(Error::InvalidSize {
            family: "F",
            value: t,
        });
    }
    let brackets = (1..=t + 1).map(|i| BracketSpec::new(0, i, [(i + 1, field.one())]));
    Ok(LieAlgebra::new(field, t + 3, brackets)?.with_name(format!("F{t}")))
}

fn family_size(key: &str, prefix: char) -> Option<usize> {
    let rest = key.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || (rest.len() > 1 && rest.starts_with('0')) {
        return None;
    }
    rest.parse().ok()
}

/// Looks up any catalog key over `field`.
pub fn get(key: &str, field: FieldSpec, params: &[Scalar]) -> Result<LieAlgebra> {
    let no_params = |found: usize| -> Result<()> {
        if found == 0 {
            Ok(())
        } else {
            Err(Error::ParameterCount {
                key: key.to_string(),
                expected: 0,
                found,
            })
        }
    };
    if let Some(n) = family_size(key, 'A') {
        no_params(params.len())?;
        return Ok(abelian(field, n));
    }
    if let Some(m) = family_size(key, 'H') {
        no_params(params.len())?;
        return heisenberg(field, m);
    }
    if let Some(t) = family_size(key, 'F') {
        no_params(params.len())?;
        return filiform(field, t);
    }
    presentation(key)
        .ok_or_else(|| Error::UnknownKey(key.to_string()))?
        .build(field, params)
}

/// A concrete catalog instance: a tabulated presentation with parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub field: FieldSpec,
    pub params: Vec<Scalar>,
    pub field_constraint: FieldConstraint,
    pub expected_row: (usize, usize, usize),
}

impl CatalogEntry {
    pub fn algebra(&self) -> Result<LieAlgebra> {
        get(self.key, self.field, &self.params)
    }

    pub fn label(&self) -> String {
        match (presentation(self.key).and_then(|p| p.params.symbol()), self.params.first()) {
            (Some(sym), Some(v)) => format!("{}({sym}={v})", self.key),
            _ => self.key.to_string(),
        }
    }
}

/// Parameter values exercised by default for one presentation over `field`.
pub fn default_params(kind: ParamKind, field: FieldSpec) -> Vec<Vec<Scalar>> {
    match kind {
        ParamKind::None => vec![Vec::new()],
        ParamKind::NonzeroEpsilon => vec![vec![field.one()]],
        ParamKind::Epsilon | ParamKind::Eta => vec![vec![field.zero()], vec![field.one()]],
    }
}

/// Every tabulated instance admissible over `field`, with default parameters.
pub fn list_all(field: FieldSpec) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for p in PRESENTATIONS.iter().filter(|p| p.constraint.admits(field)) {
        for params in default_params(p.params, field) {
            out.push(CatalogEntry {
                key: p.key,
                field,
                params,
                field_constraint: p.constraint,
                expected_row: p.row,
            });
        }
    }
    out
}
