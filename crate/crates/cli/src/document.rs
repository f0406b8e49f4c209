//! The JSON algebra document.
//!
//! ```json
//! {"name": "L4_3", "dim": 4, "field": {"kind": "rational"},
//!  "brackets": [{"lhs": [1, 2], "rhs": {"3": "1"}}, {"lhs": [1, 3], "rhs": {"4": "1"}}]}
//! ```
//!
//! Indices are 1-based with `i < j`, right-hand sides map basis indices to
//! canonical scalar strings, and omitted pairs are zero.

use std::collections::BTreeSet;
use std::fmt;

use schurdefect_core::field::{parse_scalar, render_scalar};
use schurdefect_core::{BracketSpec, FieldSpec, LieAlgebra, Scalar};
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct DocumentError {
    /// `line L column C` for syntax errors, a JSON path otherwise.
    pub location: String,
    pub message: String,
}

impl DocumentError {
    fn at(location: impl Into<String>, message: impl fmt::Display) -> Self {
        DocumentError {
            location: location.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    field: RawField,
    brackets: Vec<RawBracket>,
}

#[derive(Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawField {
    Rational,
    Prime { p: u32 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    lhs: (usize, usize),
    rhs: Entries,
}

/// Map entries in document order, duplicates kept so they can be rejected.
struct Entries(Vec<(String, String)>);

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = Entries;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping basis indices to scalar strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Entries, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    out.push((k, v));
                }
                Ok(Entries(out))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

fn parse_index(text: &str) -> Option<usize> {
    let canonical = !text.is_empty()
        && text.bytes().all(|b| b.is_ascii_digit())
        && !(text.len() > 1 && text.starts_with('0'));
    canonical.then(|| text.parse().ok()).flatten()
}

pub fn parse_document(text: &str) -> Result<LieAlgebra, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text)
        .map_err(|e| DocumentError::at(format!("line {} column {}", e.line(), e.column()), strip_position(&e)))?;
    let field = match raw.field {
        RawField::Rational => FieldSpec::rational(),
        RawField::Prime { p } => FieldSpec::prime(p).map_err(|e| DocumentError::at("field.p", e))?,
    };
    let n = raw.dim;
    let mut seen = BTreeSet::new();
    let mut specs = Vec::with_capacity(raw.brackets.len());
    for (pos, b) in raw.brackets.into_iter().enumerate() {
        let here = format!("brackets[{pos}]");
        let (i, j) = b.lhs;
        for idx in [i, j] {
            if idx < 1 || idx > n {
                return Err(DocumentError::at(
                    format!("{here}.lhs"),
                    format!("index {idx} out of range 1..={n}"),
                ));
            }
        }
        if i >= j {
            return Err(DocumentError::at(format!("{here}.lhs"), format!("expected i < j, got [{i},{j}]")));
        }
        if !seen.insert((i, j)) {
            return Err(DocumentError::at(format!("{here}.lhs"), format!("duplicate pair [{i},{j}]")));
        }
        let mut keys = BTreeSet::new();
        let mut rhs = Vec::with_capacity(b.rhs.0.len());
        for (key, value) in b.rhs.0 {
            let at = format!("{here}.rhs.{key:?}");
            let k = parse_index(&key)
                .filter(|k| (1..=n).contains(k))
                .ok_or_else(|| DocumentError::at(&at, format!("basis index must be a decimal in 1..={n}")))?;
            if !keys.insert(k) {
                return Err(DocumentError::at(&at, "duplicate basis index"));
            }
            let c = parse_scalar(&value, field).map_err(|e| DocumentError::at(&at, e))?;
            let canonical = render_scalar(&c);
            if canonical != value {
                return Err(DocumentError::at(&at, format!("scalar {value:?} is not canonical (write {canonical:?})")));
            }
            rhs.push((k - 1, c));
        }
        specs.push(BracketSpec::new(i - 1, j - 1, rhs));
    }
    let algebra = LieAlgebra::new(field, n, specs).map_err(|e| DocumentError::at("brackets", e))?;
    Ok(match raw.name {
        Some(name) => algebra.with_name(name),
        None => algebra,
    })
}

fn strip_position(e: &serde_json::Error) -> String {
    let text = e.to_string();
    match text.rfind(" at line ") {
        Some(cut) => text[..cut].to_string(),
        None => text,
    }
}

struct Rhs<'a>(&'a [(usize, Scalar)]);

impl Serialize for Rhs<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, c) in self.0 {
            map.serialize_entry(&(k + 1).to_string(), &render_scalar(c))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct OutBracket<'a> {
    lhs: [usize; 2],
    rhs: Rhs<'a>,
}

/// One bracket per line, pairs in lexicographic order, basis indices
/// ascending, zero brackets omitted; ends with a newline.
pub fn render_document(l: &LieAlgebra) -> String {
    let field = match l.field().modulus() {
        None => RawField::Rational,
        Some(p) => RawField::Prime { p },
    };
    let mut text = String::from("{\n");
    if let Some(name) = l.name() {
        text.push_str(&format!("  \"name\": {},\n", compact(name)));
    }
    text.push_str(&format!("  \"dim\": {},\n", l.dim()));
    text.push_str(&format!("  \"field\": {},\n", compact(&field)));
    let brackets: Vec<String> = l
        .brackets()
        .map(|(i, j, terms)| {
            let b = OutBracket {
                lhs: [i + 1, j + 1],
                rhs: Rhs(terms),
            };
            format!("    {}", compact(&b))
        })
        .collect();
    if brackets.is_empty() {
        text.push_str("  \"brackets\": []\n}\n");
    } else {
        text.push_str("  \"brackets\": [\n");
        text.push_str(&brackets.join(",\n"));
        text.push_str("\n  ]\n}\n");
    }
    text
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use schurdefect_core::catalog;

    fn err(text: &str) -> DocumentError {
        parse_document(text).unwrap_err()
    }

    #[test]
    fn round_trip_l4_3() {
        let l = catalog::get("L4_3", FieldSpec::rational(), &[]).unwrap();
        let text = render_document(&l);
        assert!(text.contains("{\"kind\":\"rational\"}"));
        let back = parse_document(&text).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn prime_fields_and_fractions() {
        let text = r#"{"dim": 3, "field": {"kind": "prime", "p": 5},
            "brackets": [{"lhs": [1, 2], "rhs": {"3": "4"}}]}"#;
        let l = parse_document(text).unwrap();
        assert_eq!(l.field(), FieldSpec::prime(5).unwrap());
        assert_eq!(l.name(), None);
        let q = r#"{"dim": 3, "field": {"kind": "rational"},
            "brackets": [{"lhs": [1, 2], "rhs": {"3": "-2/3"}}]}"#;
        assert!(render_document(&parse_document(q).unwrap()).contains("\"-2/3\""));
    }

    #[test]
    fn positioned_errors() {
        let base = |b: &str| format!(r#"{{"dim": 3, "field": {{"kind": "rational"}}, "brackets": [{b}]}}"#);
        let e = err(&base(r#"{"lhs": [1, 2], "rhs": {"3": "1"}}, {"lhs": [1, 2], "rhs": {}}"#));
        assert_eq!(e.location, "brackets[1].lhs");
        assert!(e.message.contains("duplicate"));
        let e = err(&base(r#"{"lhs": [2, 1], "rhs": {"3": "1"}}"#));
        assert_eq!(e.location, "brackets[0].lhs");
        let e = err(&base(r#"{"lhs": [1, 4], "rhs": {"3": "1"}}"#));
        assert!(e.message.contains("out of range"));
        let e = err(&base(r#"{"lhs": [1, 2], "rhs": {"3": "2/4"}}"#));
        assert_eq!(e.location, "brackets[0].rhs.\"3\"");
        assert!(e.message.contains("not canonical"));
        let e = err(&base(r#"{"lhs": [1, 2], "rhs": {"3": "-0"}}"#));
        assert!(e.message.contains("not canonical"));
        let e = err(&base(r#"{"lhs": [1, 2], "rhs": {"03": "1"}}"#));
        assert!(e.message.contains("basis index"));
        let e = err(&base(r#"{"lhs": [1, 2], "rhs": {"3": "1", "3": "2"}}"#));
        assert!(e.message.contains("duplicate basis index"));
        let e = err(&base(r#"{"lhs": [1, 2], "rhs": {"1": "1"}}, {"lhs": [2, 3], "rhs": {"2": "1"}}"#));
        assert_eq!(e.location, "brackets");
        let e = err(r#"{"dim": 3, "field": {"kind": "prime", "p": 4}, "brackets": []}"#);
        assert_eq!(e.location, "field.p");
        let e = err(r#"{"dim": 3, "field": {"kind": "rational"}, "brackets": [], "extra": 1}"#);
        assert!(e.location.starts_with("line 1"));
        let e = err("{\"dim\": 3,\n  \"field\": oops}");
        assert_eq!(e.location, "line 2 column 12");
    }
}
