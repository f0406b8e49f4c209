//! Exact scalars over the rational field and prime fields GF(p).
//!
//! Rationals use a two-tier representation: a reduced `i64` fraction while
//! numerator and denominator fit, and an arbitrary-precision fraction when
//! they do not. Both tiers are canonical, so derived equality and hashing are
//! value equality.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u32),
    #[error("cannot parse {text:?} over {field}: {reason}")]
    Parse {
        text: String,
        field: FieldSpec,
        reason: &'static str,
    },
    #[error("unknown field descriptor {0:?} (expected `q` or `gf:P`)")]
    UnknownField(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime,
}

/// The scalar field an algebra lives over: ℚ or GF(p) with p prime, p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    // 0 encodes the rationals.
    modulus: u32,
}

impl FieldSpec {
    pub const RATIONAL: FieldSpec = FieldSpec { modulus: 0 };

    pub const fn rational() -> Self {
        Self::RATIONAL
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if p >= MAX_MODULUS {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec { modulus: p })
    }

    pub fn kind(self) -> FieldKind {
        if self.modulus == 0 {
            FieldKind::Rational
        } else {
            FieldKind::Prime
        }
    }

    /// `Some(p)` for GF(p), `None` for ℚ.
    pub fn modulus(self) -> Option<u32> {
        (self.modulus != 0).then_some(self.modulus)
    }

    /// 0 for ℚ, p for GF(p).
    pub fn characteristic(self) -> u32 {
        self.modulus
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(self) -> Option<u64> {
        self.modulus().map(u64::from)
    }

    /// Machine-readable descriptor: `q` or `gf:P`.
    pub fn descriptor(self) -> String {
        match self.modulus() {
            None => "q".to_string(),
            Some(p) => alloc::format!("gf:{p}"),
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero(self)
    }

    pub fn one(self) -> Scalar {
        Scalar::one(self)
    }

    pub fn from_int(self, v: i64) -> Scalar {
        Scalar::from_int(self, v)
    }

    /// The scalars `0, 1, …, p-1` of a prime field in residue order.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        let p = self.modulus()?;
        Some((0..p).map(move |value| Scalar(Repr::Prime { value, modulus: p })))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => f.write_str("Q"),
            Some(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" || lower == "rational" {
            return Ok(Self::RATIONAL);
        }
        let digits = lower
            .strip_prefix("gf:")
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| FieldError::UnknownField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = u64::from(p);
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Rational {
    // Reduced, den > 0, num != i64::MIN.
    Small(i64, i64),
    // Reduced and never representable as `Small`.
    Big(Box<BigRational>),
}

impl Rational {
    const ZERO: Rational = Rational::Small(0, 1);

    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        if den != 1 {
            let g = num.gcd(&den);
            if g > 1 {
                num /= g;
                den /= g;
            }
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new_raw(num.into(), den.into()))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        // `r` is reduced with positive denominator (Ratio invariant).
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(a, 1), Rational::Small(b, 1)) => match a.checked_add(*b) {
                Some(s) if s != i64::MIN => Rational::Small(s, 1),
                _ => Rational::from_i128(*a as i128 + *b as i128, 1),
            },
            (Rational::Small(0, _), _) => other.clone(),
            (_, Rational::Small(0, _)) => self.clone(),
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                if ad == bd {
                    Rational::from_i128(*an as i128 + *bn as i128, *ad as i128)
                } else {
                    let num = *an as i128 * *bd as i128 + *bn as i128 * *ad as i128;
                    Rational::from_i128(num, *ad as i128 * *bd as i128)
                }
            }
            _ => Rational::from_big(self.to_big() + other.to_big()),
        }
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, *d),
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }

    fn mul(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::ZERO,
            (Rational::Small(1, 1), _) => other.clone(),
            (_, Rational::Small(1, 1)) => self.clone(),
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                Rational::from_i128(*an as i128 * *bn as i128, *ad as i128 * *bd as i128)
            }
            _ => Rational::from_big(self.to_big() * other.to_big()),
        }
    }

    // Caller guarantees `other` is nonzero.
    fn div(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(0, _), _) => Rational::ZERO,
            (_, Rational::Small(1, 1)) => self.clone(),
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                Rational::from_i128(*an as i128 * *bd as i128, *ad as i128 * *bn as i128)
            }
            _ => Rational::from_big(self.to_big() / other.to_big()),
        }
    }

    fn numer_denom(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (b.numer().clone(), b.denom().clone()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(Rational),
    Prime { value: u32, modulus: u32 },
}

/// An element of a [`FieldSpec`], always held in canonical form.
///
/// The operator impls (`&a + &b` and friends) panic on mixed fields or on
/// division by zero; the `checked_*` methods report those as [`FieldError`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(field: FieldSpec) -> Scalar {
        match field.modulus() {
            None => Scalar(Repr::Rational(Rational::ZERO)),
            Some(p) => Scalar(Repr::Prime { value: 0, modulus: p }),
        }
    }

    pub fn one(field: FieldSpec) -> Scalar {
        Scalar::from_int(field, 1)
    }

    /// The image of an integer in `field`.
    pub fn from_int(field: FieldSpec, v: i64) -> Scalar {
        match field.modulus() {
            None => Scalar(Repr::Rational(Rational::from_i128(v as i128, 1))),
            Some(p) => Scalar(Repr::Prime {
                value: v.rem_euclid(i64::from(p)) as u32,
                modulus: p,
            }),
        }
    }

    /// `num / den` in `field`.
    pub fn from_fraction(field: FieldSpec, num: i64, den: i64) -> Result<Scalar, FieldError> {
        Scalar::from_int(field, num).checked_div(&Scalar::from_int(field, den))
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::RATIONAL,
            Repr::Prime { modulus, .. } => FieldSpec { modulus: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => matches!(r, Rational::Small(1, 1)),
            Repr::Prime { value, .. } => *value == 1,
        }
    }

    /// Residue in `[0, p)` for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Prime { value, .. } => Some(*value),
        }
    }

    /// Reduced numerator and positive denominator of a rational scalar.
    pub fn to_fraction(&self) -> Option<(BigInt, BigInt)> {
        match &self.0 {
            Repr::Rational(r) => Some(r.numer_denom()),
            Repr::Prime { .. } => None,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        let (left, right) = (self.field(), other.field());
        if left == right {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch { left, right })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a.add(b))),
            (Repr::Prime { value: a, modulus }, Repr::Prime { value: b, .. }) => {
                let s = (u64::from(*a) + u64::from(*b)) % u64::from(*modulus);
                Scalar(Repr::Prime {
                    value: s as u32,
                    modulus: *modulus,
                })
            }
            _ => unreachable!("same_field checked"),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a.mul(b))),
            (Repr::Prime { value: a, modulus }, Repr::Prime { value: b, .. }) => {
                let s = (u64::from(*a) * u64::from(*b)) % u64::from(*modulus);
                Scalar(Repr::Prime {
                    value: s as u32,
                    modulus: *modulus,
                })
            }
            _ => unreachable!("same_field checked"),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Ok(Scalar(Repr::Rational(a.div(b)))),
            (Repr::Prime { .. }, Repr::Prime { .. }) => self.checked_mul(&other.inv()?),
            _ => unreachable!("same_field checked"),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &self.0 {
            Repr::Rational(r) => Ok(Scalar(Repr::Rational(Rational::Small(1, 1).div(r)))),
            Repr::Prime { value, modulus } => {
                // Fermat: a^(p-2).
                let p = u64::from(*modulus);
                let mut base = u64::from(*value);
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Ok(Scalar(Repr::Prime {
                    value: acc as u32,
                    modulus: *modulus,
                }))
            }
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(r.neg())),
            Repr::Prime { value, modulus } => Scalar(Repr::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            }),
        }
    }

    /// `self += a * b`, skipping work when either factor is zero.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = &*self + &(a * b);
    }

    /// `self -= a * b`.
    pub fn sub_product(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = &*self - &(a * b);
    }

    pub fn parse(text: &str, field: FieldSpec) -> Result<Scalar, FieldError> {
        parse_scalar(text, field)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => r.fmt(f),
            Repr::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses the scalar text grammar.
///
/// Over ℚ: `-?[0-9]+(/[1-9][0-9]*)?`, reduced on input. Over GF(p): `[0-9]+`
/// with value below p; out-of-range residues are rejected rather than reduced.
pub fn parse_scalar(text: &str, field: FieldSpec) -> Result<Scalar, FieldError> {
    let fail = |reason| FieldError::Parse {
        text: text.to_string(),
        field,
        reason,
    };
    match field.modulus() {
        Some(p) => {
            if !all_digits(text) {
                return Err(fail("expected a decimal residue"));
            }
            let value: u64 = match text.parse() {
                Ok(v) => v,
                Err(_) => return Err(fail("residue out of range")),
            };
            if value >= u64::from(p) {
                return Err(fail("residue out of range"));
            }
            Ok(Scalar(Repr::Prime {
                value: value as u32,
                modulus: p,
            }))
        }
        None => {
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, text),
            };
            let (num_text, den_text) = match body.split_once('/') {
                Some((n, d)) => (n, Some(d)),
                None => (body, None),
            };
            if !all_digits(num_text) {
                return Err(fail("expected an integer numerator"));
            }
            let mut num = BigInt::parse_bytes(num_text.as_bytes(), 10)
                .ok_or_else(|| fail("expected an integer numerator"))?;
            if negative {
                num = -num;
            }
            let den = match den_text {
                None => BigInt::one(),
                Some(d) => {
                    if !all_digits(d) {
                        return Err(fail("expected an integer denominator"));
                    }
                    if d.starts_with('0') {
                        return Err(fail("denominator must be nonzero without leading zeros"));
                    }
                    BigInt::parse_bytes(d.as_bytes(), 10)
                        .ok_or_else(|| fail("expected an integer denominator"))?
                }
            };
            debug_assert!(den.is_positive());
            Ok(Scalar(Repr::Rational(Rational::from_big(BigRational::new(
                num, den,
            )))))
        }
    }
}

/// Canonical text form; inverse of [`parse_scalar`].
pub fn render_scalar(x: &Scalar) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(FieldSpec::RATIONAL, n, d).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!((&q(1, 2) + &q(1, 3)).to_string(), "5/6");
    }

    #[test]
    fn gf2_and_gf3() {
        let gf2 = FieldSpec::prime(2).unwrap();
        let gf3 = FieldSpec::prime(3).unwrap();
        assert!((&gf2.one() + &gf2.one()).is_zero());
        assert_eq!(&gf3.from_int(2) * &gf3.from_int(2), gf3.one());
    }

    #[test]
    fn division_errors() {
        let gf5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            gf5.one().checked_div(&gf5.zero()),
            Err(FieldError::DivisionByZero)
        );
        assert_eq!(q(1, 1).checked_div(&q(0, 1)), Err(FieldError::DivisionByZero));
        assert!(matches!(
            q(1, 1).checked_add(&gf5.one()),
            Err(FieldError::FieldMismatch { .. })
        ));
        assert_eq!(
            Scalar::from_fraction(FieldSpec::RATIONAL, 1, 0),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn prime_inverse() {
        let gf7 = FieldSpec::prime(7).unwrap();
        for v in 1..7 {
            let x = gf7.from_int(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn field_construction() {
        assert_eq!(FieldSpec::prime(4), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldSpec::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(FieldSpec::prime(1 << 31), Err(FieldError::ModulusTooLarge(1 << 31)));
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert_eq!("gf:3".parse::<FieldSpec>(), FieldSpec::prime(3));
        assert_eq!("q".parse::<FieldSpec>(), Ok(FieldSpec::RATIONAL));
        assert!("gf:9".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        assert_ne!(FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_scalar("-3/6", FieldSpec::RATIONAL).unwrap(), q(-1, 2));
        let gf2 = FieldSpec::prime(2).unwrap();
        let gf3 = FieldSpec::prime(3).unwrap();
        assert_eq!(parse_scalar("1", gf2).unwrap(), gf2.one());
        assert!(matches!(parse_scalar("5", gf3), Err(FieldError::Parse { .. })));
        for bad in ["", "-", "1/0", "1/03", "+1", "1/", "/2", "1.5", "1/-2", "--1"] {
            assert!(parse_scalar(bad, FieldSpec::RATIONAL).is_err(), "{bad}");
        }
        for bad in ["-1", "", "x", "99999999999999999999"] {
            assert!(parse_scalar(bad, gf3).is_err(), "{bad}");
        }
    }

    #[test]
    fn overflow_promotes_to_big() {
        let big = Scalar::from_int(FieldSpec::RATIONAL, i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        assert_eq!(&sum - &big, big);
        let tiny = &q(1, 1) / &sum;
        assert_eq!(&tiny * &sum, q(1, 1));
        let min = Scalar::from_int(FieldSpec::RATIONAL, i64::MIN);
        assert_eq!(Scalar::neg(&min).to_string(), "9223372036854775808");
        assert_eq!(Scalar::neg(&Scalar::neg(&min)), min);
    }
}
