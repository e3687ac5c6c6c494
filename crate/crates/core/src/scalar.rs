//! Exact scalars: arbitrary-precision rationals and prime fields GF(p).
//!
//! A [`Scalar`] always carries enough information to know which field it
//! lives in. Arithmetic between scalars of different fields is a logic error
//! and panics; callers that handle untrusted input check [`Scalar::field`]
//! first (the linear algebra layer does this and reports a typed error).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible prime modulus.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is not a prime modulus in 2..=2^31")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("cannot parse field descriptor {0:?} (expected `rational` or `gf:p`)")]
    ParseField(String),
    #[error("scalar {value:?} does not belong to field {field}")]
    WrongField { value: String, field: Field },
    #[error("division by zero")]
    DivisionByZero,
}

/// A field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn gf(p: u64) -> Result<Field, ScalarError> {
        if p <= MAX_PRIME && is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { r: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Mod { r: 1 % p, p },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                r: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// Exact ratio `num/den` in this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// The `index`-th element in the canonical enumeration `0, 1, ..., p-1`.
    /// Only meaningful for finite fields.
    pub fn element(self, index: u64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod { r: index % p, p },
            Field::Rational => self.from_i64(index as i64),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = ScalarError;

    /// Accepts `rational`, `q`, `gf:p`, `gfp` (e.g. `gf2`) and `gf(p)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "rational" || t == "q" || t == "rationals" {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("gf")
            .map(|rest| rest.trim_start_matches([':', '(']).trim_end_matches(')'))
            .ok_or_else(|| ScalarError::ParseField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| ScalarError::ParseField(s.to_string()))?;
        Field::gf(p)
    }
}

/// JSON shape of a field descriptor: `{"kind": "rational"}` or
/// `{"kind": "gfp", "p": 5}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl From<Field> for FieldDescriptor {
    fn from(f: Field) -> Self {
        match f {
            Field::Rational => FieldDescriptor {
                kind: "rational".into(),
                p: None,
            },
            Field::Prime(p) => FieldDescriptor {
                kind: "gfp".into(),
                p: Some(p),
            },
        }
    }
}

impl TryFrom<&FieldDescriptor> for Field {
    type Error = ScalarError;

    fn try_from(d: &FieldDescriptor) -> Result<Self, Self::Error> {
        match (d.kind.as_str(), d.p) {
            ("rational", _) => Ok(Field::Rational),
            ("gfp", Some(p)) => Field::gf(p),
            _ => Err(ScalarError::ParseField(format!("{d:?}"))),
        }
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator (maintained by
    /// `num_rational`).
    Rational(BigRational),
    /// Residue `0 <= r < p`.
    Mod { r: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { r, .. } => *r == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { r, p } => Scalar::Mod {
                r: pow_mod(*r, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        let inv = rhs.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Parses a scalar and checks it belongs to `field`.
    ///
    /// Prime-field values are written `"r mod p"`; a bare integer is also
    /// accepted and reduced. Rationals are `"num/den"` or `"num"`.
    pub fn parse(s: &str, field: Field) -> Result<Scalar, ScalarError> {
        let t = s.trim();
        let wrong = || ScalarError::WrongField {
            value: s.to_string(),
            field,
        };
        if let Some((r, p)) = t.split_once("mod") {
            let r: i64 = r.trim().parse().map_err(|_| ScalarError::Parse(s.into()))?;
            let p: u64 = p.trim().parse().map_err(|_| ScalarError::Parse(s.into()))?;
            return match field {
                Field::Prime(q) if q == p => Ok(field.from_i64(r)),
                _ => Err(wrong()),
            };
        }
        match field {
            Field::Rational => {
                let q: BigRational = t.parse().map_err(|_| ScalarError::Parse(s.into()))?;
                Ok(Scalar::Rational(q))
            }
            Field::Prime(_) => {
                if t.contains('/') {
                    let (n, d) = t.split_once('/').unwrap();
                    let n: i64 = n.trim().parse().map_err(|_| ScalarError::Parse(s.into()))?;
                    let d: i64 = d.trim().parse().map_err(|_| ScalarError::Parse(s.into()))?;
                    field.ratio(n, d)
                } else {
                    let n: i64 = t.parse().map_err(|_| ScalarError::Parse(s.into()))?;
                    Ok(field.from_i64(n))
                }
            }
        }
    }

    fn check_same(&self, rhs: &Scalar) {
        assert_eq!(
            self.field(),
            rhs.field(),
            "arithmetic between scalars of different fields"
        );
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { r, p } => write!(f, "{r} mod {p}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { r: a, p }, Scalar::Mod { r: b, p: q }) if p == q => Scalar::Mod {
                r: (a + b) % p,
                p: *p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => {
                self.check_same(rhs);
                unreachable!()
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { r: a, p }, Scalar::Mod { r: b, p: q }) if p == q => Scalar::Mod {
                r: (a + p - b) % p,
                p: *p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => {
                self.check_same(rhs);
                unreachable!()
            }
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { r: a, p }, Scalar::Mod { r: b, p: q }) if p == q => Scalar::Mod {
                r: a * b % p,
                p: *p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => {
                self.check_same(rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { r, p } => Scalar::Mod {
                r: (p - r) % p,
                p: *p,
            },
            Scalar::Rational(q) => Scalar::Rational(-q),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Sign of a rational scalar; prime-field values report `0` or `1`.
pub fn signum(x: &Scalar) -> i8 {
    match x {
        Scalar::Rational(q) => {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        }
        Scalar::Mod { r, .. } => i8::from(*r != 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::gf(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(&a + &b, f.from_i64(1));
        assert_eq!(&a - &b, f.from_i64(5));
        assert_eq!(&a * &b, f.from_i64(1));
        assert_eq!(a.inv().unwrap(), f.from_i64(5));
        assert_eq!(-&a, f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn rejects_composite_moduli() {
        assert_eq!(Field::gf(4), Err(ScalarError::NotPrime(4)));
        assert_eq!(Field::gf(1), Err(ScalarError::NotPrime(1)));
        assert!(Field::gf(2_147_483_647).is_ok());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rational.ratio(6, -4).unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Field::Rational.from_i64(5).to_string(), "5");
    }

    #[test]
    fn string_forms_round_trip() {
        let f = Field::gf(5).unwrap();
        let x = f.from_i64(3);
        assert_eq!(x.to_string(), "3 mod 5");
        assert_eq!(Scalar::parse("3 mod 5", f).unwrap(), x);
        assert_eq!(Scalar::parse("-2", f).unwrap(), x);
        assert!(matches!(
            Scalar::parse("3 mod 7", f),
            Err(ScalarError::WrongField { .. })
        ));
        let q = Field::Rational.ratio(-7, 3).unwrap();
        assert_eq!(Scalar::parse(&q.to_string(), Field::Rational).unwrap(), q);
    }

    #[test]
    fn field_descriptors_parse() {
        assert_eq!("gf:2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("gf2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("GF(3)".parse::<Field>().unwrap(), Field::Prime(3));
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert!("gf:9".parse::<Field>().is_err());
        assert!("reals".parse::<Field>().is_err());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixing_fields_panics() {
        let _ = Field::Prime(2).one() + Field::Prime(3).one();
    }
}
