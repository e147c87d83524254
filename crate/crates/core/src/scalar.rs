//! Exact scalars over the rationals and prime fields.
//!
//! Every structure constant, coordinate and echelon entry in the crate is a
//! [`Scalar`]. Rationals are kept fully reduced with a positive denominator and
//! prime-field elements as canonical residues, so derived `PartialEq` is value
//! equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("denominator of {text:?} is not invertible modulo {p}")]
    NonInvertibleDenominator { text: String, p: u64 },
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("unknown field {0:?} (expected Q, rational, or gfP with P prime)")]
    UnknownField(String),
}

/// The base field: either the rationals or GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    modulus: Option<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub const fn rational() -> Self {
        FieldSpec { modulus: None }
    }

    /// GF(p). Moduli are limited to 32 bits so residue products fit in `u64`.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldSpec { modulus: Some(p) })
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_rational(&self) -> bool {
        self.modulus.is_none()
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        self.modulus.unwrap_or(0)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.modulus {
            None => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Some(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    fn embed_integer(&self, n: &BigInt) -> Scalar {
        match self.modulus {
            None => Scalar::Rational(BigRational::from_integer(n.clone())),
            Some(p) => Scalar::Modular {
                value: n.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0),
                modulus: p,
            },
        }
    }

    /// Parses `[+-]digits` or `[+-]digits/digits`; prime-field input is
    /// reduced modulo p.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let t = text.trim();
        let (num_txt, den_txt) = match t.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (t, None),
        };
        let numerator =
            parse_signed_integer(num_txt).ok_or_else(|| ScalarError::Malformed(text.into()))?;
        let denominator = match den_txt {
            None => BigInt::one(),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ScalarError::Malformed(text.into()));
                }
                d.parse::<BigInt>()
                    .map_err(|_| ScalarError::Malformed(text.into()))?
            }
        };
        if denominator.is_zero() {
            return Err(ScalarError::ZeroDenominator(text.into()));
        }
        let num = self.embed_integer(&numerator);
        let den = self.embed_integer(&denominator);
        match den.checked_inv() {
            Ok(inv) => Ok(&num * &inv),
            Err(_) => Err(ScalarError::NonInvertibleDenominator {
                text: text.into(),
                p: self.characteristic(),
            }),
        }
    }

    /// All field elements, for prime fields only.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.modulus.map(|p| {
            (0..p)
                .map(|v| Scalar::Modular {
                    value: v,
                    modulus: p,
                })
                .collect()
        })
    }
}

fn parse_signed_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse::<BigInt>().ok()
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Q"),
            Some(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    /// Accepts `Q`, `rational`, `gf5`, `GF(5)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" || lower == "rational" || lower == "rationals" {
            return Ok(FieldSpec::rational());
        }
        let digits = lower
            .strip_prefix("gf")
            .map(|rest| rest.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| ScalarError::UnknownField(s.into()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| ScalarError::UnknownField(s.into()))?;
        FieldSpec::prime(p)
    }
}

/// A field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::rational(),
            Scalar::Modular { modulus, .. } => FieldSpec {
                modulus: Some(*modulus),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular { value: b, .. },
            ) => Scalar::Modular {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular { value: b, .. },
            ) => Scalar::Modular {
                value: a * b % p,
                modulus: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.checked_inv()?)
    }

    /// Integer representative when the value is integral (residue for prime fields).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => Some(*value as i64),
        }
    }

    /// True for rationals below zero. Prime residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator impls panic on mixed fields; the `checked_*` methods report it instead.
// Within an algebra instance every scalar shares one field.

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs)
            .expect("scalar addition across fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs)
            .expect("scalar subtraction across fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs)
            .expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::rational().parse(s).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
    }

    #[test]
    fn prime_inverse() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.from_i64(3).checked_inv().unwrap(), f7.from_i64(5));
    }

    #[test]
    fn zero_product_is_canonical() {
        let z = &q("2/3") * &q("0");
        assert!(z.is_zero());
        match z {
            Scalar::Rational(ref r) => assert!(r.denom().is_one()),
            _ => panic!(),
        }
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(q("-4/6"), q("-2/3"));
        assert_eq!(q("-4/6").to_string(), "-2/3");
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse("10").unwrap(), f7.from_i64(3));
        assert_eq!(f7.parse("1/2").unwrap(), f7.from_i64(4));
    }

    #[test]
    fn parse_errors() {
        let qf = FieldSpec::rational();
        assert!(matches!(
            qf.parse("1/0"),
            Err(ScalarError::ZeroDenominator(_))
        ));
        assert!(matches!(qf.parse("1.5"), Err(ScalarError::Malformed(_))));
        assert!(matches!(qf.parse(""), Err(ScalarError::Malformed(_))));
        assert!(matches!(qf.parse("1/-2"), Err(ScalarError::Malformed(_))));
        assert!(matches!(qf.parse("--1"), Err(ScalarError::Malformed(_))));
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            f5.parse("1/10"),
            Err(ScalarError::NonInvertibleDenominator { p: 5, .. })
        ));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(q("0").checked_inv(), Err(ScalarError::DivisionByZero));
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f3.zero().checked_inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn mixing_fields_fails() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            q("1").checked_add(&f5.one()),
            Err(ScalarError::FieldMismatch(..))
        ));
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(f7.one().checked_mul(&f5.one()).is_err());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(
            "gf5".parse::<FieldSpec>().unwrap(),
            FieldSpec::prime(5).unwrap()
        );
        assert_eq!(
            "GF(7)".parse::<FieldSpec>().unwrap(),
            FieldSpec::prime(7).unwrap()
        );
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::rational());
        assert!(matches!(
            "gf6".parse::<FieldSpec>(),
            Err(ScalarError::NotPrime(6))
        ));
        assert!(FieldSpec::prime(1).is_err());
        assert!("reals".parse::<FieldSpec>().is_err());
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::rational()),
            Just(FieldSpec::prime(2).unwrap()),
            Just(FieldSpec::prime(5).unwrap()),
            Just(FieldSpec::prime(7919).unwrap()),
        ]
    }

    fn arb_scalar(field: FieldSpec) -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(move |(n, d)| {
            let num = field.from_i64(n);
            match field.from_i64(d).checked_inv() {
                Ok(inv) => &num * &inv,
                Err(_) => num,
            }
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        arb_field().prop_flat_map(|f| (arb_scalar(f), arb_scalar(f), arb_scalar(f)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &-&a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.checked_inv().unwrap()).is_one());
            }
        }

        #[test]
        fn parse_print_round_trip((a, _, _) in arb_triple()) {
            let field = a.field();
            prop_assert_eq!(field.parse(&a.to_string()).unwrap(), a);
        }
    }
}
