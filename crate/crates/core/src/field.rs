//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.
//!
//! The ground field is chosen once per session and every [`Scalar`] carries
//! enough information to do arithmetic on its own. Mixing scalars from two
//! different fields is a programming error and panics.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Largest modulus accepted for prime fields. Products are computed in `u128`,
/// so anything below `2^63` would be safe; the tighter bound keeps residues
/// printable as plain JSON numbers.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field of a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// The rational numbers.
    Rational,
    /// The prime field `Z/pZ`.
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    /// Parses an integer or fraction literal (`"3"`, `"-2/5"`) into this field.
    pub fn parse(self, text: &str) -> Result<Scalar, Error> {
        let bad = || Error::ScalarParse(text.to_string());
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> u64 {
                    let m = BigInt::from(p);
                    let r = ((x % &m) + &m) % &m;
                    r.to_u64().expect("residue fits in u64")
                };
                let n = Scalar::Prime { value: reduce(&num), modulus: p };
                let d = Scalar::Prime { value: reduce(&den), modulus: p };
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(&n / &d)
            }
        }
    }

    /// Number of elements, when finite.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the session field, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, modulus } => {
                Scalar::Prime { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    /// `self += factor * other`, the inner loop of every elimination.
    pub fn add_mul_assign(&mut self, factor: &Scalar, other: &Scalar) {
        match (&mut *self, factor, other) {
            (Scalar::Prime { value, modulus }, Scalar::Prime { value: f, .. }, Scalar::Prime { value: o, .. }) => {
                let p = *modulus as u128;
                *value = ((*value as u128 + (*f as u128) * (*o as u128)) % p) as u64;
            }
            (Scalar::Rational(q), Scalar::Rational(f), Scalar::Rational(o)) => {
                *q += f * o;
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Canonical integer view used by tests and small enumerations.
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Prime { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
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
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// Literal form accepted back by [`Field::parse`].
    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $prime:expr, $rat:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, modulus: m2 }) => {
                        assert_eq!(modulus, m2, "scalar field mismatch");
                        Scalar::Prime { value: $prime(*a, *b, *modulus), modulus: *modulus }
                    }
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    _ => panic!("scalar field mismatch"),
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

binop!(
    Add,
    add,
    |a: u64, b: u64, p: u64| ((a as u128 + b as u128) % p as u128) as u64,
    |a: &BigRational, b: &BigRational| a + b
);
binop!(
    Sub,
    sub,
    |a: u64, b: u64, p: u64| ((a as u128 + p as u128 - b as u128) % p as u128) as u64,
    |a: &BigRational, b: &BigRational| a - b
);
binop!(
    Mul,
    mul,
    |a: u64, b: u64, p: u64| ((a as u128 * b as u128) % p as u128) as u64,
    |a: &BigRational, b: &BigRational| a * b
);
binop!(
    Div,
    div,
    |a: u64, b: u64, p: u64| {
        assert!(b != 0, "division by zero");
        ((a as u128 * pow_mod(b, p - 2, p) as u128) % p as u128) as u64
    },
    |a: &BigRational, b: &BigRational| {
        assert!(!b.is_zero(), "division by zero");
        a / b
    }
);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { value, modulus } => Scalar::Prime { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Total order on canonical forms, only used to make outputs deterministic.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Prime { .. }) => Ordering::Less,
            (Scalar::Prime { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl Scalar {
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rational;
        let a = q.parse("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(q.parse("4/2").unwrap(), q.from_i64(2));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        let five = f.from_i64(-2);
        assert_eq!(five.as_residue(), Some(5));
        assert_eq!((&three * &five).as_residue(), Some(1));
        assert_eq!(three.inverse().unwrap(), five);
        assert_eq!(f.parse("1/3").unwrap(), five);
        assert_eq!((-&three).as_residue(), Some(4));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::Rational.parse("1/0").is_err());
        assert!(Field::Rational.parse("x").is_err());
        assert!(Field::prime(5).unwrap().parse("1/5").is_err());
    }

    #[test]
    fn add_mul_assign_matches_ops() {
        for field in [Field::Rational, Field::Prime(11)] {
            let mut a = field.from_i64(4);
            let f = field.parse("3").unwrap();
            let o = field.from_i64(-5);
            let expect = &a + &(&f * &o);
            a.add_mul_assign(&f, &o);
            assert_eq!(a, expect);
        }
    }
}
