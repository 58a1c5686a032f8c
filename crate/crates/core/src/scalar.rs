//! Coefficient fields.
//!
//! Everything above this module is written against [`Field`] (and
//! [`ConjField`] where a conjugation is needed), so the polynomial, matrix and
//! elimination code runs unchanged over `Q`, `Q(i)` and `Q(t)`. Only exact
//! fields implement these traits: Euclidean division, Smith normal form and
//! inertia counting all rely on exact zero tests.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An exact commutative field.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Human-readable form for messages.
    fn to_text(&self) -> String {
        format!("{self:?}")
    }

    /// A nonzero scalar that keeps `values` small after multiplication.
    fn balancing_factor(values: &[&Self]) -> Self {
        let _ = values;
        Self::one()
    }
}

/// A field with an involutive automorphism. For self-adjoint elements
/// (`x == x.conj()`) `real_sign` is the sign of the element itself.
pub trait ConjField: Field {
    fn conj(&self) -> Self;
    fn real_sign(&self) -> Ordering;
}

/// A field with a compatible total order.
pub trait OrderedField: Field + PartialOrd {
    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Self {
        self.recip()
    }

    fn to_text(&self) -> String {
        format_rational(self)
    }

    /// `lcm(denominators) / gcd(numerators)`: the result is a primitive
    /// integer vector.
    fn balancing_factor(values: &[&Self]) -> Self {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for v in values {
            den = den.lcm(v.denom());
            num = num.gcd(v.numer());
        }
        if num.is_zero() {
            return Self::one();
        }
        BigRational::new(den, num)
    }
}

impl ConjField for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn real_sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if Signed::is_negative(self) {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl OrderedField for BigRational {}

impl Field for Complex<BigRational> {
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_i64(n), BigRational::zero())
    }

    fn inv(&self) -> Self {
        let norm = self.norm_sqr();
        Complex::new(&self.re / &norm, -(&self.im / &norm))
    }

    fn to_text(&self) -> String {
        format!("({} + {}i)", format_rational(&self.re), format_rational(&self.im))
    }
}

impl ConjField for Complex<BigRational> {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn real_sign(&self) -> Ordering {
        self.re.real_sign()
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Largest multiple of `2^-bits` not exceeding `x`.
pub fn floor_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    (x * &scale).floor() / scale
}

/// Smallest multiple of `2^-bits` not below `x`.
pub fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    (x * &scale).ceil() / scale
}

/// `2^-bits` as a rational.
pub fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

pub mod serde_rational {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse_rational(&raw).ok_or_else(|| D::Error::custom(format!("bad rational {raw:?}")))
    }
}

pub mod serde_rational_opt {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&super::format_rational(q)),
            None => s.serialize_none(),
        }
    }
}

pub mod serde_rational_pair {
    use num_rational::BigRational;
    use serde::ser::SerializeTuple;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &(BigRational, BigRational), s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&super::format_rational(&q.0))?;
        t.serialize_element(&super::format_rational(&q.1))?;
        t.end()
    }
}
