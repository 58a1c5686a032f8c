use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::euclid::{gcd, reduce_mod};
use super::Laurent;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// An element of `F(t)` in canonical form: the denominator is monic,
/// ordinary, with nonzero constant term, and shares no factor with the
/// numerator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction<F> {
    num: Laurent<F>,
    den: Laurent<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Laurent<F>, den: Laurent<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (k, den) = den.strip_t();
        let num = num.shift(-k);
        let g = gcd(&num, &den)?;
        let num = num.exact_div(&g).ok_or(Error::InexactDivision)?;
        let den = den.exact_div(&g).ok_or(Error::InexactDivision)?;
        // g is ordinary with nonzero constant term, so den still is
        let lead = den.leading_coeff().expect("nonzero").inv();
        Ok(Self {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: Laurent<F>) -> Self {
        Self {
            num: p,
            den: Laurent::one(),
        }
    }

    pub fn numer(&self) -> &Laurent<F> {
        &self.num
    }

    pub fn denom(&self) -> &Laurent<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn involution(&self) -> Self {
        Self::new(self.num.involution(), self.den.involution()).expect("nonzero denominator")
    }

    pub fn scale_poly(&self, p: &Laurent<F>) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }
}

impl<F: Field> Zero for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(Laurent::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RationalFunction<F> {
    fn one() -> Self {
        Self::from_poly(Laurent::one())
    }
}

impl<F: Field> Add for RationalFunction<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den).expect("nonzero");
        }
        let g = gcd(&self.den, &rhs.den).expect("nonzero");
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        Self::new(num, &a * &rhs.den).expect("nonzero")
    }
}

impl<F: Field> Neg for RationalFunction<F> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<F: Field> Sub for RationalFunction<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for RationalFunction<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl<F: Field> Div for RationalFunction<F> {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("nonzero")
    }
}

impl<F: fmt::Debug> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

/// `F(t)` is itself an exact field, so matrices over it can be inverted by
/// ordinary elimination.
impl<F: Field> Field for RationalFunction<F> {
    fn from_i64(n: i64) -> Self {
        Self::from_poly(Laurent::constant(F::from_i64(n)))
    }
}

/// A coset in `F(t)/Λ`, stored as the unique proper fraction `r/d` with
/// `deg r < deg d`, `d` monic ordinary with `d(0) != 0` and `gcd(r, d) = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct QtModLambda<F> {
    num: Laurent<F>,
    den: Laurent<F>,
}

impl<F: Field> QtModLambda<F> {
    pub fn zero() -> Self {
        Self {
            num: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &Laurent<F> {
        &self.num
    }

    pub fn denom(&self) -> &Laurent<F> {
        &self.den
    }

    pub fn as_fraction(&self) -> RationalFunction<F> {
        RationalFunction {
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn from_parts(num: Laurent<F>, den: Laurent<F>) -> Result<Self> {
        Ok(reduce_mod_lambda(&RationalFunction::new(num, den)?))
    }

    pub fn add(&self, other: &Self) -> Self {
        reduce_mod_lambda(&(self.as_fraction() + other.as_fraction()))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Action of `Λ` on `F(t)/Λ`.
    pub fn scale(&self, p: &Laurent<F>) -> Self {
        reduce_mod_lambda(&self.as_fraction().scale_poly(p))
    }

    pub fn involution(&self) -> Self {
        reduce_mod_lambda(&self.as_fraction().involution())
    }
}

/// Canonical coset representative of `r` modulo `Λ`. Zero exactly when
/// `r ∈ Λ`.
pub fn reduce_mod_lambda<F: Field>(r: &RationalFunction<F>) -> QtModLambda<F> {
    if r.den.max_exp() == Some(0) {
        return QtModLambda::zero();
    }
    // rem ≡ num mod den, so it stays coprime to den
    let rem = reduce_mod(&r.num, &r.den).expect("nonzero denominator");
    if rem.is_zero() {
        return QtModLambda::zero();
    }
    QtModLambda {
        num: rem,
        den: r.den.clone(),
    }
}

impl<F: fmt::Debug> fmt::Debug for QtModLambda<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({:?}) / ({:?})]", self.num, self.den)
    }
}

impl fmt::Display for QtModLambda<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RationalFunction<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[derive(Serialize)]
struct FractionLiteral<'a> {
    num: &'a Laurent<BigRational>,
    den: &'a Laurent<BigRational>,
}

/// `{"num": poly-literal, "den": poly-literal}`.
impl Serialize for QtModLambda<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FractionLiteral {
            num: &self.num,
            den: &self.den,
        }
        .serialize(s)
    }
}

impl Serialize for RationalFunction<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FractionLiteral {
            num: &self.num,
            den: &self.den,
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{LaurentPoly, Rational};

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    #[test]
    fn canonical_form_clears_t_and_gcd() {
        let r = RationalFunction::new(p(&[-1, 0, 1]).shift(2), p(&[-1, 1]).shift(-3).scale(&Rational::from_integer(2.into())))
            .unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &p(&[1, 1]).shift(5).scale(&Rational::new(1.into(), 2.into())));
        assert_eq!(RationalFunction::new(p(&[1]), LaurentPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn long_division_representative() {
        // (t^2 + 1)/(t - 2) = t + 2 + 5/(t - 2)
        let c = QtModLambda::from_parts(p(&[1, 0, 1]), p(&[-2, 1])).unwrap();
        assert_eq!(c.numer(), &p(&[5]));
        assert_eq!(c.denom(), &p(&[-2, 1]));
    }

    #[test]
    fn lambda_elements_vanish() {
        let c = QtModLambda::from_parts(p(&[-1, 0, 0, 1]), p(&[-1, 1])).unwrap();
        assert!(c.is_zero());
        let phi6 = p(&[1, -1, 1]);
        let sq = &phi6 * &phi6;
        let c = QtModLambda::from_parts(&phi6 * &phi6.involution(), sq).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn coset_action_and_involution() {
        let phi6 = p(&[1, -1, 1]);
        let c = QtModLambda::from_parts(LaurentPoly::one(), &phi6 * &phi6).unwrap();
        assert!(!c.is_zero());
        assert!(c.scale(&(&phi6 * &phi6)).is_zero());
        assert!(!c.scale(&phi6).is_zero());
        assert_eq!(c.involution().involution(), c);
    }
}
