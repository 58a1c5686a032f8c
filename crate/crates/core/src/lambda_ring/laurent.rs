use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Field, OrderedField};

/// A Laurent polynomial `sum c_e t^e` with finitely many nonzero coefficients.
///
/// Zero coefficients are never stored, so structural equality is ring
/// equality and the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent<F> {
    terms: BTreeMap<i64, F>,
}

impl<F: Field> Laurent<F> {
    pub fn from_terms<I: IntoIterator<Item = (i64, F)>>(terms: I) -> Self {
        let mut out = Self { terms: BTreeMap::new() };
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Ordinary polynomial from ascending integer coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as i64, F::from_i64(c))),
        )
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: F, e: i64) -> Self {
        Self::from_terms([(e, c)])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(F::one(), 1)
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(F::one(), e)
    }

    fn add_term(&mut self, e: i64, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = old.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &F)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> F {
        self.terms.get(&e).cloned().unwrap_or_else(F::zero)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Width of the exponent support; the Euclidean norm of `Λ`.
    /// Zero has span `None`, units have span 0.
    pub fn span(&self) -> Option<u64> {
        Some((self.max_exp()? - self.min_exp()?) as u64)
    }

    /// Degree as an ordinary polynomial (top exponent).
    pub fn degree(&self) -> Option<i64> {
        self.max_exp()
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&F> {
        self.terms.values().next()
    }

    pub fn is_ordinary(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// True for the units `c t^k` of `Λ`.
    pub fn is_unit(&self) -> bool {
        self.span() == Some(0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (*e, x.clone() * c.clone()))
                .collect(),
        }
    }

    /// The ring involution `t -> t^-1`.
    pub fn involution(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Strips the power of `t`: returns `(k, p)` with `self = t^k p`, `p`
    /// ordinary with nonzero constant term.
    pub fn strip_t(&self) -> (i64, Self) {
        match self.min_exp() {
            Some(k) => (k, self.shift(-k)),
            None => (0, Self::zero()),
        }
    }

    /// Normal form under all units `c t^k` of `Λ`: an ordinary monic
    /// polynomial with nonzero constant term.
    pub fn monic_normal(&self) -> Result<Self> {
        let lead = self.leading_coeff().ok_or(Error::ZeroPolynomial)?.inv();
        Ok(self.strip_t().1.scale(&lead))
    }

    /// Equality up to a unit of `Λ`.
    pub fn associates(&self, other: &Self) -> bool {
        match (self.monic_normal(), other.monic_normal()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    pub fn eval(&self, x: &F) -> Option<F> {
        if x.is_zero() {
            if self.is_ordinary() {
                return Some(self.coeff(0));
            }
            return None;
        }
        let xinv = x.inv();
        let mut acc = F::zero();
        for (e, c) in self.terms() {
            let base = if e >= 0 { x } else { &xinv };
            let mut p = F::one();
            for _ in 0..e.unsigned_abs() {
                p = p * base.clone();
            }
            acc = acc + p * c.clone();
        }
        Some(acc)
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c.clone() * F::from_i64(e))),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder by top degree: `self = q d + r` with
    /// `deg r < deg d`. For ordinary inputs this is the usual division in
    /// `F[t]`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dtop = d.max_exp().expect("division by zero polynomial");
        let dlead_inv = d.leading_coeff().unwrap().inv();
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some(rtop) = r.max_exp() {
            if rtop < dtop {
                break;
            }
            let c = r.leading_coeff().unwrap().clone() * dlead_inv.clone();
            let step = Self::monomial(c, rtop - dtop);
            r = &r - &(&step * d);
            q = &q + &step;
        }
        (q, r)
    }

    /// Euclidean division in `Λ`: `self = q d + r` with
    /// `span(r) < span(d)` (or `r = 0`).
    pub fn lambda_div_rem(&self, d: &Self) -> (Self, Self) {
        let (dk, dstrip) = d.strip_t();
        let (ak, astrip) = self.strip_t();
        let (q, r) = astrip.div_rem(&dstrip);
        (q.shift(ak - dk), r.shift(ak))
    }

    /// Exact quotient in `Λ`, if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.lambda_div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }
}

impl<F: OrderedField> Laurent<F> {
    /// Normal form under the units `±t^k`: an ordinary polynomial with
    /// nonzero constant term and positive leading coefficient.
    pub fn normalize_unit(&self) -> Result<Self> {
        let lead = self.leading_coeff().ok_or(Error::ZeroPolynomial)?;
        let (_, p) = self.strip_t();
        Ok(if lead.is_negative() { -p } else { p })
    }
}

impl<F: Field> Zero for Laurent<F> {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for Laurent<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<'a, F: Field> Add<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;

    fn add(self, rhs: &'a Laurent<F>) -> Laurent<F> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;

    fn sub(self, rhs: &'a Laurent<F>) -> Laurent<F> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;

    fn mul(self, rhs: &'a Laurent<F>) -> Laurent<F> {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &Laurent<F> {
    type Output = Laurent<F>;

    fn neg(self) -> Laurent<F> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<F: Field> Neg for Laurent<F> {
    type Output = Laurent<F>;

    fn neg(self) -> Laurent<F> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<Laurent<F>> for Laurent<F> {
            type Output = Laurent<F>;

            fn $m(self, rhs: Laurent<F>) -> Laurent<F> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> AddAssign<&Laurent<F>> for Laurent<F> {
    fn add_assign(&mut self, rhs: &Laurent<F>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl<F: Field> SubAssign<&Laurent<F>> for Laurent<F> {
    fn sub_assign(&mut self, rhs: &Laurent<F>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c.clone());
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| format!("({c:?})t^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> Laurent<F> {
    /// `c t^e` terms from the top degree down, for messages.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .rev()
            .map(|(e, c)| match e {
                0 => c.to_text(),
                _ => format!("{}·t^{e}", c.to_text()),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Laurent<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = *c < BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = e == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Sparse literal `[[exponent, "num/den"], ...]`, highest exponent first.
impl Serialize for Laurent<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .terms()
            .rev()
            .map(|(e, c)| (e, format_rational(c)))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Laurent<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Text(String),
            Int(i64),
        }
        let pairs: Vec<(i64, Coeff)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            let q = match c {
                Coeff::Int(n) => BigRational::from_integer(n.into()),
                Coeff::Text(s) => parse_rational(&s)
                    .ok_or_else(|| D::Error::custom(format!("bad coefficient {s:?}")))?,
            };
            terms.push((e, q));
        }
        Ok(Laurent::from_terms(terms))
    }
}
