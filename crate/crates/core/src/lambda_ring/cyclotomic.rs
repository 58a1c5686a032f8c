//! Cyclotomic polynomials and the index set of integers with at least three
//! distinct prime divisors.

use num_traits::One;

use super::Laurent;
use crate::error::{Error, Result};
use crate::scalar::Field;

pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    distinct_prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

fn mobius(n: u64) -> i8 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let large: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    out.extend(large);
    out
}

/// `true` iff `k` has at least three distinct prime divisors.
pub fn is_in_t(k: u64) -> bool {
    distinct_prime_factors(k).len() >= 3
}

/// The `k`-th cyclotomic polynomial, from the Möbius product
/// `Φ_k = Π_{d | k} (t^d - 1)^{μ(k/d)}`.
pub fn cyclotomic<F: Field>(k: u64) -> Result<Laurent<F>> {
    if k == 0 {
        return Err(Error::CyclotomicIndex);
    }
    let mut num = Laurent::<F>::one();
    let mut den = Laurent::<F>::one();
    for d in divisors(k) {
        let factor = Laurent::from_terms([(d as i64, F::one()), (0, -F::one())]);
        match mobius(k / d) {
            1 => num = &num * &factor,
            -1 => den = &den * &factor,
            _ => {}
        }
    }
    num.exact_div(&den).ok_or(Error::InexactDivision)
}

/// Every `k` with `Φ_k | p`, for `p` ordinary up to units. Only indices with
/// `φ(k) <= deg p` can qualify; `φ(k) >= sqrt(k/2)` bounds the search.
pub fn cyclotomic_divisors<F: Field>(p: &Laurent<F>) -> Vec<u64> {
    let Some(deg) = p.span() else {
        return Vec::new();
    };
    let bound = 2 * deg * deg + 2;
    (1..=bound)
        .filter(|&k| euler_phi(k) <= deg)
        .filter(|&k| {
            let phi: Laurent<F> = cyclotomic(k).expect("k >= 1");
            phi.divides(p)
        })
        .collect()
}

/// Recognizes `p ≐ Φ_k^e` (up to units), returning `(k, e)`.
pub fn as_cyclotomic_power<F: Field>(p: &Laurent<F>) -> Option<(u64, u32)> {
    let target = p.monic_normal().ok()?;
    let deg = target.span()?;
    if deg == 0 {
        return None;
    }
    for k in cyclotomic_divisors(&target) {
        let phi_deg = euler_phi(k);
        if deg % phi_deg != 0 {
            continue;
        }
        let e = (deg / phi_deg) as u32;
        let phi: Laurent<F> = cyclotomic(k).ok()?;
        if phi.pow(e) == target {
            return Some((k, e));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LaurentPoly;

    // independent route: Φ_k = (t^k - 1) / Π_{d | k, d < k} Φ_d
    fn recursive_cyclotomic(k: u64) -> LaurentPoly {
        let one = crate::Rational::one();
        let mut acc = LaurentPoly::from_terms([(k as i64, one.clone()), (0, -one)]);
        for d in divisors(k) {
            if d < k {
                acc = acc.exact_div(&recursive_cyclotomic(d)).unwrap();
            }
        }
        acc
    }

    #[test]
    fn small_indices() {
        assert_eq!(cyclotomic::<crate::Rational>(1).unwrap(), LaurentPoly::from_coeffs(&[-1, 1]));
        assert_eq!(cyclotomic::<crate::Rational>(6).unwrap(), LaurentPoly::from_coeffs(&[1, -1, 1]));
        assert_eq!(cyclotomic::<crate::Rational>(0), Err(Error::CyclotomicIndex));
    }

    #[test]
    fn matches_recursive_division() {
        for k in 1..=60 {
            let phi: LaurentPoly = cyclotomic(k).unwrap();
            assert_eq!(phi, recursive_cyclotomic(k), "k = {k}");
            assert_eq!(phi.degree(), Some(euler_phi(k) as i64));
        }
    }

    #[test]
    fn phi30_at_one() {
        let phi: LaurentPoly = cyclotomic(30).unwrap();
        assert_eq!(phi.degree(), Some(8));
        assert_eq!(phi.eval(&crate::Rational::one()), Some(crate::Rational::one()));
    }

    #[test]
    fn three_prime_set() {
        assert!(is_in_t(30));
        assert!(!is_in_t(12));
        assert!(is_in_t(60));
        assert!(!is_in_t(1));
        assert!(is_in_t(105));
    }

    #[test]
    fn power_recognition() {
        let phi: LaurentPoly = cyclotomic(10).unwrap();
        let sq = phi.pow(2).shift(-3).scale(&crate::Rational::from_integer((-4).into()));
        assert_eq!(as_cyclotomic_power(&sq), Some((10, 2)));
        assert_eq!(as_cyclotomic_power(&LaurentPoly::from_coeffs(&[1, -3, 1])), None);
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(euler_phi(60), 16);
    }
}
