//! Rigorous rational enclosures of `arctan` and `π`.

use num_traits::{One, Signed, Zero};

use crate::scalar::{ceil_dyadic, floor_dyadic, pow2_neg, Field};
use crate::Rational;

/// A closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn excludes_zero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Widened to the nearest multiples of `2^-bits`.
    pub fn outward(&self, bits: u32) -> Self {
        Self {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = Rational::from_i64(k);
        let (a, b) = (&self.lo * &k, &self.hi * &k);
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }
}

// Alternating Taylor series on 0 <= x <= 1/2; consecutive partial sums
// bracket the value once the terms drop below 2^-bits.
fn series(x: &Rational, bits: u32) -> Enclosure {
    if x.is_zero() {
        return Enclosure::point(Rational::zero());
    }
    let eps = pow2_neg(bits);
    let x2 = x * x;
    let mut power = x.clone();
    let mut sum = Rational::zero();
    let mut n: i64 = 0;
    loop {
        let term = &power / Rational::from_i64(2 * n + 1);
        let signed = if n % 2 == 0 { term.clone() } else { -term.clone() };
        let next = &sum + &signed;
        if term < eps {
            return if sum <= next {
                Enclosure { lo: sum, hi: next }
            } else {
                Enclosure { lo: next, hi: sum }
            };
        }
        sum = next;
        power = &power * &x2;
        n += 1;
    }
}

fn atan_small(lo: &Rational, hi: &Rational, bits: u32) -> Enclosure {
    let lo = floor_dyadic(lo, bits + 8).max(Rational::zero());
    let hi = ceil_dyadic(hi, bits + 8);
    Enclosure {
        lo: series(&lo, bits + 8).lo,
        hi: series(&hi, bits + 8).hi,
    }
}

/// Enclosure of `π` of width about `2^-bits`.
pub fn pi_enclosure(bits: u32) -> Enclosure {
    let a = atan_small(&Rational::new(1.into(), 5.into()), &Rational::new(1.into(), 5.into()), bits + 6);
    let b = atan_small(
        &Rational::new(1.into(), 239.into()),
        &Rational::new(1.into(), 239.into()),
        bits + 6,
    );
    Enclosure {
        lo: a.lo * Rational::from_i64(16) - b.hi * Rational::from_i64(4),
        hi: a.hi * Rational::from_i64(16) - b.lo * Rational::from_i64(4),
    }
}

/// Enclosure of `arctan(x)` for `x >= 0`.
pub fn atan_enclosure(x: &Rational, bits: u32) -> Enclosure {
    assert!(!x.is_negative(), "arctan enclosure needs x >= 0");
    let half = Rational::new(1.into(), 2.into());
    if x > &Rational::one() {
        let pi = pi_enclosure(bits + 2);
        let inner = atan_enclosure(&x.inv(), bits + 2);
        return Enclosure {
            lo: &pi.lo / Rational::from_i64(2) - inner.hi,
            hi: &pi.hi / Rational::from_i64(2) - inner.lo,
        };
    }
    if x > &half {
        // arctan(x) = arctan(1/2) + arctan((2x - 1)/(2 + x)), the second
        // argument lying in (0, 1/3]
        let y = (x * Rational::from_i64(2) - Rational::one()) / (x + Rational::from_i64(2));
        return atan_small(&half, &half, bits + 2).add(&atan_small(&y, &y, bits + 2));
    }
    atan_small(x, x, bits)
}

/// Enclosure of `arctan(s) / π` (the turn of the point with half-angle
/// tangent `s`, as a fraction of the full circle) over `s ∈ [lo, hi]`.
pub fn turn_enclosure(lo: &Rational, hi: &Rational, bits: u32) -> Enclosure {
    let pi = pi_enclosure(bits + 4);
    let a = atan_enclosure(lo, bits + 4);
    let b = atan_enclosure(hi, bits + 4);
    Enclosure {
        lo: a.lo / &pi.hi,
        hi: b.hi / &pi.lo,
    }
}
