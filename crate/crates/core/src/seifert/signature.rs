use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::arctan::{turn_enclosure, Enclosure};
use super::inertia::hermitian_inertia;
use super::sturm::{cauchy_bound, RootInterval, SturmChain};
use super::{alexander_polynomial, SeifertMatrix};
use crate::error::{Error, Result};
use crate::lambda_ring::{cyclotomic_divisors, euler_phi};
use crate::matrix::Matrix;
use crate::scalar::{pow2_neg, serde_rational, Field};
use crate::{GaussianRational, LaurentPoly, Rational};

/// Default enclosure width exponent: enclosures are refined to `2^-50`.
pub const DEFAULT_PRECISION: u32 = 50;

/// An exact rational point `re + i·im` with `re² + im² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCirclePoint {
    #[serde(with = "serde_rational")]
    re: Rational,
    #[serde(with = "serde_rational")]
    im: Rational,
}

impl UnitCirclePoint {
    pub fn new(re: Rational, im: Rational) -> Result<Self> {
        if &re * &re + &im * &im != Rational::one() {
            return Err(Error::NotOnUnitCircle);
        }
        Ok(Self { re, im })
    }

    pub fn one() -> Self {
        Self {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }

    /// The point at angle `2·arctan(s)`:
    /// `((1 - s²)/(1 + s²), 2s/(1 + s²))`.
    pub fn from_half_angle_tangent(s: &Rational) -> Self {
        let s2 = s * s;
        let den = Rational::one() + &s2;
        Self {
            re: (Rational::one() - &s2) / &den,
            im: (s * Rational::from_i64(2)) / den,
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn as_gaussian(&self) -> GaussianRational {
        GaussianRational::new(self.re.clone(), self.im.clone())
    }
}

/// Signature of `(1 - ω)V + (1 - ω̄)Vᵀ`.
pub fn levine_tristram_at(v: &SeifertMatrix, w: &UnitCirclePoint) -> i64 {
    let n = v.size();
    let one = GaussianRational::one();
    let a = one.clone() - w.as_gaussian();
    let b = one - w.conj().as_gaussian();
    let h = Matrix::from_fn(n, n, |i, j| {
        let vij = GaussianRational::from_i64(v.entries()[i][j]);
        let vji = GaussianRational::from_i64(v.entries()[j][i]);
        a.clone() * vij + b.clone() * vji
    });
    hermitian_inertia(&h).signature()
}

/// Writes a palindromic `Δ` of degree `2d` as `t^d p(t + t⁻¹)`, returning
/// `p`.
pub fn symmetrize(delta: &LaurentPoly) -> Result<LaurentPoly> {
    let (_, delta) = delta.strip_t();
    let deg = delta.degree().ok_or(Error::ZeroPolynomial)?;
    if deg % 2 != 0 || delta != delta.involution().shift(deg) {
        return Err(Error::InvalidSeifert("Alexander polynomial is not symmetric".into()));
    }
    let d = deg / 2;
    let x = LaurentPoly::t();
    // D_j(x) = t^j + t^-j: D_0 = 2, D_1 = x, D_{j+1} = x D_j - D_{j-1}
    let mut prev = LaurentPoly::constant(Rational::from_i64(2));
    let mut cur = x.clone();
    let mut p = LaurentPoly::constant(delta.coeff(d));
    for j in 1..=d {
        p += &cur.scale(&delta.coeff(d + j));
        let next = &(&x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(p)
}

/// `(1 + s²)^d p(x)` under `x = 2(1 - s²)/(1 + s²)`. Its positive roots are
/// the half-angle tangents of the unit-circle roots of `Δ` in the upper
/// half plane.
pub fn half_angle_polynomial(p: &LaurentPoly) -> LaurentPoly {
    let d = p.degree().unwrap_or(0).max(0) as u32;
    let a = LaurentPoly::from_coeffs(&[2, 0, -2]);
    let b = LaurentPoly::from_coeffs(&[1, 0, 1]);
    let mut q = LaurentPoly::zero();
    for (j, c) in p.terms() {
        let j = j as u32;
        q += &(&a.pow(j) * &b.pow(d - j)).scale(c);
    }
    q
}

/// One jump of the signature function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpInterval {
    /// Enclosure of `tan(θ/2)`; negative on the lower half circle.
    #[serde(serialize_with = "crate::scalar::serde_rational_pair::serialize")]
    pub tangent: (Rational, Rational),
    /// Enclosure of `θ / 2π`.
    #[serde(serialize_with = "crate::scalar::serde_rational_pair::serialize")]
    pub turn: (Rational, Rational),
    /// `θ / 2π` exactly, when the root is a root of unity.
    #[serde(serialize_with = "crate::scalar::serde_rational_opt::serialize")]
    pub exact_turn: Option<Rational>,
}

/// The Levine–Tristram signature as a step function on the circle.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureFunction {
    pub jump_angles: Vec<JumpInterval>,
    /// Values on the open arcs, counterclockwise from angle 0.
    pub arc_values: Vec<i64>,
    pub cyclotomic_flag: bool,
    pub precision: u32,
    #[serde(skip)]
    chain: Option<SturmChain>,
    #[serde(skip)]
    upper: Vec<RootInterval>,
}

/// `ρ = ∫ σ_ω dω` over the circle of total measure 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoIntegral {
    #[serde(serialize_with = "crate::scalar::serde_rational_opt::serialize")]
    pub exact: Option<Rational>,
    #[serde(serialize_with = "serialize_enclosure")]
    pub enclosure: Enclosure,
}

fn serialize_enclosure<S: serde::Serializer>(e: &Enclosure, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::scalar::serde_rational_pair::serialize(&(e.lo.clone(), e.hi.clone()), s)
}

impl RhoIntegral {
    pub fn is_certified_nonzero(&self) -> bool {
        match &self.exact {
            Some(x) => !x.is_zero(),
            None => self.enclosure.excludes_zero(),
        }
    }
}

pub fn signature_function(v: &SeifertMatrix) -> SignatureFunction {
    signature_function_with_precision(v, DEFAULT_PRECISION)
}

pub fn signature_function_with_precision(v: &SeifertMatrix, precision: u32) -> SignatureFunction {
    let delta = alexander_polynomial(v);
    if delta.degree() == Some(0) {
        return SignatureFunction {
            jump_angles: Vec::new(),
            arc_values: vec![0],
            cyclotomic_flag: true,
            precision,
            chain: None,
            upper: Vec::new(),
        };
    }
    let p = symmetrize(&delta).expect("Alexander polynomials of Seifert matrices are symmetric");
    let q = half_angle_polynomial(&p);
    let chain = SturmChain::new(&q);
    let mut upper = chain.isolate(&Rational::zero(), &cauchy_bound(chain.base()));

    let two = Rational::from_i64(2);
    let cross = SturmChain::new(&p).count(&-two.clone(), &two);
    assert_eq!(cross, upper.len(), "root count in x and in tan(θ/2) disagree");

    if let Some(first) = upper.first_mut() {
        while first.lo.is_zero() {
            let w = first.width() / &two;
            chain.refine(first, &w);
        }
    }
    let samples: Vec<Rational> = if upper.is_empty() {
        vec![Rational::one()]
    } else {
        let mut s = vec![&upper[0].lo / &two];
        for w in upper.windows(2) {
            s.push((&w[0].hi + &w[1].lo) / &two);
        }
        s.push(&upper.last().unwrap().hi + Rational::one());
        s
    };
    let half: Vec<i64> = samples
        .iter()
        .map(|s| levine_tristram_at(v, &UnitCirclePoint::from_half_angle_tangent(s)))
        .collect();

    let width = pow2_neg(precision);
    for iv in upper.iter_mut() {
        chain.refine(iv, &width);
    }

    let exact = exact_turns(&delta, upper.len());
    let mut jumps = Vec::new();
    for (j, iv) in upper.iter().enumerate() {
        let enc = turn_enclosure(&iv.lo, &iv.hi, precision + 8).outward(precision + 8);
        let exact_turn = exact.as_ref().map(|e| e[j].clone());
        if let Some(x) = &exact_turn {
            assert!(enc.contains(x), "root of unity outside its isolating interval");
        }
        jumps.push(JumpInterval {
            tangent: (iv.lo.clone(), iv.hi.clone()),
            turn: (enc.lo, enc.hi),
            exact_turn,
        });
    }
    let mirrored: Vec<JumpInterval> = jumps
        .iter()
        .rev()
        .map(|j| JumpInterval {
            tangent: (-&j.tangent.1, -&j.tangent.0),
            turn: (Rational::one() - &j.turn.1, Rational::one() - &j.turn.0),
            exact_turn: j.exact_turn.as_ref().map(|x| Rational::one() - x),
        })
        .collect();
    jumps.extend(mirrored);

    let mut arc_values = half.clone();
    arc_values.extend(half.iter().rev().skip(1));
    SignatureFunction {
        jump_angles: jumps,
        arc_values,
        cyclotomic_flag: exact.is_some(),
        precision,
        chain: Some(chain),
        upper,
    }
}

// Sorted turns j/k in (0, 1/2) of the roots of unity among the roots of Δ,
// when these account for all `m` unit-circle roots in the upper half.
fn exact_turns(delta: &LaurentPoly, m: usize) -> Option<Vec<Rational>> {
    let ks: Vec<u64> = cyclotomic_divisors(delta).into_iter().filter(|&k| k >= 3).collect();
    let total: u64 = ks.iter().map(|&k| euler_phi(k) / 2).sum();
    if total as usize != m {
        return None;
    }
    let mut turns: Vec<Rational> = ks
        .iter()
        .flat_map(|&k| {
            (1..k)
                .filter(move |&j| 2 * j < k && num_integer::gcd(j, k) == 1)
                .map(move |j| Rational::new((j as i64).into(), (k as i64).into()))
        })
        .collect();
    turns.sort();
    Some(turns)
}

impl SignatureFunction {
    /// Number of jumps in the open upper half circle.
    pub fn upper_jump_count(&self) -> usize {
        self.upper.len()
    }

    /// Isolating intervals for the half-angle tangents of the upper jumps.
    pub fn upper_tangent_intervals(&self) -> &[RootInterval] {
        &self.upper
    }

    /// Values on the upper half arcs, from angle 0 to angle π.
    pub fn upper_values(&self) -> &[i64] {
        &self.arc_values[..=self.upper.len()]
    }

    /// `ρ = v_m + 2 Σ_j τ_j (v_{j-1} - v_j)` with `τ_j` the turns of the
    /// upper jumps and `v_j` the upper arc values.
    pub fn rho(&self) -> RhoIntegral {
        let v = self.upper_values();
        let m = self.upper.len();
        let coeffs: Vec<i64> = (1..=m).map(|j| 2 * (v[j - 1] - v[j])).collect();
        let base = Rational::from_i64(v[m]);

        let exact = if self.cyclotomic_flag {
            let mut acc = base.clone();
            for (j, c) in coeffs.iter().enumerate() {
                let t = self.jump_angles[j].exact_turn.as_ref().expect("cyclotomic");
                acc += t * Rational::from_i64(*c);
            }
            Some(acc)
        } else {
            None
        };

        let target = pow2_neg(self.precision);
        let mut upper = self.upper.clone();
        let mut bits = self.precision + 8;
        let enclosure = loop {
            let mut enc = Enclosure::point(base.clone());
            for (iv, c) in upper.iter().zip(&coeffs) {
                enc = enc.add(&turn_enclosure(&iv.lo, &iv.hi, bits).scale_int(*c));
            }
            let enc = enc.outward(self.precision + 4);
            if enc.width() <= target {
                break enc;
            }
            bits += 16;
            let w = pow2_neg(bits);
            let chain = self.chain.as_ref().expect("jumps imply a chain");
            for iv in upper.iter_mut() {
                chain.refine(iv, &w);
            }
        };
        let enclosure = match &exact {
            Some(x) => {
                assert!(enclosure.contains(x), "exact ρ outside its enclosure");
                Enclosure::point(x.clone())
            }
            None => enclosure,
        };
        RhoIntegral { exact, enclosure }
    }

    /// Value at the point with half-angle tangent `s`, or `None` when `s`
    /// is not separated from every jump by the stored intervals.
    pub fn value_at_tangent(&self, s: &Rational) -> Option<i64> {
        let s_abs = s.abs();
        let mut idx = 0;
        for iv in &self.upper {
            if s_abs > iv.hi {
                idx += 1;
            } else if s_abs >= iv.lo {
                return None;
            }
        }
        Some(self.arc_values[idx])
    }
}

pub fn rho_integral(v: &SeifertMatrix) -> RhoIntegral {
    rho_integral_with_precision(v, DEFAULT_PRECISION)
}

pub fn rho_integral_with_precision(v: &SeifertMatrix, precision: u32) -> RhoIntegral {
    signature_function_with_precision(v, precision).rho()
}
