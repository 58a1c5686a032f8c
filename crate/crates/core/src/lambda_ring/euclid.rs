use num_traits::{One, Zero};

use super::Laurent;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Output of [`gcd_bezout`]: `f p + h q = gcd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout<F> {
    pub gcd: Laurent<F>,
    pub f: Laurent<F>,
    pub h: Laurent<F>,
}

impl<F: Field> Bezout<F> {
    pub fn is_coprime(&self) -> bool {
        self.gcd.is_one()
    }
}

/// Extended Euclid in `Λ`.
///
/// The powers of `t` are stripped first, Euclid runs in `F[t]`, and the
/// coefficients are shifted back. The gcd is returned monic, ordinary and
/// with nonzero constant term, so coprime inputs give exactly `1`.
pub fn gcd_bezout<F: Field>(p: &Laurent<F>, q: &Laurent<F>) -> Result<Bezout<F>> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (pk, ps) = p.strip_t();
    let (qk, qs) = q.strip_t();

    // invariant: r0 = s0 ps + u0 qs, r1 = s1 ps + u1 qs
    let (mut r0, mut r1) = (ps, qs);
    let (mut s0, mut s1) = (Laurent::one(), Laurent::zero());
    let (mut u0, mut u1) = (Laurent::zero(), Laurent::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1);
        let mut s2 = &s0 - &(&quot * &s1);
        let mut u2 = &u0 - &(&quot * &u1);
        // monic remainders keep the coefficients from growing
        let rem = match rem.leading_coeff() {
            Some(l) => {
                let inv = l.inv();
                s2 = s2.scale(&inv);
                u2 = u2.scale(&inv);
                rem.scale(&inv)
            }
            None => rem,
        };
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        u0 = std::mem::replace(&mut u1, u2);
    }
    let lead_inv = r0.leading_coeff().expect("nonzero gcd").inv();
    // r0 is ordinary with nonzero constant term since ps, qs are
    Ok(Bezout {
        gcd: r0.scale(&lead_inv),
        f: s0.scale(&lead_inv).shift(-pk),
        h: u0.scale(&lead_inv).shift(-qk),
    })
}

/// Monic gcd in `Λ`.
pub fn gcd<F: Field>(p: &Laurent<F>, q: &Laurent<F>) -> Result<Laurent<F>> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (p.strip_t().1, q.strip_t().1);
    while !r1.is_zero() {
        let rem = r0.div_rem(&r1).1;
        r0 = std::mem::replace(&mut r1, rem);
    }
    let lead_inv = r0.leading_coeff().expect("nonzero gcd").inv();
    Ok(r0.scale(&lead_inv))
}

/// Monic lcm in `Λ`.
pub fn lcm<F: Field>(p: &Laurent<F>, q: &Laurent<F>) -> Result<Laurent<F>> {
    if p.is_zero() || q.is_zero() {
        return Ok(Laurent::zero());
    }
    let g = gcd(p, q)?;
    let prod = p * q;
    prod.exact_div(&g)
        .ok_or(Error::InexactDivision)?
        .monic_normal()
}

/// Canonical representative of `x` in `Λ/(d)`: the ordinary polynomial of
/// degree below `deg(monic_normal(d))` congruent to `x`.
pub fn reduce_mod<F: Field>(x: &Laurent<F>, d: &Laurent<F>) -> Result<Laurent<F>> {
    let d = d.monic_normal()?;
    if d.max_exp() == Some(0) || x.is_zero() {
        return Ok(Laurent::zero());
    }
    let (k, xs) = x.strip_t();
    let mut r = xs.div_rem(&d).1;
    if k > 0 {
        let t = Laurent::t();
        for _ in 0..k {
            r = (&r * &t).div_rem(&d).1;
        }
    } else if k < 0 {
        let tinv = inverse_of_t(&d);
        for _ in 0..(-k) {
            r = (&r * &tinv).div_rem(&d).1;
        }
    }
    Ok(r)
}

// d monic ordinary with d(0) != 0: t * (d - d0)/t = -d0 (mod d)
fn inverse_of_t<F: Field>(d: &Laurent<F>) -> Laurent<F> {
    let d0 = d.coeff(0);
    let e = (d - &Laurent::constant(d0.clone())).shift(-1);
    e.scale(&(-d0.inv()))
}
