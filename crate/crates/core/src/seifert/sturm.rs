//! Real root isolation over `Q` by Sturm sequences.

use num_traits::{Signed, Zero};

use crate::scalar::Field;
use crate::{LaurentPoly, Rational};

fn squarefree(p: &LaurentPoly) -> LaurentPoly {
    let d = p.derivative();
    if d.is_zero() {
        return p.clone();
    }
    let g = crate::lambda_ring::gcd(p, &d).expect("p nonzero");
    p.exact_div(&g).expect("gcd divides")
}

/// A Sturm chain for the squarefree part of an ordinary polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<LaurentPoly>,
}

impl SturmChain {
    pub fn new(p: &LaurentPoly) -> Self {
        assert!(p.is_ordinary() && !p.is_zero(), "Sturm chain of a non-polynomial");
        let f0 = squarefree(p);
        let mut chain = vec![f0.clone(), f0.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(-r);
        }
        chain.pop();
        Self { chain }
    }

    /// The squarefree polynomial the chain was built from.
    pub fn base(&self) -> &LaurentPoly {
        &self.chain[0]
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for f in &self.chain {
            let v = f.eval(x).expect("ordinary");
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }

    pub fn is_root(&self, x: &Rational) -> bool {
        self.chain[0].eval(x).expect("ordinary").is_zero()
    }

    /// Disjoint intervals `(lo, hi)`, sorted, each holding exactly one root
    /// in the open interval `(a, b)`. Requires `a`, `b` not roots.
    pub fn isolate(&self, a: &Rational, b: &Rational) -> Vec<RootInterval> {
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = stack.pop() {
            match self.count(&lo, &hi) {
                0 => {}
                1 => out.push(RootInterval { lo, hi }),
                _ => {
                    let mid = self.split_point(&lo, &hi);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    fn split_point(&self, lo: &Rational, hi: &Rational) -> Rational {
        let width = hi - lo;
        // the midpoint, then 1/3, 2/5, 3/7, ... of the way; only finitely
        // many of these can be roots
        std::iter::once(Rational::new(1.into(), 2.into()))
            .chain((1..).map(|n: i64| Rational::new(n.into(), (2 * n + 1).into())))
            .map(|f| lo + &width * f)
            .find(|m| !self.is_root(m))
            .expect("finitely many roots")
    }

    /// Bisects `iv` until its width is at most `width`. An exact rational
    /// root collapses the interval to a point.
    pub fn refine(&self, iv: &mut RootInterval, width: &Rational) {
        let f = &self.chain[0];
        while &(&iv.hi - &iv.lo) > width {
            let mid = (&iv.lo + &iv.hi) / Rational::from_i64(2);
            let fm = f.eval(&mid).expect("ordinary");
            if fm.is_zero() {
                iv.lo = mid.clone();
                iv.hi = mid;
                return;
            }
            let flo = f.eval(&iv.lo).expect("ordinary");
            if flo.is_positive() == fm.is_positive() {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
    }
}

/// A closed interval `[lo, hi]` holding exactly one root; when `lo < hi`
/// neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// `1 + max |a_i / a_n|`, a strict upper bound on the absolute value of
/// every root.
pub fn cauchy_bound(p: &LaurentPoly) -> Rational {
    let lead = p.leading_coeff().expect("nonzero").abs();
    let top = p.max_exp().unwrap();
    let m = p
        .terms()
        .filter(|(e, _)| *e != top)
        .map(|(_, c)| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::from_i64(1)
}
