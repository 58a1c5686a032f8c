//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls the library's algorithms; the library is only
//! used for its data types and ring operations.
#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rhosplit::gamma_group::GammaElement;
use rhosplit::lambda_ring::QtModLambda;
use rhosplit::{GaussianRational, LaurentPoly, PolyMatrix, Rational};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Dense polynomials over Q, ascending coefficients, no trailing zeros.
pub mod dense {
    use super::*;

    pub type P = Vec<Rational>;

    pub fn trim(mut p: P) -> P {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    /// `p = t^shift · P(t)` with `P(0) != 0`.
    pub fn from_laurent(p: &LaurentPoly) -> (i64, P) {
        let Some(lo) = p.min_exp() else { return (0, Vec::new()) };
        let hi = p.max_exp().unwrap();
        (lo, (lo..=hi).map(|e| p.coeff(e)).collect())
    }

    pub fn to_laurent(p: &P) -> LaurentPoly {
        LaurentPoly::from_terms(p.iter().enumerate().map(|(e, c)| (e as i64, c.clone())))
    }

    pub fn add(a: &P, b: &P) -> P {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| a.get(i).cloned().unwrap_or_else(Zero::zero) + b.get(i).cloned().unwrap_or_else(Zero::zero))
            .collect())
    }

    pub fn scale(a: &P, c: &Rational) -> P {
        trim(a.iter().map(|x| x * c).collect())
    }

    pub fn sub(a: &P, b: &P) -> P {
        add(a, &scale(b, &q(-1)))
    }

    pub fn mul(a: &P, b: &P) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn divrem(a: &P, b: &P) -> (P, P) {
        assert!(!b.is_empty());
        let mut r = a.clone();
        let mut quo = vec![Rational::zero(); a.len().saturating_sub(b.len()) + 1];
        let lead = b.last().unwrap();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / lead;
            for (i, y) in b.iter().enumerate() {
                r[i + shift] -= &c * y;
            }
            quo[shift] = c;
            r = trim(r);
        }
        (trim(quo), r)
    }

    pub fn monic(a: &P) -> P {
        match a.last() {
            Some(l) => scale(a, &(Rational::one() / l)),
            None => Vec::new(),
        }
    }

    pub fn gcd(a: &P, b: &P) -> P {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = divrem(&x, &y).1;
            x = y;
            y = r;
        }
        monic(&x)
    }

    /// `Φ_n = (t^n - 1) / Π_{d | n, d < n} Φ_d`.
    pub fn cyclotomic(n: u64) -> P {
        let mut num = vec![Rational::zero(); n as usize + 1];
        num[0] = q(-1);
        num[n as usize] = q(1);
        for d in 1..n {
            if n.is_multiple_of(d) {
                let (quo, rem) = divrem(&num, &cyclotomic(d));
                assert!(rem.is_empty());
                num = quo;
            }
        }
        num
    }

    pub fn eval_real(p: &P, x: &Rational) -> Rational {
        p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn sign_changes(chain: &[P], x: &Rational) -> usize {
        let signs: Vec<bool> = chain
            .iter()
            .map(|p| eval_real(p, x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots of `p` in `(a, b]`, by a Sturm sequence.
    pub fn sturm_count(p: &P, a: &Rational, b: &Rational) -> usize {
        let deriv: P = trim(p.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect());
        let mut chain = vec![p.clone(), deriv];
        while !chain.last().unwrap().is_empty() {
            let n = chain.len();
            let r = divrem(&chain[n - 2], &chain[n - 1]).1;
            chain.push(scale(&r, &q(-1)));
        }
        chain.pop();
        sign_changes(&chain, a) - sign_changes(&chain, b)
    }

    /// For `Δ` symmetric up to a unit, the polynomial `P` with
    /// `t^-g Δ(t) = ±P(t + t^-1)`.
    pub fn in_cosine(delta: &LaurentPoly) -> P {
        let (_, mut d) = from_laurent(delta);
        let g = (d.len() - 1) / 2;
        let mut out = vec![Rational::zero(); g + 1];
        // peel off c · (t + 1/t)^j · t^g from the top, working on the
        // coefficient list of t^g · (Laurent part)
        for j in (0..=g).rev() {
            let c = d[g + j].clone();
            if c.is_zero() {
                continue;
            }
            out[j] = c.clone();
            let mut binom = Rational::one();
            for i in 0..=j {
                // (t + 1/t)^j has coefficient C(j, i) at t^(j - 2i)
                let e = g + j - 2 * i;
                d[e] -= &c * &binom;
                binom = binom * q((j - i) as i64) / q(i as i64 + 1);
            }
        }
        assert!(d.iter().all(Zero::is_zero), "not symmetric");
        trim(out)
    }

    pub fn eval(p: &P, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::new(Rational::zero(), Rational::zero());
        for c in p.iter().rev() {
            acc = acc * x.clone() + GaussianRational::new(c.clone(), Rational::zero());
        }
        acc
    }
}

/// `det` by the Leibniz formula over any commutative ring given as closures.
pub fn leibniz_det<R: Clone>(
    a: &[Vec<R>],
    one: R,
    zero: R,
    mul: impl Fn(&R, &R) -> R,
    add: impl Fn(&R, &R) -> R,
    neg: impl Fn(&R) -> R,
) -> R {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = zero;
    let mut c = vec![0usize; n];
    let mut sign = 1i32;
    let term = |perm: &[usize], sign: i32, total: &mut R| {
        let mut p = one.clone();
        for (i, &j) in perm.iter().enumerate() {
            p = mul(&p, &a[i][j]);
        }
        *total = if sign > 0 { add(total, &p) } else { add(total, &neg(&p)) };
    };
    term(&perm, sign, &mut total);
    // Heap's algorithm: each swap flips the sign
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            term(&perm, sign, &mut total);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

pub fn poly_det(a: &PolyMatrix) -> LaurentPoly {
    leibniz_det(
        &a.to_rows(),
        LaurentPoly::one(),
        LaurentPoly::zero(),
        |x, y| x * y,
        |x, y| x + y,
        |x| -x,
    )
}

/// `det(tV - V^T)` straight from the integer entries.
pub fn alexander_oracle(v: &[Vec<i64>]) -> LaurentPoly {
    let n = v.len();
    let rows: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| LaurentPoly::from_terms([(1, q(v[i][j])), (0, q(-v[j][i]))]))
                .collect()
        })
        .collect();
    leibniz_det(&rows, LaurentPoly::one(), LaurentPoly::zero(), |x, y| x * y, |x, y| x + y, |x| -x)
}

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

/// `(positive, negative)` eigenvalue counts of a Hermitian matrix from its
/// characteristic polynomial, by Descartes' rule (exact for real-rooted
/// polynomials).
pub fn hermitian_signs(a: &[Vec<GaussianRational>]) -> (usize, usize) {
    let n = a.len();
    let zero = || g(Rational::zero(), Rational::zero());
    let matmul = |x: &Vec<Vec<GaussianRational>>, y: &Vec<Vec<GaussianRational>>| {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(zero(), |acc, k| acc + x[i][k].clone() * y[k][j].clone()))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    // Faddeev-LeVerrier
    let a = a.to_vec();
    let mut c = vec![zero(); n + 1];
    c[n] = g(q(1), q(0));
    let mut m = vec![vec![zero(); n]; n];
    for k in 1..=n {
        let mut am = matmul(&a, &m);
        for (i, row) in am.iter_mut().enumerate() {
            row[i] = row[i].clone() + c[n - k + 1].clone();
        }
        m = am;
        let am = matmul(&a, &m);
        let tr = (0..n).fold(zero(), |acc, i| acc + am[i][i].clone());
        c[n - k] = g(-tr.re / q(k as i64), -tr.im / q(k as i64));
    }
    let real: Vec<Rational> = c
        .iter()
        .map(|z| {
            assert!(z.im.is_zero(), "characteristic polynomial of a Hermitian matrix is real");
            z.re.clone()
        })
        .collect();
    let changes = |v: &[Rational]| {
        let signs: Vec<bool> = v.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let pos = changes(&real);
    let alt: Vec<Rational> = real
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 1 { -x.clone() } else { x.clone() })
        .collect();
    let neg = changes(&alt);
    (pos, neg)
}

/// `ω` on the unit circle from the half-angle tangent `s`.
pub fn circle_point(s: &Rational) -> (Rational, Rational) {
    let d = Rational::one() + s * s;
    ((Rational::one() - s * s) / &d, (q(2) * s) / d)
}

/// Signature of `(1 - ω)V + (1 - ω̄)V^T`.
pub fn levine_tristram_oracle(v: &[Vec<i64>], re: &Rational, im: &Rational) -> i64 {
    let n = v.len();
    let one_minus_w = g(Rational::one() - re, -im.clone());
    let one_minus_wbar = g(Rational::one() - re, im.clone());
    let h: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| one_minus_w.clone() * g(q(v[i][j]), q(0)) + one_minus_wbar.clone() * g(q(v[j][i]), q(0)))
                .collect()
        })
        .collect();
    let (p, m) = hermitian_signs(&h);
    p as i64 - m as i64
}

/// Row-echelon span of rational vectors, reduced in insertion order.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = Rational::one() / &r[p];
                self.rows.push((p, r.iter().map(|x| x * &inv).collect()));
                true
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn same_as(&self, other: &Span) -> bool {
        self.dim() == other.dim() && other.rows.iter().all(|(_, r)| self.contains(r))
    }
}

/// `{x : rows · x = 0}` by Gauss-Jordan elimination.
pub fn nullspace(rows: &[Vec<Rational>], n: usize) -> Span {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(i) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, i);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Span::default();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        out.insert(&v);
    }
    out
}

/// `⊕ Λ/(d_i)` as a Q-vector space with `t` acting by companion matrices.
#[derive(Clone, Debug)]
pub struct QModel {
    pub blocks: Vec<dense::P>,
}

impl QModel {
    pub fn new(blocks: &[LaurentPoly]) -> Self {
        Self {
            blocks: blocks.iter().map(|b| dense::from_laurent(b).1).collect(),
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len() - 1).collect()
    }

    pub fn dim(&self) -> usize {
        self.sizes().iter().sum()
    }

    fn block_times_t(d: &dense::P, a: &[Rational]) -> Vec<Rational> {
        let n = a.len();
        let mut out = vec![Rational::zero(); n];
        out[1..n].clone_from_slice(&a[..n - 1]);
        let top = &a[n - 1];
        if !top.is_zero() {
            let lead = &d[n];
            for i in 0..n {
                out[i] -= top * &d[i] / lead;
            }
        }
        out
    }

    fn block_times_tinv(d: &dense::P, a: &[Rational]) -> Vec<Rational> {
        let n = a.len();
        let mut out = vec![Rational::zero(); n];
        out[..n - 1].clone_from_slice(&a[1..]);
        let low = &a[0];
        if !low.is_zero() {
            // t^-1 = -(d_1 + d_2 t + ... + d_n t^(n-1)) / d_0
            for i in 0..n {
                out[i] -= low * &d[i + 1] / &d[0];
            }
        }
        out
    }

    fn block_reduce(d: &dense::P, c: &LaurentPoly) -> Vec<Rational> {
        let n = d.len() - 1;
        let mut out = vec![Rational::zero(); n];
        for (e, coeff) in c.terms() {
            let mut v = vec![Rational::zero(); n];
            v[0] = Rational::one();
            for _ in 0..e.unsigned_abs() {
                v = if e > 0 { Self::block_times_t(d, &v) } else { Self::block_times_tinv(d, &v) };
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o += coeff * x;
            }
        }
        out
    }

    /// Generator coordinates to a flat Q-vector.
    pub fn flatten(&self, coords: &[LaurentPoly]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.blocks.len());
        self.blocks
            .iter()
            .zip(coords)
            .flat_map(|(d, c)| Self::block_reduce(d, c))
            .collect()
    }

    /// Flat vector back to one reduced polynomial per block.
    pub fn split(&self, v: &[Rational]) -> Vec<dense::P> {
        let mut out = Vec::new();
        let mut at = 0;
        for n in self.sizes() {
            out.push(dense::trim(v[at..at + n].to_vec()));
            at += n;
        }
        out
    }

    pub fn times_t(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = Vec::with_capacity(v.len());
        let mut at = 0;
        for (d, n) in self.blocks.iter().zip(self.sizes()) {
            out.extend(Self::block_times_t(d, &v[at..at + n]));
            at += n;
        }
        out
    }

    /// The Λ-submodule generated by `gens`, as a Q-subspace.
    pub fn submodule_span(&self, gens: &[Vec<Rational>]) -> Span {
        // Krylov closure: the span so far is t-invariant, so the orbit of g
        // can stop at its first dependent vector
        let mut span = Span::default();
        for g in gens {
            let mut v = g.clone();
            while span.insert(&v) {
                v = self.times_t(&v);
            }
        }
        span
    }

    /// `S ∩ (first n coordinates ⊕ 0)`, returned on the first `n` coordinates.
    pub fn intersect_first(span: &Span, n: usize) -> Span {
        let vecs = span.vectors();
        let total = vecs.first().map_or(n, Vec::len);
        // eliminate the tail coordinates first
        let order: Vec<usize> = (n..total).chain(0..n).collect();
        let permuted: Vec<Vec<Rational>> = vecs.iter().map(|v| order.iter().map(|&i| v[i].clone()).collect()).collect();
        let mut s = Span::default();
        for v in &permuted {
            s.insert(v);
        }
        let mut out = Span::default();
        for (p, row) in &s.rows {
            if *p >= total - n {
                out.insert(&row[total - n..]);
            }
        }
        out
    }

    /// `S ∩ (0 ⊕ last coordinates)`.
    pub fn intersect_last(span: &Span, n: usize) -> Span {
        let mut s = Span::default();
        for v in span.vectors() {
            s.insert(&v);
        }
        let mut out = Span::default();
        for (p, row) in &s.rows {
            if *p >= n {
                out.insert(&row[n..]);
            }
        }
        out
    }
}

/// `⊕ Λ/(d_i)` with `Bℓ(a, b) = Σ a_i conj(b_i) c_i / d_i`, computed on the
/// common denominator `L = lcm(d_i)`.
pub struct DiagonalOracle {
    pub model: QModel,
    numerators: Vec<dense::P>,
    lcm: dense::P,
}

impl DiagonalOracle {
    /// `pairs` are `(d_i, c_i)` with `c_i` an honest polynomial.
    pub fn new(pairs: &[(LaurentPoly, LaurentPoly)]) -> Self {
        let blocks: Vec<LaurentPoly> = pairs.iter().map(|(d, _)| d.clone()).collect();
        let model = QModel::new(&blocks);
        let mut lcm = vec![q(1)];
        for d in &model.blocks {
            let g = dense::gcd(&lcm, d);
            lcm = dense::divrem(&dense::mul(&lcm, d), &g).0;
        }
        let numerators = pairs
            .iter()
            .zip(&model.blocks)
            .map(|((_, c), d)| {
                let (shift, c) = dense::from_laurent(c);
                assert!(shift >= 0, "numerator must be a polynomial");
                let mut c = c;
                c.splice(0..0, std::iter::repeat_n(Rational::zero(), shift as usize));
                dense::mul(&c, &dense::divrem(&lcm, d).0)
            })
            .collect();
        Self { model, numerators, lcm }
    }

    fn pad(&self) -> usize {
        self.model.sizes().into_iter().max().unwrap_or(0)
    }

    /// `t^D · L · Bℓ(a, b) mod L` as a coefficient vector of length `deg L`.
    /// Q-linear in each argument; zero exactly when `Bℓ(a, b) = 0`.
    pub fn residue(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.pad();
        let mut acc: dense::P = Vec::new();
        for ((ai, bi), ni) in self.model.split(a).iter().zip(self.model.split(b)).zip(&self.numerators) {
            // t^D · conj(b_i) as an ordinary polynomial
            let mut rev = vec![Rational::zero(); d + 1];
            for (j, c) in bi.iter().enumerate() {
                rev[d - j] = c.clone();
            }
            acc = dense::add(&acc, &dense::mul(&dense::mul(ai, &dense::trim(rev)), ni));
        }
        let r = dense::divrem(&acc, &self.lcm).1;
        let n = self.lcm.len() - 1;
        (0..n).map(|i| r.get(i).cloned().unwrap_or_else(Rational::zero)).collect()
    }

    /// `P^⊥` for the Q-subspace `p`, as a Q-subspace.
    pub fn complement(&self, p: &Span) -> Span {
        let n = self.model.dim();
        let basis: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let mut e = vec![Rational::zero(); n];
                e[j] = Rational::one();
                e
            })
            .collect();
        let mut rows = Vec::new();
        for x in p.vectors() {
            let images: Vec<Vec<Rational>> = basis.iter().map(|e| self.residue(&x, e)).collect();
            for k in 0..self.lcm.len() - 1 {
                rows.push(images.iter().map(|im| im[k].clone()).collect());
            }
        }
        nullspace(&rows, n)
    }
}

pub mod gen {
    use super::*;

    pub fn laurent<R: Rng>(rng: &mut R, max_span: usize, coeff: i64) -> LaurentPoly {
        let lo = rng.gen_range(-2..=2);
        let len = rng.gen_range(0..=max_span);
        LaurentPoly::from_terms((0..=len).map(|i| (lo + i as i64, q(rng.gen_range(-coeff..=coeff)))))
    }

    pub fn nonzero_laurent<R: Rng>(rng: &mut R, max_span: usize, coeff: i64) -> LaurentPoly {
        loop {
            let p = laurent(rng, max_span, coeff);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Indices `k <= kmax` with `φ(k)` summing to at most `max_deg`, avoiding `exclude`.
    pub fn cyclotomic_indices<R: Rng>(rng: &mut R, kmax: u64, max_deg: usize, exclude: &[u64]) -> Vec<u64> {
        let mut pool: Vec<u64> = (1..=kmax).filter(|k| !exclude.contains(k)).collect();
        pool.shuffle(rng);
        let want = rng.gen_range(1..=3);
        let mut out = Vec::new();
        let mut deg = 0;
        for k in pool {
            let d = dense::cyclotomic(k).len() - 1;
            if deg + d <= max_deg {
                out.push(k);
                deg += d;
            }
            if out.len() == want {
                break;
            }
        }
        out
    }

    pub fn product_of(ks: &[u64]) -> LaurentPoly {
        ks.iter().fold(LaurentPoly::one(), |acc, &k| &acc * &dense::to_laurent(&dense::cyclotomic(k)))
    }

    pub fn poly_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, max_span: usize) -> PolyMatrix {
        PolyMatrix::from_fn(rows, cols, |_, _| {
            if rng.gen_bool(0.3) {
                LaurentPoly::zero()
            } else {
                laurent(rng, max_span, 3)
            }
        })
    }

    pub fn coset<R: Rng>(rng: &mut R) -> QtModLambda<Rational> {
        let ks = cyclotomic_indices(rng, 12, 6, &[]);
        let den = &product_of(&ks) * &LaurentPoly::t_pow(rng.gen_range(-2..=2));
        QtModLambda::from_parts(laurent(rng, 5, 4), den).expect("nonzero denominator")
    }

    pub fn gamma<R: Rng>(rng: &mut R) -> GammaElement<Rational> {
        GammaElement::new(coset(rng), rng.gen_range(-4..=4))
    }
}
