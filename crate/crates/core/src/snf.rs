//! Smith normal form over `Λ` and the linear algebra built on it.
//!
//! Pivots are the nonzero entries of least span (row-major first on ties).
//! All transforms are tracked together with their inverses.

use num_traits::{One, Zero};

use crate::lambda_ring::{gcd_bezout, Laurent};
use crate::matrix::Matrix;
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct Smith<F> {
    /// `u * a * w == d`
    pub u: Matrix<Laurent<F>>,
    pub u_inv: Matrix<Laurent<F>>,
    pub d: Matrix<Laurent<F>>,
    pub w: Matrix<Laurent<F>>,
    pub w_inv: Matrix<Laurent<F>>,
    pub rank: usize,
}

impl<F: Field> Smith<F> {
    /// Diagonal entries `d[i][i]`, `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Laurent<F>> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Tracker<F: Field> {
    a: Matrix<Laurent<F>>,
    u: Matrix<Laurent<F>>,
    u_inv: Matrix<Laurent<F>>,
    w: Matrix<Laurent<F>>,
    w_inv: Matrix<Laurent<F>>,
}

impl<F: Field> Tracker<F> {
    fn row_add(&mut self, target: usize, source: usize, c: &Laurent<F>) {
        self.a.add_row_multiple(target, source, c);
        self.u.add_row_multiple(target, source, c);
        self.u_inv.add_col_multiple(source, target, &-c);
    }

    fn col_add(&mut self, target: usize, source: usize, c: &Laurent<F>) {
        self.a.add_col_multiple(target, source, c);
        self.w.add_col_multiple(target, source, c);
        self.w_inv.add_row_multiple(source, target, &-c);
    }

    /// Rows `(t, i)` by `[[f, h], [-b, a]]` with `f a + h b = 1`.
    fn row_bezout(&mut self, t: usize, i: usize, f: &Laurent<F>, h: &Laurent<F>, a: &Laurent<F>, b: &Laurent<F>) {
        let nb = -b;
        let nh = -h;
        self.a.mix_rows(t, i, [f, h, &nb, a]);
        self.u.mix_rows(t, i, [f, h, &nb, a]);
        self.u_inv.mix_cols(t, i, [a, b, &nh, f]);
    }

    /// Columns `(t, j)` by the transpose of the same shape.
    fn col_bezout(&mut self, t: usize, j: usize, f: &Laurent<F>, h: &Laurent<F>, a: &Laurent<F>, b: &Laurent<F>) {
        let nb = -b;
        let nh = -h;
        self.a.mix_cols(t, j, [f, h, &nb, a]);
        self.w.mix_cols(t, j, [f, h, &nb, a]);
        self.w_inv.mix_rows(t, j, [a, b, &nh, f]);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.w.swap_cols(i, j);
        self.w_inv.swap_rows(i, j);
    }

    fn row_scale_unit(&mut self, i: usize, unit: &Laurent<F>, unit_inv: &Laurent<F>) {
        self.a.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, unit_inv);
    }

    /// Rescales row `i` of `[a | u]` by a constant unit to keep
    /// coefficients small.
    fn balance_row(&mut self, i: usize) {
        let coeffs: Vec<&F> = self
            .a
            .row(i)
            .iter()
            .chain(self.u.row(i))
            .flat_map(|p| p.terms().map(|(_, c)| c))
            .collect();
        let c = F::balancing_factor(&coeffs);
        if !c.is_one() {
            let inv = Laurent::constant(c.inv());
            self.row_scale_unit(i, &Laurent::constant(c), &inv);
        }
    }

    fn balance_col(&mut self, j: usize) {
        let (a_col, w_col) = (self.a.col(j), self.w.col(j));
        let coeffs: Vec<&F> = a_col
            .iter()
            .chain(&w_col)
            .flat_map(|p| p.terms().map(|(_, c)| c))
            .collect();
        let c = F::balancing_factor(&coeffs);
        if !c.is_one() {
            let c_inv = c.inv();
            self.a.scale_col(j, &Laurent::constant(c.clone()));
            self.w.scale_col(j, &Laurent::constant(c));
            self.w_inv.scale_row(j, &Laurent::constant(c_inv));
        }
    }

    fn min_span_entry(&self, start: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in start..self.a.rows() {
            for j in start..self.a.cols() {
                if let Some(s) = self.a.get(i, j).span() {
                    if best.is_none_or(|(b, _, _)| s < b) {
                        best = Some((s, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

// `(g, f, h)` with `f a + h b = g = gcd(a, b)` up to the unit of `a`.
fn bezout<F: Field>(a: &Laurent<F>, b: &Laurent<F>) -> (Laurent<F>, Laurent<F>, Laurent<F>) {
    let bz = gcd_bezout(a, b).expect("pivot is nonzero");
    (bz.gcd, bz.f, bz.h)
}

pub fn smith_normal_form<F: Field>(a: &Matrix<Laurent<F>>) -> Smith<F> {
    smith_tracked(a, true, true)
}

/// Like [`smith_normal_form`], but untracked transforms come back with zero
/// rows or columns (row ops on a `0 x n` matrix are free).
pub(crate) fn smith_tracked<F: Field>(a: &Matrix<Laurent<F>>, track_u: bool, track_w: bool) -> Smith<F> {
    let (m, n) = (a.rows(), a.cols());
    let (u, u_inv) = if track_u {
        (Matrix::identity(m), Matrix::identity(m))
    } else {
        (Matrix::zeros(m, 0), Matrix::zeros(0, m))
    };
    let (w, w_inv) = if track_w {
        (Matrix::identity(n), Matrix::identity(n))
    } else {
        (Matrix::zeros(0, n), Matrix::zeros(n, 0))
    };
    let mut tr = Tracker { a: a.clone(), u, u_inv, w, w_inv };
    let mut rank = 0;
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = tr.min_span_entry(t) {
            tr.row_swap(t, pi);
            tr.col_swap(t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let b = tr.a.get(i, t).clone();
                if b.is_zero() {
                    continue;
                }
                let pivot = tr.a.get(t, t).clone();
                match b.exact_div(&pivot) {
                    Some(q) => tr.row_add(i, t, &-q),
                    None => {
                        let (g, f, h) = bezout(&pivot, &b);
                        let a = pivot.exact_div(&g).expect("gcd divides");
                        let b = b.exact_div(&g).expect("gcd divides");
                        tr.row_bezout(t, i, &f, &h, &a, &b);
                        tr.balance_row(t);
                    }
                }
                tr.balance_row(i);
            }
            for j in t + 1..n {
                let b = tr.a.get(t, j).clone();
                if b.is_zero() {
                    continue;
                }
                let pivot = tr.a.get(t, t).clone();
                match b.exact_div(&pivot) {
                    Some(q) => tr.col_add(j, t, &-q),
                    None => {
                        let (g, f, h) = bezout(&pivot, &b);
                        let a = pivot.exact_div(&g).expect("gcd divides");
                        let b = b.exact_div(&g).expect("gcd divides");
                        tr.col_bezout(t, j, &f, &h, &a, &b);
                        tr.balance_col(t);
                        // column t picked up entries below the pivot
                        clean = false;
                    }
                }
                tr.balance_col(j);
            }
            if !clean {
                continue;
            }
            let pivot = tr.a.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !pivot.divides(tr.a.get(i, j)))
            });
            match offender {
                Some(i) => {
                    tr.row_add(t, i, &Laurent::one());
                    tr.balance_row(t);
                }
                None => break,
            }
        }
        let pivot = tr.a.get(t, t).clone();
        if pivot.is_zero() {
            break;
        }
        let (k, stripped) = pivot.strip_t();
        let lead = stripped.leading_coeff().expect("nonzero").clone();
        let unit_inv = Laurent::monomial(lead.inv(), -k);
        let unit = Laurent::monomial(lead, k);
        tr.row_scale_unit(t, &unit_inv, &unit);
        rank += 1;
    }
    Smith {
        u: tr.u,
        u_inv: tr.u_inv,
        d: tr.a,
        w: tr.w,
        w_inv: tr.w_inv,
        rank,
    }
}

/// A solution `x` of `a x = b`, if one exists over `Λ`.
pub fn solve<F: Field>(a: &Matrix<Laurent<F>>, b: &[Laurent<F>]) -> Option<Vec<Laurent<F>>> {
    assert_eq!(a.rows(), b.len(), "shape mismatch");
    let s = smith_tracked(a, true, true);
    let c = s.u.mul_vec(b);
    let mut v = vec![Laurent::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            v[i] = ci.exact_div(s.d.get(i, i))?;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(s.w.mul_vec(&v))
}

/// A basis of `{x : a x = 0}` over `Λ`.
pub fn kernel<F: Field>(a: &Matrix<Laurent<F>>) -> Vec<Vec<Laurent<F>>> {
    let s = smith_tracked(a, false, true);
    (s.rank..a.cols()).map(|j| s.w.col(j)).collect()
}
