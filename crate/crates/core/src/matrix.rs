//! Dense matrices over a commutative ring.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::lambda_ring::Laurent;
use crate::scalar::Field;

pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(entries: &[R]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn column(entries: &[R]) -> Self {
        Self::from_fn(entries.len(), 1, |i, _| entries[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc + self.get(i, k).clone() * rhs.get(k, j).clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(R::zero(), |acc, k| acc + self.get(i, k).clone() * v[k].clone())
            })
            .collect()
    }

    pub fn scalar_mul(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - rhs.get(i, j).clone()
        })
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    /// Columns `range` of the matrix.
    pub fn col_range(&self, range: std::ops::Range<usize>) -> Self {
        Self::from_fn(self.rows, range.len(), |i, j| self.get(i, range.start + j).clone())
    }

    pub fn row_range(&self, range: std::ops::Range<usize>) -> Self {
        Self::from_fn(range.len(), self.cols, |i, j| self.get(range.start + i, j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, c: &R) {
        for j in 0..self.cols {
            let v = self.get(target, j).clone() + c.clone() * self.get(source, j).clone();
            self.set(target, j, v);
        }
    }

    /// `col[target] += c * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, c: &R) {
        for i in 0..self.rows {
            let v = self.get(i, target).clone() + self.get(i, source).clone() * c.clone();
            self.set(i, target, v);
        }
    }

    /// `(row[i], row[j]) <- (p row[i] + q row[j], r row[i] + s row[j])`
    pub fn mix_rows(&mut self, i: usize, j: usize, [p, q, r, s]: [&R; 4]) {
        for k in 0..self.cols {
            let (x, y) = (self.get(i, k).clone(), self.get(j, k).clone());
            self.set(i, k, p.clone() * x.clone() + q.clone() * y.clone());
            self.set(j, k, r.clone() * x + s.clone() * y);
        }
    }

    /// `(col[i], col[j]) <- (p col[i] + q col[j], r col[i] + s col[j])`
    pub fn mix_cols(&mut self, i: usize, j: usize, [p, q, r, s]: [&R; 4]) {
        for k in 0..self.rows {
            let (x, y) = (self.get(k, i).clone(), self.get(k, j).clone());
            self.set(k, i, x.clone() * p.clone() + y.clone() * q.clone());
            self.set(k, j, x * r.clone() + y * s.clone());
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &R) {
        for j in 0..self.cols {
            let v = self.get(i, j).clone() * c.clone();
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &R) {
        for i in 0..self.rows {
            let v = self.get(i, j).clone() * c.clone();
            self.set(i, j, v);
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Determinant by Gaussian elimination over a field.
    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return F::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det = det * pivot.clone();
            let pinv = pivot.inv();
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let factor = -(a.get(i, k).clone() * pinv.clone());
                a.add_row_multiple(i, k, &factor);
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            a.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pinv = a.get(k, k).inv();
            a.scale_row(k, &pinv);
            inv.scale_row(k, &pinv);
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let factor = -a.get(i, k).clone();
                a.add_row_multiple(i, k, &factor);
                inv.add_row_multiple(i, k, &factor);
            }
        }
        Some(inv)
    }
}

impl<F: Field> Matrix<Laurent<F>> {
    /// Fraction-free (Bareiss) determinant over `Λ`.
    pub fn det_lambda(&self) -> Laurent<F> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Laurent::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = Laurent::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Laurent::zero();
                };
                a.swap_rows(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(a.get(k, k) * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    let v = v.exact_div(&prev).expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign {
            -d
        } else {
            d
        }
    }
}
