//! Knot invariants from Seifert matrices.

mod arctan;
mod inertia;
mod signature;
mod sturm;

pub use arctan::{atan_enclosure, pi_enclosure, turn_enclosure, Enclosure};
pub use inertia::{hermitian_inertia, Inertia};
pub use signature::{
    levine_tristram_at, rho_integral, rho_integral_with_precision, signature_function,
    signature_function_with_precision, symmetrize, half_angle_polynomial, JumpInterval, RhoIntegral, SignatureFunction,
    UnitCirclePoint, DEFAULT_PRECISION,
};
pub use sturm::{cauchy_bound, RootInterval, SturmChain};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::{LaurentPoly, PolyMatrix, Rational};

/// An integer Seifert matrix `V` with `det(V - Vᵀ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for SeifertMatrix {
    type Error = Error;

    fn try_from(entries: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<SeifertMatrix> for Vec<Vec<i64>> {
    fn from(v: SeifertMatrix) -> Self {
        v.entries
    }
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeifert("matrix is not square".into()));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidSeifert(format!("odd size {n}")));
        }
        let v = Self { entries };
        let skew = v.rational().sub(&v.rational().transpose());
        if skew.det() != Rational::one() {
            return Err(Error::InvalidSeifert("det(V - V^T) is not 1".into()));
        }
        Ok(v)
    }

    pub fn unknot() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn trefoil() -> Self {
        Self::new(vec![vec![-1, 1], vec![0, -1]]).expect("valid preset")
    }

    pub fn figure_eight() -> Self {
        Self::new(vec![vec![1, 1], vec![0, -1]]).expect("valid preset")
    }

    /// Connected sum of two trefoils.
    pub fn two_trefoils() -> Self {
        connected_sum(&Self::trefoil(), &Self::trefoil())
    }

    /// `"trefoil"`, `"figure8"`, `"J"` (two trefoils) or `"unknot"`, and
    /// connected sums of these written `"a#b"`.
    pub fn preset(name: &str) -> Option<Self> {
        if name.contains('#') {
            return name
                .split('#')
                .map(|n| Self::preset(n.trim()))
                .reduce(|a, b| Some(connected_sum(&a?, &b?)))?;
        }
        match name {
            "trefoil" => Some(Self::trefoil()),
            "figure8" => Some(Self::figure_eight()),
            "J" => Some(Self::two_trefoils()),
            "unknot" => Some(Self::unknot()),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn rational(&self) -> Matrix<Rational> {
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| Rational::from_i64(self.entries[i][j]))
    }

    /// `tV - Vᵀ`, the presentation matrix of the rational Alexander module.
    pub fn presentation(&self) -> PolyMatrix {
        let n = self.size();
        let t = LaurentPoly::t();
        Matrix::from_fn(n, n, |i, j| {
            let a = Rational::from_i64(self.entries[i][j]);
            let b = Rational::from_i64(self.entries[j][i]);
            &t.scale(&a) - &LaurentPoly::constant(b)
        })
    }
}

/// `normalize_unit(det(tV - Vᵀ))`.
pub fn alexander_polynomial(v: &SeifertMatrix) -> LaurentPoly {
    v.presentation()
        .det_lambda()
        .normalize_unit()
        .expect("det(V - V^T) = 1 keeps the determinant nonzero")
}

pub fn connected_sum(a: &SeifertMatrix, b: &SeifertMatrix) -> SeifertMatrix {
    let n = a.size() + b.size();
    let mut entries = vec![vec![0; n]; n];
    for (i, row) in a.entries.iter().enumerate() {
        entries[i][..a.size()].copy_from_slice(row);
    }
    for (i, row) in b.entries.iter().enumerate() {
        entries[a.size() + i][a.size()..].copy_from_slice(row);
    }
    SeifertMatrix { entries }
}

/// `0` iff `|Δ(-1)| ≡ ±1 (mod 8)`.
pub fn arf_invariant(v: &SeifertMatrix) -> u8 {
    let d = alexander_polynomial(v)
        .eval(&Rational::from_i64(-1))
        .expect("ordinary polynomial");
    let d: BigInt = d.to_integer().abs();
    let r = d.mod_floor(&BigInt::from(8));
    if r == BigInt::one() || r == BigInt::from(7) {
        0
    } else {
        1
    }
}

/// A random Seifert matrix of size `2 * genus`: a symmetric matrix plus the
/// standard symplectic part, conjugated by a random unimodular change of
/// basis.
pub fn random_seifert_matrix<R: Rng + ?Sized>(rng: &mut R, genus: usize) -> SeifertMatrix {
    let n = 2 * genus;
    let mut v = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-2..=2);
            v[i][j] = x;
            v[j][i] = x;
        }
    }
    for i in 0..genus {
        v[2 * i][2 * i + 1] += 1;
    }
    // V -> P V Pᵀ with P an elementary matrix, a few times
    for _ in 0..n {
        if n < 2 {
            break;
        }
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        for j in 0..n {
            v[a][j] += c * v[b][j];
        }
        for i in 0..n {
            v[i][a] += c * v[i][b];
        }
    }
    SeifertMatrix::new(v).expect("congruence preserves det(V - V^T)")
}

impl Default for SeifertMatrix {
    fn default() -> Self {
        Self::unknot()
    }
}
