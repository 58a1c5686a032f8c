//! Finitely presented torsion `Λ`-modules.
//!
//! A module is presented by generators `g_1..g_n` and row relations: it is
//! `Λ^n / rowspace(A)`. The Smith form `U A W = D` gives the canonical chain
//! `Λ/(d_1) ⊕ ... ⊕ Λ/(d_k)` with `d_1 | ... | d_k` monic nonunits. Elements
//! are stored in chain coordinates, each reduced modulo its factor.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda_ring::{gcd, gcd_bezout, lcm, reduce_mod, Laurent};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::snf::{smith_tracked, solve};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "Laurent<F>: Serialize"))]
pub struct LambdaModule<F> {
    factors: Vec<Laurent<F>>,
    labels: Vec<String>,
    #[serde(skip)]
    relations: Matrix<Laurent<F>>,
    // chain_i = Σ_j to_chain[i][j] a_j for generator coordinates a
    #[serde(skip)]
    to_chain: Matrix<Laurent<F>>,
    // a_j = Σ_i c_i lift[i][j] for chain coordinates c
    #[serde(skip)]
    lift: Matrix<Laurent<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent, bound(serialize = "Laurent<F>: Serialize"))]
pub struct ModuleElement<F> {
    coords: Vec<Laurent<F>>,
}

impl<F: Field> ModuleElement<F> {
    pub fn coords(&self) -> &[Laurent<F>] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// A submodule, given by generators in chain coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "Laurent<F>: Serialize"))]
pub struct Submodule<F> {
    pub generators: Vec<ModuleElement<F>>,
}

impl<F: Field> Submodule<F> {
    pub fn new(generators: Vec<ModuleElement<F>>) -> Self {
        Self { generators }
    }

    pub fn zero() -> Self {
        Self { generators: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(ModuleElement::is_zero)
    }
}

impl<F: Field> LambdaModule<F> {
    pub fn from_presentation(relations: Matrix<Laurent<F>>) -> Result<Self> {
        let labels = (0..relations.cols()).map(|i| format!("g{}", i + 1)).collect();
        Self::from_presentation_labeled(relations, labels)
    }

    pub fn from_presentation_labeled(relations: Matrix<Laurent<F>>, labels: Vec<String>) -> Result<Self> {
        let n = relations.cols();
        assert_eq!(labels.len(), n, "one label per generator");
        let s = smith_tracked(&relations, false, true);
        if s.rank < n {
            return Err(Error::NotTorsion);
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !s.d.get(i, i).is_unit()).collect();
        let factors = keep.iter().map(|&i| s.d.get(i, i).clone()).collect();
        let to_chain = s.w.select_cols(&keep).transpose();
        let lift = s.w_inv.select_rows(&keep);
        Ok(Self {
            factors,
            labels,
            relations,
            to_chain,
            lift,
        })
    }

    /// `Λ/(d_1) ⊕ ... ⊕ Λ/(d_n)` with one generator per block.
    pub fn from_blocks(blocks: &[Laurent<F>]) -> Result<Self> {
        if blocks.iter().any(Zero::is_zero) {
            return Err(Error::NotTorsion);
        }
        Self::from_presentation(Matrix::diagonal(blocks))
    }

    pub fn trivial() -> Self {
        Self::from_presentation(Matrix::zeros(0, 0)).expect("empty presentation")
    }

    pub fn factors(&self) -> &[Laurent<F>] {
        &self.factors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &Matrix<Laurent<F>> {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn num_generators(&self) -> usize {
        self.labels.len()
    }

    /// Product of the chain factors; an order of the module.
    pub fn order(&self) -> Laurent<F> {
        self.factors.iter().fold(Laurent::one(), |acc, d| &acc * d)
    }

    pub fn annihilator(&self) -> Laurent<F> {
        self.factors.last().cloned().unwrap_or_else(Laurent::one)
    }

    pub fn element(&self, coords: Vec<Laurent<F>>) -> Result<ModuleElement<F>> {
        if coords.len() != self.rank() {
            return Err(Error::AmbientMismatch(format!(
                "expected {} chain coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&self.factors)
            .map(|(c, d)| reduce_mod(c, d))
            .collect::<Result<_>>()?;
        Ok(ModuleElement { coords })
    }

    pub fn zero(&self) -> ModuleElement<F> {
        ModuleElement {
            coords: vec![Laurent::zero(); self.rank()],
        }
    }

    /// The element `Σ a_j g_j`.
    pub fn from_generator_coords(&self, a: &[Laurent<F>]) -> Result<ModuleElement<F>> {
        if a.len() != self.num_generators() {
            return Err(Error::AmbientMismatch(format!(
                "expected {} generator coordinates, got {}",
                self.num_generators(),
                a.len()
            )));
        }
        self.element(self.to_chain.mul_vec(a))
    }

    /// Generator coordinates of `x` (one choice of lift).
    pub fn generator_coords(&self, x: &ModuleElement<F>) -> Vec<Laurent<F>> {
        self.lift.transpose().mul_vec(&x.coords)
    }

    pub fn generator(&self, j: usize) -> ModuleElement<F> {
        let mut a = vec![Laurent::zero(); self.num_generators()];
        a[j] = Laurent::one();
        self.from_generator_coords(&a).expect("right length")
    }

    pub fn chain_generator(&self, i: usize) -> ModuleElement<F> {
        let mut c = vec![Laurent::zero(); self.rank()];
        c[i] = Laurent::one();
        self.element(c).expect("right length")
    }

    pub fn check(&self, x: &ModuleElement<F>) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(Error::AmbientMismatch(format!(
                "element has {} coordinates, module has rank {}",
                x.coords.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn add(&self, x: &ModuleElement<F>, y: &ModuleElement<F>) -> ModuleElement<F> {
        let c = x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect();
        self.element(c).expect("same ambient")
    }

    pub fn neg(&self, x: &ModuleElement<F>) -> ModuleElement<F> {
        self.scale(&-Laurent::one(), x)
    }

    pub fn sub(&self, x: &ModuleElement<F>, y: &ModuleElement<F>) -> ModuleElement<F> {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, p: &Laurent<F>, x: &ModuleElement<F>) -> ModuleElement<F> {
        self.element(x.coords.iter().map(|c| p * c).collect())
            .expect("same ambient")
    }

    /// Monic generator of `{p : p x = 0}`.
    pub fn element_annihilator(&self, x: &ModuleElement<F>) -> Laurent<F> {
        let mut acc = Laurent::one();
        for (c, d) in x.coords.iter().zip(&self.factors) {
            if c.is_zero() {
                continue;
            }
            let g = gcd(c, d).expect("d nonzero");
            let part = d.exact_div(&g).expect("gcd divides");
            acc = lcm(&acc, &part).expect("nonzero");
        }
        acc
    }

    /// Coefficients `c` with `x = Σ c_i s_i`, if `x` lies in `S`.
    pub fn membership(&self, s: &Submodule<F>, x: &ModuleElement<F>) -> Result<Option<Vec<Laurent<F>>>> {
        self.check(x)?;
        for g in &s.generators {
            self.check(g)?;
        }
        let k = self.rank();
        let m = s.generators.len();
        let a = Matrix::from_fn(k, m + k, |i, j| {
            if j < m {
                s.generators[j].coords[i].clone()
            } else if j - m == i {
                self.factors[i].clone()
            } else {
                Laurent::zero()
            }
        });
        Ok(solve(&a, &x.coords).map(|w| w[..m].to_vec()))
    }

    pub fn contains(&self, s: &Submodule<F>, x: &ModuleElement<F>) -> Result<bool> {
        Ok(self.membership(s, x)?.is_some())
    }

    /// `B ⊆ A`.
    pub fn includes(&self, a: &Submodule<F>, b: &Submodule<F>) -> Result<bool> {
        for g in &b.generators {
            if !self.contains(a, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_submodule(&self, a: &Submodule<F>, b: &Submodule<F>) -> Result<bool> {
        Ok(self.includes(a, b)? && self.includes(b, a)?)
    }

    pub fn full(&self) -> Submodule<F> {
        Submodule::new((0..self.rank()).map(|i| self.chain_generator(i)).collect())
    }

    /// `e x` where `e ≡ 1` modulo the `p`-primary part of the annihilator
    /// and `e ≡ 0` modulo the complementary part.
    pub fn primary_component(&self, x: &ModuleElement<F>, p: &Laurent<F>) -> Result<ModuleElement<F>> {
        self.check(x)?;
        if p.is_zero() {
            return Err(Error::PrimaryComponent("zero polynomial has no primary part".into()));
        }
        let (a, b) = split_primary(&self.annihilator(), p)?;
        if a.is_one() {
            return Ok(self.zero());
        }
        let bez = gcd_bezout(&a, &b)?;
        if !bez.is_coprime() {
            return Err(Error::PrimaryComponent("primary and complementary parts share a factor".into()));
        }
        Ok(self.scale(&(&bez.h * &b), x))
    }
}

/// Splits `ann = a b` with `a` the part of `ann` supported on the prime
/// factors of `p`, and `b` coprime to `p`.
pub fn split_primary<F: Field>(ann: &Laurent<F>, p: &Laurent<F>) -> Result<(Laurent<F>, Laurent<F>)> {
    let mut a = Laurent::one();
    let mut rest = ann.monic_normal()?;
    loop {
        let g = gcd(&rest, p)?;
        if g.is_one() {
            break;
        }
        a = &a * &g;
        rest = rest.exact_div(&g).ok_or(Error::InexactDivision)?;
    }
    Ok((a, rest))
}

/// `M1 ⊕ M2` with coordinate maps to and from the summands.
#[derive(Clone, Debug)]
pub struct DirectSum<F> {
    pub module: LambdaModule<F>,
    pub first: LambdaModule<F>,
    pub second: LambdaModule<F>,
}

pub fn direct_sum<F: Field>(m1: &LambdaModule<F>, m2: &LambdaModule<F>) -> DirectSum<F> {
    let rel = Matrix::block_diag(&m1.relations, &m2.relations);
    let labels = m1.labels.iter().chain(&m2.labels).cloned().collect();
    let module = LambdaModule::from_presentation_labeled(rel, labels).expect("sum of torsion modules");
    DirectSum {
        module,
        first: m1.clone(),
        second: m2.clone(),
    }
}

impl<F: Field> DirectSum<F> {
    /// `x ↦ (x, 0)`.
    pub fn embed_first(&self, x: &ModuleElement<F>) -> ModuleElement<F> {
        let mut a = self.first.generator_coords(x);
        a.extend(vec![Laurent::zero(); self.second.num_generators()]);
        self.module.from_generator_coords(&a).expect("right length")
    }

    /// `y ↦ (0, y)`.
    pub fn embed_second(&self, y: &ModuleElement<F>) -> ModuleElement<F> {
        let mut a = vec![Laurent::zero(); self.first.num_generators()];
        a.extend(self.second.generator_coords(y));
        self.module.from_generator_coords(&a).expect("right length")
    }

    pub fn pair(&self, x: &ModuleElement<F>, y: &ModuleElement<F>) -> ModuleElement<F> {
        self.module.add(&self.embed_first(x), &self.embed_second(y))
    }

    pub fn project_first(&self, z: &ModuleElement<F>) -> ModuleElement<F> {
        let a = self.module.generator_coords(z);
        let n1 = self.first.num_generators();
        self.first.from_generator_coords(&a[..n1]).expect("right length")
    }

    pub fn project_second(&self, z: &ModuleElement<F>) -> ModuleElement<F> {
        let a = self.module.generator_coords(z);
        let n1 = self.first.num_generators();
        self.second.from_generator_coords(&a[n1..]).expect("right length")
    }
}
