//! Linking forms valued in `Q(t)/Λ`, orthogonal complements and
//! self-annihilating submodules.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda_module::{LambdaModule, ModuleElement, Submodule};
use crate::lambda_ring::{
    as_cyclotomic_power, cyclotomic, cyclotomic_divisors, gcd, lcm, reduce_mod_lambda, Laurent,
    QtModLambda, RationalFunction,
};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::seifert::SeifertMatrix;
use crate::snf::{kernel, smith_normal_form};
use crate::Rational;

/// How a form was specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", bound(serialize = "Laurent<F>: Serialize"))]
pub enum FormKind<F> {
    /// `Bℓ(e_i, e_i) = c_i / d_i`, cross terms zero.
    Diagonal { pairs: Vec<(Laurent<F>, Laurent<F>)> },
    /// `Bℓ(x, y) = xᵀ (1 - t)(tV - Vᵀ)⁻¹ ȳ` on the module presented by the
    /// rows of `tV - Vᵀ`.
    Seifert { matrix: SeifertMatrix },
    /// Orthogonal sum of two forms.
    Sum,
}

/// A sesquilinear form on a torsion module, linear in the first slot and
/// conjugate-linear in the second.
#[derive(Clone, Debug)]
pub struct BlanchfieldForm<F> {
    module: LambdaModule<F>,
    gram: Matrix<RationalFunction<F>>,
    // Gram matrix on chain generators
    chain_gram: Matrix<RationalFunction<F>>,
    kind: FormKind<F>,
}

fn conj_poly<F: Field>(m: &Matrix<Laurent<F>>) -> Matrix<Laurent<F>> {
    m.map(|x| x.involution())
}

/// `true` if `c` is a unit of `Λ` times a polynomial fixed by the
/// involution up to sign and a power of `t`.
pub fn is_palindromic_up_to_unit<F: Field>(c: &Laurent<F>) -> bool {
    let (_, s) = c.strip_t();
    let Some(deg) = s.degree() else {
        return false;
    };
    let mirror = s.involution().shift(deg);
    mirror == s || mirror == -&s
}

impl<F: Field> BlanchfieldForm<F> {
    /// Builds a form from its Gram matrix on the generators of `module`.
    /// The matrix must be compatible with the relations: every relation
    /// pairs into `Λ` with every generator.
    pub fn from_gram(module: LambdaModule<F>, gram: Matrix<RationalFunction<F>>, kind: FormKind<F>) -> Result<Self> {
        let n = module.num_generators();
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::InvalidForm(format!("Gram matrix must be {n}x{n}")));
        }
        // gram = N / δ over one common denominator keeps the products polynomial
        let mut delta = Laurent::one();
        for x in gram.to_rows().iter().flatten() {
            if !x.denom().divides(&delta) {
                delta = lcm(&delta, x.denom())?;
            }
        }
        let numer = gram.map(|x| x.numer() * &delta.exact_div(x.denom()).expect("lcm"));
        let rel = module.relations();
        let left = rel.mul(&numer);
        let right = numer.mul(&conj_poly(rel).transpose());
        let integral = |m: &Matrix<Laurent<F>>| m.to_rows().iter().flatten().all(|x| delta.divides(x));
        if !integral(&left) || !integral(&right) {
            return Err(Error::InvalidForm("form does not descend to the module".into()));
        }
        let k = module.rank();
        let lift = Matrix::from_fn(k, n, |i, j| module.generator_coords(&module.chain_generator(i))[j].clone());
        let chain_numer = lift.mul(&numer).mul(&conj_poly(&lift).transpose());
        let entries = chain_numer
            .to_rows()
            .into_iter()
            .flatten()
            .map(|x| RationalFunction::new(x, delta.clone()))
            .collect::<Result<Vec<_>>>()?;
        let chain_gram = Matrix::from_fn(k, k, |i, j| entries[i * k + j].clone());
        Ok(Self {
            module,
            gram,
            chain_gram,
            kind,
        })
    }

    /// `⊕ Λ/(d_i)` with `Bℓ(e_i, e_i) = c_i/d_i`. Each `c_i` must be coprime
    /// to `d_i` and a unit times a palindromic polynomial.
    pub fn diagonal(pairs: Vec<(Laurent<F>, Laurent<F>)>) -> Result<Self> {
        for (d, c) in &pairs {
            if d.is_zero() || d.is_unit() {
                return Err(Error::InvalidForm("block order must be a nonzero nonunit".into()));
            }
            if !gcd(c, d)?.is_one() {
                return Err(Error::InvalidForm("numerator must be coprime to the block order".into()));
            }
            if !is_palindromic_up_to_unit(c) {
                return Err(Error::InvalidForm("numerator must be a unit times a palindromic polynomial".into()));
            }
        }
        let blocks: Vec<Laurent<F>> = pairs.iter().map(|(d, _)| d.clone()).collect();
        let module = LambdaModule::from_blocks(&blocks)?;
        let entries: Vec<RationalFunction<F>> = pairs
            .iter()
            .map(|(d, c)| RationalFunction::new(c.clone(), d.clone()))
            .collect::<Result<_>>()?;
        let gram = Matrix::diagonal(&entries);
        Self::from_gram(module, gram, FormKind::Diagonal { pairs })
    }

    pub fn module(&self) -> &LambdaModule<F> {
        &self.module
    }

    pub fn gram(&self) -> &Matrix<RationalFunction<F>> {
        &self.gram
    }

    pub fn kind(&self) -> &FormKind<F> {
        &self.kind
    }

    pub fn pairing(&self, x: &ModuleElement<F>, y: &ModuleElement<F>) -> Result<QtModLambda<F>> {
        self.module.check(x)?;
        self.module.check(y)?;
        let mut acc = RationalFunction::zero();
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let h = self.chain_gram.get(i, j);
                if h.is_zero() {
                    continue;
                }
                acc = acc + h.scale_poly(&(xi * &yj.involution()));
            }
        }
        Ok(reduce_mod_lambda(&acc))
    }

    /// `Bℓ(x, y) = involution(Bℓ(y, x))` on all pairs of chain generators.
    pub fn is_hermitian(&self) -> bool {
        let k = self.module.rank();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let a = self.pairing(&self.module.chain_generator(i), &self.module.chain_generator(j));
                let b = self.pairing(&self.module.chain_generator(j), &self.module.chain_generator(i));
                a.unwrap() == b.unwrap().involution()
            })
        })
    }

    /// The adjoint `x ↦ Bℓ(x, ·)` is injective.
    pub fn is_nonsingular(&self) -> bool {
        self.orthogonal_complement(&self.module.full())
            .map(|c| c.is_zero())
            .unwrap_or(false)
    }

    /// `P^⊥ = {y : Bℓ(p, y) = 0 for all p ∈ P}`.
    ///
    /// With `r_j = Σ_i p_i H_ij` the condition on `y` is
    /// `Σ_j conj(r_j) y_j ∈ Λ`. Clearing the common denominator `δ` turns it
    /// into `Σ_j a_j y_j = δ z`, a linear system over `Λ`.
    pub fn orthogonal_complement(&self, p: &Submodule<F>) -> Result<Submodule<F>> {
        let k = self.module.rank();
        let gens: Vec<&ModuleElement<F>> = p.generators.iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            self.module.check(g)?;
        }
        if gens.is_empty() {
            return Ok(self.module.full());
        }
        let s = gens.len();
        let mut rows: Vec<Vec<RationalFunction<F>>> = Vec::with_capacity(s);
        for g in &gens {
            let row: Vec<RationalFunction<F>> = (0..k)
                .map(|j| {
                    let mut acc = RationalFunction::zero();
                    for (i, pi) in g.coords().iter().enumerate() {
                        if !pi.is_zero() {
                            acc = acc + self.chain_gram.get(i, j).scale_poly(pi);
                        }
                    }
                    acc.involution()
                })
                .collect();
            rows.push(row);
        }
        let mut delta = Laurent::one();
        for x in rows.iter().flatten() {
            delta = lcm(&delta, x.denom())?;
        }
        let system = Matrix::from_fn(s, k + s, |r, c| {
            if c < k {
                let x = &rows[r][c];
                x.numer() * &delta.exact_div(x.denom()).expect("lcm")
            } else if c - k == r {
                -delta.clone()
            } else {
                Laurent::zero()
            }
        });
        let mut out = Vec::new();
        for v in kernel(&system) {
            let y = self.module.element(v[..k].to_vec())?;
            if !y.is_zero() && !out.contains(&y) {
                out.push(y);
            }
        }
        Ok(Submodule::new(out))
    }

    pub fn is_self_annihilating(&self, p: &Submodule<F>) -> Result<OrthogonalReport<F>> {
        let complement = self.orthogonal_complement(p)?;
        let mut p_in_perp = Vec::new();
        for g in &p.generators {
            p_in_perp.push(self.module.membership(&complement, g)?);
        }
        let mut perp_in_p = Vec::new();
        for g in &complement.generators {
            perp_in_p.push(self.module.membership(p, g)?);
        }
        let isotropic = p_in_perp.iter().all(Option::is_some);
        let coisotropic = perp_in_p.iter().all(Option::is_some);
        Ok(OrthogonalReport {
            input: p.clone(),
            complement,
            isotropic,
            coisotropic,
            is_self_annihilating: isotropic && coisotropic,
            p_in_perp,
            perp_in_p,
        })
    }
}

impl BlanchfieldForm<Rational> {
    /// The form on the module presented by `tV - Vᵀ`.
    pub fn from_seifert(v: &SeifertMatrix) -> Result<Self> {
        let a = v.presentation();
        let module = LambdaModule::from_presentation(a.clone())?;
        // U A W = D, so A⁻¹ = W D⁻¹ U; every d_k divides the last one
        let s = smith_normal_form(&a);
        let n = a.rows();
        if s.rank < n {
            return Err(Error::SingularPresentation);
        }
        let last = s.d.get(n - 1, n - 1).clone();
        let cofactors: Vec<Laurent<Rational>> = (0..n)
            .map(|k| last.exact_div(s.d.get(k, k)).expect("divisibility chain"))
            .collect();
        let one_minus_t = Laurent::from_coeffs(&[1, -1]);
        let den = &last;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut num = Laurent::zero();
                for (k, c) in cofactors.iter().enumerate() {
                    let w = s.w.get(i, k);
                    let u = s.u.get(k, j);
                    if !w.is_zero() && !u.is_zero() {
                        num = &num + &(&(w * u) * c);
                    }
                }
                entries.push(RationalFunction::new(&num * &one_minus_t, den.clone())?);
            }
        }
        let gram = Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone());
        Self::from_gram(module, gram, FormKind::Seifert { matrix: v.clone() })
    }
}

/// `Bℓ₁ ⊕ Bℓ₂` on the direct sum of the underlying modules.
pub fn direct_sum_form<F: Field>(b1: &BlanchfieldForm<F>, b2: &BlanchfieldForm<F>) -> BlanchfieldForm<F> {
    let sum = crate::lambda_module::direct_sum(&b1.module, &b2.module);
    let gram = Matrix::block_diag(&b1.gram, &b2.gram);
    BlanchfieldForm::from_gram(sum.module, gram, FormKind::Sum).expect("blockwise compatible")
}

/// Result of comparing `P` with `P^⊥`, with membership certificates for
/// each generator in each direction.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "Laurent<F>: Serialize"))]
pub struct OrthogonalReport<F> {
    pub input: Submodule<F>,
    pub complement: Submodule<F>,
    /// `P ⊆ P^⊥`
    pub isotropic: bool,
    /// `P^⊥ ⊆ P`
    pub coisotropic: bool,
    pub is_self_annihilating: bool,
    pub p_in_perp: Vec<Option<Vec<Laurent<F>>>>,
    pub perp_in_p: Vec<Option<Vec<Laurent<F>>>>,
}

/// A primary piece `Λ/(Φ_k^e)` of a chain factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimaryBlock {
    pub chain_index: usize,
    pub k: u64,
    pub exponent: u32,
}

/// `⊕^a Λ/(Φ_k²)` with `a >= 2`: the self-annihilating submodules form a
/// positive-dimensional family, so instead of listing them the enumeration
/// records the property every nonzero member has: multiplying any nonzero
/// element by `Φ_k` (when needed) gives a nonzero element whose coordinates
/// all lie in `(Φ_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDescription {
    pub k: u64,
    pub multiplicity: usize,
    pub property: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "Laurent<F>: Serialize"))]
pub struct Enumeration<F> {
    pub blocks: Vec<PrimaryBlock>,
    /// Exhaustive when `families` is empty.
    pub candidates: Vec<Submodule<F>>,
    pub families: Vec<FamilyDescription>,
}

/// Cyclotomic primary decomposition of each chain factor.
pub fn primary_blocks<F: Field>(m: &LambdaModule<F>) -> Result<Vec<PrimaryBlock>> {
    let mut out = Vec::new();
    for (i, d) in m.factors().iter().enumerate() {
        let mut rest = d.clone();
        for k in cyclotomic_divisors(d) {
            let phi: Laurent<F> = cyclotomic(k)?;
            let mut e = 0;
            while let Some(q) = rest.exact_div(&phi) {
                rest = q;
                e += 1;
            }
            out.push(PrimaryBlock {
                chain_index: i,
                k,
                exponent: e,
            });
        }
        if !rest.is_unit() {
            return Err(Error::EnumerationUnsupported("non-cyclotomic factor".into()));
        }
    }
    Ok(out)
}

/// Self-annihilating submodules on modules whose primary blocks are
/// `Λ/(Φ_k^e)` with `e <= 2`.
pub fn enumerate_self_annihilating<F: Field>(b: &BlanchfieldForm<F>) -> Result<Enumeration<F>> {
    let m = b.module();
    let blocks = primary_blocks(m)?;
    let mut ks: Vec<u64> = blocks.iter().map(|x| x.k).collect();
    ks.sort_unstable();
    ks.dedup();
    let mut generators = Vec::new();
    let mut families = Vec::new();
    let mut impossible = false;
    for k in ks {
        let of_k: Vec<&PrimaryBlock> = blocks.iter().filter(|x| x.k == k).collect();
        if of_k.iter().any(|x| x.exponent > 2) {
            return Err(Error::EnumerationUnsupported(format!("exponent above 2 at Φ_{k}")));
        }
        let phi: Laurent<F> = cyclotomic(k)?;
        match (of_k.len(), of_k[0].exponent) {
            (1, 1) => impossible = true,
            (1, 2) => {
                let i = of_k[0].chain_index;
                let d = &m.factors()[i];
                let c = d.exact_div(&phi).expect("Φ_k divides its block");
                generators.push(m.scale(&c, &m.chain_generator(i)));
            }
            (a, _) if of_k.iter().all(|x| x.exponent == 2) => families.push(FamilyDescription {
                k,
                multiplicity: a,
                property: "every nonzero element times Φ_k (if needed) is nonzero with all coordinates in (Φ_k)"
                    .into(),
            }),
            (a, _) if of_k.iter().all(|x| x.exponent == 1) => {
                return Err(Error::EnumerationUnsupported(format!(
                    "{a} blocks Λ/(Φ_{k}); submodules are subspaces over Q(ζ_{k})"
                )))
            }
            _ => return Err(Error::EnumerationUnsupported(format!("mixed exponents at Φ_{k}"))),
        }
    }
    let mut candidates = Vec::new();
    if !impossible && families.is_empty() {
        let p = Submodule::new(generators);
        if b.is_self_annihilating(&p)?.is_self_annihilating {
            candidates.push(p);
        }
    }
    if impossible {
        families.clear();
    }
    Ok(Enumeration {
        blocks,
        candidates,
        families,
    })
}

/// `Some((k, e))` if the module is cyclic of order `Φ_k^e`.
pub fn cyclic_cyclotomic_type<F: Field>(m: &LambdaModule<F>) -> Option<(u64, u32)> {
    match m.factors() {
        [d] => as_cyclotomic_power(d),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LaurentPoly;

    fn phi(k: u64) -> LaurentPoly {
        cyclotomic(k).unwrap()
    }

    fn square_form(k: u64) -> BlanchfieldForm<Rational> {
        BlanchfieldForm::diagonal(vec![(phi(k).pow(2), LaurentPoly::one())]).unwrap()
    }

    #[test]
    fn diagonal_pairings() {
        let b = square_form(6);
        let m = b.module().clone();
        let g = m.generator(0);
        let v = b.pairing(&g, &g).unwrap();
        assert!(!v.is_zero());
        assert_eq!(v.denom(), &phi(6).pow(2));
        let x = m.scale(&phi(6), &g);
        assert!(b.pairing(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn seifert_trefoil_denominator() {
        let b = BlanchfieldForm::from_seifert(&SeifertMatrix::trefoil()).unwrap();
        let g = b.module().chain_generator(0);
        let v = b.pairing(&g, &g).unwrap();
        assert_eq!(v.denom(), &phi(6));
        assert!(b.is_hermitian());
        assert!(b.is_nonsingular());
    }

    #[test]
    fn complement_of_phi_submodule() {
        let b = square_form(6);
        let m = b.module().clone();
        let p = Submodule::new(vec![m.scale(&phi(6), &m.generator(0))]);
        let perp = b.orthogonal_complement(&p).unwrap();
        assert!(m.same_submodule(&perp, &p).unwrap());
        assert!(b.is_self_annihilating(&p).unwrap().is_self_annihilating);
        assert!(!b.is_self_annihilating(&Submodule::zero()).unwrap().is_self_annihilating);
        assert!(!b.is_self_annihilating(&m.full()).unwrap().is_self_annihilating);
        assert!(b.orthogonal_complement(&m.full()).unwrap().is_zero());
    }

    #[test]
    fn balanced_numerator_is_hermitian() {
        let b = BlanchfieldForm::diagonal(vec![(phi(6).pow(2), LaurentPoly::t_pow(2))]).unwrap();
        assert!(b.is_hermitian());
        assert!(!square_form(6).is_hermitian());
    }

    #[test]
    fn rejects_bad_diagonal_data() {
        assert!(BlanchfieldForm::diagonal(vec![(phi(6).pow(2), phi(6))]).is_err());
        assert!(BlanchfieldForm::diagonal(vec![(phi(6), LaurentPoly::from_coeffs(&[1, 2]))]).is_err());
        assert!(BlanchfieldForm::diagonal(vec![(LaurentPoly::t(), LaurentPoly::one())]).is_err());
    }

    #[test]
    fn enumeration_shapes() {
        let e = enumerate_self_annihilating(&square_form(6)).unwrap();
        assert_eq!(e.candidates.len(), 1);
        let m = square_form(6).module().clone();
        let expected = Submodule::new(vec![m.scale(&phi(6), &m.generator(0))]);
        assert!(m.same_submodule(&e.candidates[0], &expected).unwrap());

        let single = BlanchfieldForm::diagonal(vec![(phi(6), LaurentPoly::one())]).unwrap();
        let e = enumerate_self_annihilating(&single).unwrap();
        assert!(e.candidates.is_empty() && e.families.is_empty());

        let twice = BlanchfieldForm::diagonal(vec![
            (phi(6).pow(2), LaurentPoly::one()),
            (phi(6).pow(2), LaurentPoly::one()),
        ])
        .unwrap();
        let e = enumerate_self_annihilating(&twice).unwrap();
        assert_eq!(e.families.len(), 1);
        assert_eq!(e.families[0].multiplicity, 2);

        let cube = BlanchfieldForm::diagonal(vec![(phi(6).pow(3), LaurentPoly::one())]).unwrap();
        assert!(matches!(
            enumerate_self_annihilating(&cube),
            Err(Error::EnumerationUnsupported(_))
        ));
    }
}
