//! The group `Γ = Q(t)/Λ ⋊ Z`, with `Z` acting on the fiber by powers of
//! `t`, and the homology-level data of the representations `φ_x`.

use serde::Serialize;

use crate::blanchfield::BlanchfieldForm;
use crate::error::Result;
use crate::lambda_module::ModuleElement;
use crate::lambda_ring::{Laurent, QtModLambda};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "QtModLambda<F>: Serialize"))]
pub struct GammaElement<F> {
    pub coset: QtModLambda<F>,
    pub exponent: i64,
}

impl<F: Field> GammaElement<F> {
    pub fn new(coset: QtModLambda<F>, exponent: i64) -> Self {
        Self { coset, exponent }
    }

    pub fn identity() -> Self {
        Self::new(QtModLambda::zero(), 0)
    }

    pub fn is_identity(&self) -> bool {
        self.coset.is_zero() && self.exponent == 0
    }

    /// `(a + t^e b, e + f)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let moved = other.coset.scale(&Laurent::t_pow(self.exponent));
        Self::new(self.coset.add(&moved), self.exponent + other.exponent)
    }

    /// `(-t^-e a, -e)`.
    pub fn inverse(&self) -> Self {
        Self::new(self.coset.scale(&Laurent::t_pow(-self.exponent)).neg(), -self.exponent)
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.multiply(other)
            .multiply(&self.inverse())
            .multiply(&other.inverse())
    }
}

pub fn gamma_multiply<F: Field>(a: &GammaElement<F>, b: &GammaElement<F>) -> GammaElement<F> {
    a.multiply(b)
}

pub fn gamma_inverse<F: Field>(a: &GammaElement<F>) -> GammaElement<F> {
    a.inverse()
}

/// The data `(x, Bℓ)` determining `φ_x`. Elements of the knot group enter
/// only through their homology class and abelianization, supplied by the
/// caller.
#[derive(Clone, Debug)]
pub struct MetabelianRepDescriptor<'a, F> {
    pub base_element: ModuleElement<F>,
    pub form: &'a BlanchfieldForm<F>,
}

impl<'a, F: Field> MetabelianRepDescriptor<'a, F> {
    pub fn new(base_element: ModuleElement<F>, form: &'a BlanchfieldForm<F>) -> Result<Self> {
        form.module().check(&base_element)?;
        Ok(Self { base_element, form })
    }

    /// `(Bℓ(x, y), ε)`, where `y` is the class of `g μ^-ε` for a group
    /// element `g` with abelianization `ε`.
    pub fn image(&self, y: &ModuleElement<F>, eps: i64) -> Result<GammaElement<F>> {
        Ok(GammaElement::new(self.form.pairing(&self.base_element, y)?, eps))
    }
}

pub fn phi_image_on_homology<F: Field>(
    desc: &MetabelianRepDescriptor<'_, F>,
    y: &ModuleElement<F>,
    eps: i64,
) -> Result<GammaElement<F>> {
    desc.image(y, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda_ring::cyclotomic;
    use crate::{LaurentPoly, Rational};
    use num_traits::One;

    fn coset(num: &[i64], den: &[i64]) -> QtModLambda<Rational> {
        QtModLambda::from_parts(LaurentPoly::from_coeffs(num), LaurentPoly::from_coeffs(den)).unwrap()
    }

    #[test]
    fn conjugation_by_t() {
        let c = coset(&[1], &[1, -1, 1]);
        let t = GammaElement::new(QtModLambda::zero(), 1);
        let x = GammaElement::new(c.clone(), 0);
        let conj = t.multiply(&x).multiply(&t.inverse());
        assert_eq!(conj, GammaElement::new(c.scale(&LaurentPoly::t()), 0));
    }

    #[test]
    fn inverses() {
        let a = GammaElement::new(coset(&[2, 1], &[1, 0, 1]), 3);
        assert!(a.multiply(&a.inverse()).is_identity());
        assert!(a.inverse().multiply(&a).is_identity());
        let z = GammaElement::<Rational>::new(QtModLambda::zero(), 5);
        assert_eq!(z.inverse(), GammaElement::new(QtModLambda::zero(), -5));
    }

    #[test]
    fn phi_images() {
        let phi6: LaurentPoly = cyclotomic(6).unwrap();
        let form = BlanchfieldForm::diagonal(vec![(phi6.pow(2), LaurentPoly::one())]).unwrap();
        let m = form.module().clone();
        let g = m.generator(0);
        let x = m.scale(&phi6, &g);
        let desc = MetabelianRepDescriptor::new(x.clone(), &form).unwrap();
        assert!(phi_image_on_homology(&desc, &x, 4).unwrap().coset.is_zero());
        let desc = MetabelianRepDescriptor::new(g.clone(), &form).unwrap();
        let img = desc.image(&g, -1).unwrap();
        assert!(!img.coset.is_zero());
        assert_eq!(img.exponent, -1);
        let zero = MetabelianRepDescriptor::new(m.zero(), &form).unwrap();
        assert!(zero.image(&g, 2).unwrap().coset.is_zero());
    }
}
