mod common;

use common::gen;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rhosplit::gamma_group::GammaElement;
use rhosplit::lambda_ring::QtModLambda;
use rhosplit::{LaurentPoly, Rational};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_axioms(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (gen::gamma(&mut r), gen::gamma(&mut r), gen::gamma(&mut r));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert_eq!(a.multiply(&GammaElement::identity()), a.clone());
        prop_assert_eq!(GammaElement::identity().multiply(&a), a.clone());
        prop_assert!(a.multiply(&a.inverse()).is_identity());
        prop_assert!(a.inverse().multiply(&a).is_identity());
    }

    #[test]
    fn metabelian(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c, d) = (gen::gamma(&mut r), gen::gamma(&mut r), gen::gamma(&mut r), gen::gamma(&mut r));
        let (x, y) = (a.commutator(&b), c.commutator(&d));
        prop_assert_eq!(x.exponent, 0);
        prop_assert!(x.commutator(&y).is_identity());
    }

    #[test]
    fn conjugation_by_generator(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let c = gen::coset(&mut r);
        let mu = GammaElement::<Rational>::new(QtModLambda::zero(), 1);
        let x = GammaElement::new(c.clone(), 0);
        prop_assert_eq!(mu.multiply(&x).multiply(&mu.inverse()), GammaElement::new(c.scale(&LaurentPoly::t()), 0));
    }
}
