mod common;

use common::{gen, QModel};
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhosplit::lambda_module::LambdaModule;
use rhosplit::lambda_ring::cyclotomic;
use rhosplit::obstruction::{
    family_independence, independence_certificate, reduce_to_phi_block, Companion, CompanionTable,
    LinearCombination, SatelliteKnot, Term, Verdict,
};
use rhosplit::seifert::DEFAULT_PRECISION;
use rhosplit::{Error, LaurentPoly};

const IN_T: [u64; 5] = [30, 42, 66, 70, 78];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn term(a: i64, k: u64, c: &Companion) -> Term {
    Term {
        a,
        knot: SatelliteKnot::new(k, c.clone()).unwrap(),
    }
}

fn random_combination(r: &mut ChaCha8Rng) -> LinearCombination {
    let presets = ["J", "trefoil", "figure8", "J#J"];
    let mut ks = IN_T.to_vec();
    ks.shuffle(r);
    let terms = ks[..r.gen_range(1..=3)]
        .iter()
        .map(|&k| term(r.gen_range(-3..=3), k, &Companion::preset(presets.choose(r).unwrap()).unwrap()))
        .collect();
    LinearCombination::new(terms)
}

fn certify(l: &LinearCombination, table: &CompanionTable) -> Verdict {
    independence_certificate(l, table).unwrap().verdict
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_ignores_order_zero_terms_and_sign(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_combination(&mut r);
        let table = CompanionTable::build(
            ["J", "trefoil", "figure8", "J#J"].iter().map(|n| Companion::preset(n).unwrap()).collect::<Vec<_>>().iter(),
            DEFAULT_PRECISION,
        );
        let base = certify(&l, &table);

        let mut shuffled = l.terms.clone();
        shuffled.shuffle(&mut r);
        prop_assert_eq!(certify(&LinearCombination::new(shuffled), &table), base);

        let mut padded = l.terms.clone();
        let k = *IN_T.choose(&mut r).unwrap();
        let c = padded.iter().find(|t| t.knot.k == k).map_or(Companion::preset("J").unwrap(), |t| t.knot.companion.clone());
        padded.push(term(0, k, &c));
        padded.push(term(2, k, &c));
        padded.push(term(-2, k, &c));
        prop_assert_eq!(certify(&LinearCombination::new(padded), &table), base);

        let negated = l.terms.iter().map(|t| Term { a: -t.a, knot: t.knot.clone() }).collect();
        prop_assert_eq!(certify(&LinearCombination::new(negated), &table), base);

        let nonzero = l.terms.iter().any(|t| t.a != 0);
        prop_assert_eq!(base == Verdict::Vanishes, !nonzero);
    }

    #[test]
    fn witnesses_carry_a_nonzero_tally(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_combination(&mut r);
        let table = CompanionTable::for_combination(&l, DEFAULT_PRECISION);
        let rep = independence_certificate(&l, &table).unwrap();
        if rep.verdict == Verdict::Obstructed {
            let w = rep.witness.unwrap();
            prop_assert!(w.extends_over_solution);
            prop_assert!(w.epsilon.contains(&1));
            prop_assert!(w.rho.is_certified_nonzero());
            prop_assert!(!w.element.is_zero());
        }
    }

    #[test]
    fn reduction_lands_in_the_phi_block(seed in any::<u64>(), k in prop::sample::select(vec![6u64, 10, 12, 30])) {
        let mut r = rng(seed);
        let phi: LaurentPoly = cyclotomic(k).unwrap();
        let copies = r.gen_range(1..=3);
        let blocks = vec![phi.pow(2); copies];
        let m = LambdaModule::from_blocks(&blocks).unwrap();
        let model = QModel::new(&blocks);
        let a: Vec<LaurentPoly> = (0..copies).map(|_| gen::laurent(&mut r, 5, 3)).collect();
        let x = m.from_generator_coords(&a).unwrap();
        if x.is_zero() {
            prop_assert!(matches!(reduce_to_phi_block(&m, &phi, &x), Err(Error::ZeroElement)));
            return Ok(());
        }
        let y = reduce_to_phi_block(&m, &phi, &x).unwrap();
        // oracle: the Q-span of Φ·e_j together with its t-orbit
        let phi_block = model.submodule_span(
            &(0..copies)
                .map(|j| {
                    let mut e = vec![LaurentPoly::zero(); copies];
                    e[j] = phi.clone();
                    model.flatten(&e)
                })
                .collect::<Vec<_>>(),
        );
        let fy = model.flatten(&m.generator_coords(&y));
        prop_assert!(fy.iter().any(|c| !c.is_zero()));
        prop_assert!(phi_block.contains(&fy));
        if phi_block.contains(&model.flatten(&a)) {
            prop_assert_eq!(y, x);
        }
    }
}

#[test]
fn shared_k_violates_coprimality() {
    let l = LinearCombination::new(vec![
        term(1, 30, &Companion::preset("J").unwrap()),
        term(1, 30, &Companion::preset("J#J").unwrap()),
    ]);
    let table = CompanionTable::for_combination(&l, DEFAULT_PRECISION);
    assert!(matches!(independence_certificate(&l, &table), Err(Error::CoprimalityViolated(_))));
}

#[test]
fn preconditions_gate_the_verdict() {
    for (name, verdict) in [("J", Verdict::Obstructed), ("trefoil", Verdict::NotApplicable), ("unknot", Verdict::NotApplicable)] {
        let l = LinearCombination::new(vec![term(1, 30, &Companion::preset(name).unwrap()), term(-1, 42, &Companion::preset("J").unwrap())]);
        let table = CompanionTable::for_combination(&l, DEFAULT_PRECISION);
        assert_eq!(certify(&l, &table), verdict, "{name}");
    }
}

#[test]
fn family_of_symbols() {
    let (j1, j2) = (Companion::symbol("J1"), Companion::symbol("J2"));
    let l = LinearCombination::new(vec![term(2, 30, &j1), term(-1, 30, &j2), term(1, 42, &j1)]);
    let table = CompanionTable::for_combination(&l, DEFAULT_PRECISION);
    let rep = family_independence(&l, &table).unwrap();
    assert_eq!(rep.verdict, Verdict::Obstructed);
    assert!(rep.witness.unwrap().rho.is_certified_nonzero());

    let cancelled = LinearCombination::new(vec![term(1, 30, &j1), term(-1, 30, &j1)]);
    assert_eq!(family_independence(&cancelled, &table).unwrap().verdict, Verdict::Vanishes);

    let mixed = LinearCombination::new(vec![term(1, 30, &Companion::preset("J").unwrap())]);
    assert!(matches!(family_independence(&mixed, &table), Err(Error::Literal(_))));
}

#[test]
fn indices_outside_t_rejected() {
    for k in [1u64, 6, 10, 12] {
        assert!(matches!(SatelliteKnot::new(k, Companion::symbol("J")), Err(Error::NotInT(_))));
    }
}
