//! Splitting a self-annihilating submodule of `M1 ⊕ M2` along coprime
//! annihilators.
//!
//! With `f Δ1 + h Δ2 = 1`, the scalar `h Δ2` acts as the identity on `M1`
//! and as zero on `M2`, and `f Δ1` the other way round. Applied to the
//! generators of `P` they produce generators of `P1 = {x : (x, 0) ∈ P}` and
//! `P2 = {y : (0, y) ∈ P}`.

use serde::Serialize;

use crate::blanchfield::{direct_sum_form, BlanchfieldForm};
use crate::error::{Error, Result};
use crate::lambda_module::{direct_sum, DirectSum, ModuleElement, Submodule};
use crate::lambda_ring::{gcd_bezout, Laurent};
use crate::rho::RhoValue;
use crate::scalar::Field;

type Certificates<F> = Vec<Option<Vec<Laurent<F>>>>;

/// Whether self-annihilation was transferred to the summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transfer {
    /// `P` is self-annihilating and so are both `P1` and `P2`.
    Verified,
    /// `P` is self-annihilating but a summand is not.
    Failed,
    /// `P` is not self-annihilating, so there is nothing to transfer.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "Laurent<F>: Serialize"))]
pub struct SplittingChecks<F> {
    pub bezout_identity: bool,
    /// Certificates for `(x, 0) ∈ P` and `(0, y) ∈ P`, generator by generator.
    pub summands_in_p: Certificates<F>,
    /// Certificates for `z ∈ P1 ⊕ P2`, generator by generator.
    pub p_in_summands: Certificates<F>,
    pub p_self_annihilating: bool,
    pub p1_self_annihilating: bool,
    pub p2_self_annihilating: bool,
    pub transfer: Transfer,
}

impl<F: Field> SplittingChecks<F> {
    pub fn decomposition_verified(&self) -> bool {
        self.bezout_identity
            && self.summands_in_p.iter().all(Option::is_some)
            && self.p_in_summands.iter().all(Option::is_some)
    }

    pub fn all_passed(&self) -> bool {
        self.decomposition_verified() && self.transfer != Transfer::Failed
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "Laurent<F>: Serialize"))]
pub struct SplittingResult<F> {
    pub delta1: Laurent<F>,
    pub delta2: Laurent<F>,
    /// `f Δ1 + h Δ2 = 1`
    pub bezout: (Laurent<F>, Laurent<F>),
    pub p1: Submodule<F>,
    pub p2: Submodule<F>,
    pub checks: SplittingChecks<F>,
    #[serde(skip)]
    pub sum: DirectSum<F>,
}

pub fn split_submodule<F: Field>(
    b1: &BlanchfieldForm<F>,
    b2: &BlanchfieldForm<F>,
    p: &Submodule<F>,
) -> Result<SplittingResult<F>> {
    let m1 = b1.module();
    let m2 = b2.module();
    let delta1 = m1.annihilator();
    let delta2 = m2.annihilator();
    let bez = gcd_bezout(&delta1, &delta2)?;
    if !bez.is_coprime() {
        return Err(Error::SplittingHypothesis(format!(
            "annihilators share the factor {}",
            bez.gcd.to_text()
        )));
    }
    let sum = direct_sum(m1, m2);
    let form = direct_sum_form(b1, b2);
    debug_assert_eq!(form.module(), &sum.module);
    let m = &sum.module;
    for z in &p.generators {
        m.check(z).map_err(|e| Error::AmbientMismatch(format!("P is not a submodule of M1 ⊕ M2: {e}")))?;
    }

    let (f, h) = (bez.f.clone(), bez.h.clone());
    let e1 = &h * &delta2;
    let e2 = &f * &delta1;
    let bezout_identity = (&e1 + &e2).is_one();

    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for z in &p.generators {
        let x = sum.project_first(&m.scale(&e1, z));
        let y = sum.project_second(&m.scale(&e2, z));
        if !x.is_zero() && !p1.contains(&x) {
            p1.push(x);
        }
        if !y.is_zero() && !p2.contains(&y) {
            p2.push(y);
        }
    }
    let p1 = Submodule::new(p1);
    let p2 = Submodule::new(p2);

    let embedded: Vec<ModuleElement<F>> = p1
        .generators
        .iter()
        .map(|x| sum.embed_first(x))
        .chain(p2.generators.iter().map(|y| sum.embed_second(y)))
        .collect();
    let summands_in_p = embedded
        .iter()
        .map(|w| m.membership(p, w))
        .collect::<Result<_>>()?;
    let both = Submodule::new(embedded);
    let p_in_summands = p
        .generators
        .iter()
        .map(|z| m.membership(&both, z))
        .collect::<Result<_>>()?;

    let p_sa = form.is_self_annihilating(p)?.is_self_annihilating;
    let p1_sa = b1.is_self_annihilating(&p1)?.is_self_annihilating;
    let p2_sa = b2.is_self_annihilating(&p2)?.is_self_annihilating;
    let transfer = match (p_sa, p1_sa && p2_sa) {
        (false, _) => Transfer::NotApplicable,
        (true, true) => Transfer::Verified,
        (true, false) => Transfer::Failed,
    };

    Ok(SplittingResult {
        delta1,
        delta2,
        bezout: (f, h),
        p1,
        p2,
        checks: SplittingChecks {
            bezout_identity,
            summands_in_p,
            p_in_summands,
            p_self_annihilating: p_sa,
            p1_self_annihilating: p1_sa,
            p2_self_annihilating: p2_sa,
            transfer,
        },
        sum,
    })
}

/// Which summand of `K1 # K2` carries the representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    First,
    Second,
}

/// `ρ(K1 # K2, φ)` for `φ` supported on one summand: that summand's value
/// plus the other summand's value under the trivial representation, which
/// is 0.
pub fn rho_additivity(rho1: &RhoValue, rho2: &RhoValue, side: Side) -> RhoValue {
    match side {
        Side::First => rho1.clone(),
        Side::Second => rho2.clone(),
    }
}

/// ρ-value on a generator of `P1` or `P2`, transported from the sum.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "Laurent<F>: Serialize"))]
pub struct TransportedRho<F> {
    pub side: Side,
    pub element: ModuleElement<F>,
    /// Certificate that the embedded element lies in `P`.
    pub in_p: Option<Vec<Laurent<F>>>,
    pub rho: RhoValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    pub coprime_annihilators: bool,
    pub p_self_annihilating: bool,
    pub table_covers_generators: bool,
    pub rho_vanishes_on_listed: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "Laurent<F>: Serialize"))]
pub struct TheoremReport<F> {
    pub verified: bool,
    pub failed_hypothesis: Option<String>,
    pub hypotheses: Hypotheses,
    pub splitting: Option<SplittingResult<F>>,
    pub transported: Vec<TransportedRho<F>>,
    pub assumptions: Vec<String>,
}

const LINEARITY_ASSUMPTION: &str = "rho vanishes on the listed generators of P; vanishing on all of P \
     follows from linearity and the cobordism argument and is assumed, not machine-checked";

/// Runs the splitting engine on one instance and checks each hypothesis
/// and conclusion. Failures are reported, not raised.
pub fn verify_splitting_theorem<F: Field>(
    b1: &BlanchfieldForm<F>,
    b2: &BlanchfieldForm<F>,
    p: &Submodule<F>,
    rho_table: &[(ModuleElement<F>, RhoValue)],
) -> Result<TheoremReport<F>> {
    let coprime = gcd_bezout(&b1.module().annihilator(), &b2.module().annihilator())?.is_coprime();
    let covers = p
        .generators
        .iter()
        .all(|g| g.is_zero() || rho_table.iter().any(|(x, _)| x == g));
    let vanishes = rho_table.iter().all(|(_, r)| r.is_zero());
    let mut hypotheses = Hypotheses {
        coprime_annihilators: coprime,
        p_self_annihilating: false,
        table_covers_generators: covers,
        rho_vanishes_on_listed: vanishes,
    };
    let assumptions = vec![LINEARITY_ASSUMPTION.to_string()];
    let fail = |name: &str, hypotheses: Hypotheses, splitting| TheoremReport {
        verified: false,
        failed_hypothesis: Some(name.to_string()),
        hypotheses,
        splitting,
        transported: Vec::new(),
        assumptions: assumptions.clone(),
    };
    if !coprime {
        return Ok(fail("annihilators are not coprime", hypotheses, None));
    }
    let split = split_submodule(b1, b2, p)?;
    hypotheses.p_self_annihilating = split.checks.p_self_annihilating;
    if !hypotheses.p_self_annihilating {
        return Ok(fail("P is not self-annihilating", hypotheses, Some(split)));
    }
    if !covers {
        return Ok(fail("rho table does not cover the generators of P", hypotheses, Some(split)));
    }
    if !vanishes {
        return Ok(fail("rho does not vanish on P", hypotheses, Some(split)));
    }

    let m = &split.sum.module;
    let mut transported = Vec::new();
    for (side, gens) in [(Side::First, &split.p1), (Side::Second, &split.p2)] {
        for x in &gens.generators {
            let embedded = match side {
                Side::First => split.sum.embed_first(x),
                Side::Second => split.sum.embed_second(x),
            };
            let in_p = m.membership(p, &embedded)?;
            // ρ(K1 # K2, φ_(x,0)) = 0 because (x, 0) ∈ P; the other summand
            // carries the trivial representation
            let rho = rho_additivity(&RhoValue::zero(), &RhoValue::zero(), side);
            transported.push(TransportedRho {
                side,
                element: x.clone(),
                in_p,
                rho,
            });
        }
    }
    let verified = split.checks.all_passed()
        && split.checks.transfer == Transfer::Verified
        && transported.iter().all(|t| t.in_p.is_some());
    Ok(TheoremReport {
        verified,
        failed_hypothesis: None,
        hypotheses,
        splitting: Some(split),
        transported,
        assumptions,
    })
}
