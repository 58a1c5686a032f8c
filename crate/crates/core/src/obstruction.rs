//! Satellite knots with cyclotomic Alexander modules and the linear
//! independence certificate for combinations of them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::blanchfield::BlanchfieldForm;
use crate::error::{Error, Result};
use crate::lambda_module::{LambdaModule, ModuleElement, Submodule};
use crate::lambda_ring::{cyclotomic, euler_phi, gcd_bezout, is_in_t};
use crate::rho::RhoValue;
use crate::seifert::{arf_invariant, rho_integral_with_precision, SeifertMatrix, DEFAULT_PRECISION};
use crate::{LaurentPoly, Rational};

/// The knot tied into the axis of the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Companion {
    Seifert { name: String, matrix: SeifertMatrix },
    Symbol(String),
}

impl Companion {
    pub fn preset(name: &str) -> Option<Self> {
        SeifertMatrix::preset(name).map(|matrix| Companion::Seifert {
            name: name.to_string(),
            matrix,
        })
    }

    pub fn symbol(name: &str) -> Self {
        Companion::Symbol(name.to_string())
    }

    /// Identity used for merging terms: equal matrices or equal symbols.
    pub fn key(&self) -> String {
        match self {
            Companion::Seifert { matrix, .. } => format!("seifert:{:?}", matrix.entries()),
            Companion::Symbol(s) => format!("symbol:{s}"),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Companion::Seifert { name, .. } => name.clone(),
            Companion::Symbol(s) => s.clone(),
        }
    }
}

/// `K_k`: the pattern with Alexander module `Λ/(Φ_k²)`, its axis
/// generating that module, with a companion tied in along the axis.
#[derive(Clone, Debug, Serialize)]
pub struct SatelliteKnot {
    pub k: u64,
    #[serde(skip)]
    pub pattern_module: LambdaModule<Rational>,
    #[serde(skip)]
    pub axis_class: ModuleElement<Rational>,
    pub companion: Companion,
    pub name: String,
}

impl SatelliteKnot {
    pub fn new(k: u64, companion: Companion) -> Result<Self> {
        if !is_in_t(k) {
            return Err(Error::NotInT(k));
        }
        let phi: LaurentPoly = cyclotomic(k)?;
        let pattern_module = LambdaModule::from_blocks(&[phi.pow(2)])?;
        let axis_class = pattern_module.generator(0);
        let name = format!("K_{k}({})", companion.label());
        Ok(Self {
            k,
            pattern_module,
            axis_class,
            companion,
            name,
        })
    }

    pub fn phi(&self) -> LaurentPoly {
        cyclotomic(self.k).expect("k >= 1")
    }
}

/// Companion data computed once and then shared read-only.
#[derive(Clone, Debug, Serialize)]
pub struct CompanionData {
    pub rho: RhoValue,
    pub arf: Option<u8>,
}

#[derive(Clone, Debug, Default)]
pub struct CompanionTable {
    entries: BTreeMap<String, CompanionData>,
    precision: u32,
}

impl CompanionTable {
    pub fn build<'a>(companions: impl IntoIterator<Item = &'a Companion>, precision: u32) -> Self {
        let mut entries = BTreeMap::new();
        for c in companions {
            entries.entry(c.key()).or_insert_with(|| match c {
                Companion::Seifert { matrix, .. } => CompanionData {
                    rho: RhoValue::from_integral(&rho_integral_with_precision(matrix, precision)),
                    arf: Some(arf_invariant(matrix)),
                },
                Companion::Symbol(s) => CompanionData {
                    rho: RhoValue::symbol(s),
                    arf: None,
                },
            });
        }
        Self { entries, precision }
    }

    pub fn for_combination(l: &LinearCombination, precision: u32) -> Self {
        Self::build(l.terms.iter().map(|t| &t.knot.companion), precision)
    }

    pub fn get(&self, c: &Companion) -> Option<&CompanionData> {
        self.entries.get(&c.key())
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

/// `ε ρ(companion)` with `ε = 1` iff `x ≠ 0`, for `x` in `(Φ_k) ⊂ Λ/(Φ_k²)`.
pub fn rho_of_element(knot: &SatelliteKnot, x: &ModuleElement<Rational>, table: &CompanionTable) -> Result<RhoValue> {
    let m = &knot.pattern_module;
    m.check(x)?;
    if !in_phi_block(m, &knot.phi(), x) {
        return Err(Error::OutsideReducedBlock);
    }
    if x.is_zero() {
        return Ok(RhoValue::zero());
    }
    let data = table
        .get(&knot.companion)
        .ok_or_else(|| Error::Literal(format!("companion {} missing from table", knot.companion.label())))?;
    Ok(data.rho.clone())
}

fn in_phi_block(m: &LambdaModule<Rational>, phi: &LaurentPoly, x: &ModuleElement<Rational>) -> bool {
    let _ = m;
    x.coords().iter().all(|c| phi.divides(c))
}

/// `x` if all its coordinates lie in `(Φ)`, otherwise `Φ x`, which is then
/// nonzero with all coordinates in `(Φ)`.
pub fn reduce_to_phi_block(
    m: &LambdaModule<Rational>,
    phi: &LaurentPoly,
    x: &ModuleElement<Rational>,
) -> Result<ModuleElement<Rational>> {
    m.check(x)?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if in_phi_block(m, phi, x) {
        return Ok(x.clone());
    }
    Ok(m.scale(phi, x))
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub a: i64,
    pub knot: SatelliteKnot,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LinearCombination {
    pub terms: Vec<Term>,
}

impl LinearCombination {
    pub fn new(terms: Vec<Term>) -> Self {
        Self { terms }
    }

    /// Adds up coefficients of identical `(k, companion)` knots and drops
    /// zero terms. Sorted by `k`, then companion.
    pub fn merged(&self) -> Vec<Term> {
        let mut acc: BTreeMap<(u64, String), Term> = BTreeMap::new();
        for t in &self.terms {
            acc.entry((t.knot.k, t.knot.companion.key()))
                .and_modify(|e| e.a += t.a)
                .or_insert_with(|| t.clone());
        }
        acc.into_values().filter(|t| t.a != 0).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Obstructed,
    NotApplicable,
    Vanishes,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "obstructed",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Vanishes => "vanishes",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub k: u64,
    /// The reduced element in block coordinates of `⊕ Λ/(Φ_k²)`.
    pub element: ModuleElement<Rational>,
    pub epsilon: Vec<u8>,
    pub rho: RhoValue,
    /// `x ∈ ⊕ (Φ_k)`, the block every self-annihilating submodule sits in.
    pub extends_over_solution: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Preconditions {
    pub arf_zero: Option<bool>,
    pub rho_nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub witness: Option<Witness>,
    pub preconditions: Option<Preconditions>,
    pub trace: Vec<String>,
    pub assumptions: Vec<String>,
}

const ASSUMPTIONS: [&str; 3] = [
    "each satellite K_k is (1)-solvable (input data, not verified)",
    "rho(K, phi_x) = epsilon * rho(companion) for x in the (Phi_k) block, taken as an axiom of the satellite",
    "companion symbols are linearly independent over Z",
];

fn report(verdict: Verdict, reason: Option<String>, trace: Vec<String>) -> CertificateReport {
    CertificateReport {
        verdict,
        reason,
        witness: None,
        preconditions: None,
        trace,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
    }
}

// ⊕ Λ/(Φ_k²), one block per copy, with the balanced form t^φ(k) / Φ_k².
fn block_form(k: u64, copies: usize) -> Result<BlanchfieldForm<Rational>> {
    let phi: LaurentPoly = cyclotomic(k)?;
    let c = LaurentPoly::t_pow(euler_phi(k) as i64);
    BlanchfieldForm::diagonal(vec![(phi.pow(2), c); copies])
}

// Splitting reduction: the Φ_k² block against the product of the others.
fn isolate_block(k: u64, terms: &[Term], trace: &mut Vec<String>) -> Result<()> {
    let phi: LaurentPoly = cyclotomic(k)?;
    let own = phi.pow(2);
    let mut rest = LaurentPoly::from_coeffs(&[1]);
    for t in terms.iter().filter(|t| t.knot.k != k) {
        rest = &rest * &t.knot.phi().pow(2);
    }
    let bez = gcd_bezout(&own, &rest)?;
    if !bez.is_coprime() {
        return Err(Error::CoprimalityViolated(format!("Φ_{k} shares a factor with the other blocks")));
    }
    let identity = &(&bez.f * &own) + &(&bez.h * &rest);
    trace.push(format!(
        "splitting reduction: annihilator of the Φ_{k} block is coprime to the rest (Bézout identity {}); \
         a self-annihilating submodule restricts to one on the Φ_{k} block",
        if identity == LaurentPoly::from_coeffs(&[1]) { "verified" } else { "FAILED" }
    ));
    Ok(())
}

// Universal argument on ⊕_i ⊕^{|a_i|} Λ/(Φ_k²): a sample nonzero element is
// reduced into ⊕ (Φ_k) and its ε pattern tallied with per-copy signs.
fn tally_block(
    k: u64,
    block: &[(i64, RhoValue)],
    trace: &mut Vec<String>,
) -> Result<Witness> {
    let copies: usize = block.iter().map(|(a, _)| a.unsigned_abs() as usize).sum();
    let form = block_form(k, copies)?;
    let m = form.module();
    let phi: LaurentPoly = cyclotomic(k)?;
    let n = m.num_generators();
    let ones = vec![LaurentPoly::from_coeffs(&[1]); n];
    let sample = m.from_generator_coords(&ones)?;
    let reduced = reduce_to_phi_block(m, &phi, &sample)?;
    trace.push(format!(
        "Φ-multiplication: sample element with all {n} coordinates a generator is outside ⊕(Φ_{k}); Φ_{k}·x is nonzero with all coordinates in (Φ_{k})"
    ));
    let phi_block = Submodule::new((0..n).map(|j| m.scale(&phi, &m.generator(j))).collect());
    let extends = m.contains(&phi_block, &reduced)?;
    let coords = m.generator_coords(&reduced);
    let epsilon: Vec<u8> = coords
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut e = vec![LaurentPoly::from_coeffs(&[0]); n];
            e[j] = c.clone();
            u8::from(!m.from_generator_coords(&e).expect("length").is_zero())
        })
        .collect();
    let mut rho = RhoValue::zero();
    let mut offset = 0;
    for (a, r) in block {
        let count = a.unsigned_abs() as usize;
        let m_i: i64 = epsilon[offset..offset + count].iter().map(|&e| e as i64).sum();
        rho = rho.add(&r.scale(a.signum() * m_i));
        offset += count;
    }
    trace.push(format!(
        "ε tally: ε = {epsilon:?}; each ε_j is 0 or 1, ε_1 = 1 for any reduced nonzero element after reordering, \
         and copies of one companion enter with one sign, so the tally is a nonzero combination"
    ));
    trace.push(
        "universal argument: every nonzero submodule of the block contains a reduced nonzero element, \
         and every reduced nonzero element gives a nonzero tally"
            .to_string(),
    );
    Ok(Witness {
        k,
        element: reduced,
        epsilon,
        rho,
        extends_over_solution: extends,
    })
}

/// Certificate that `Σ a_i K_{k_i}` is not slice-like, for a single
/// companion per `k`.
pub fn independence_certificate(l: &LinearCombination, table: &CompanionTable) -> Result<CertificateReport> {
    let mut trace = Vec::new();
    let terms = l.merged();
    trace.push(format!("merged {} terms into {} nonzero terms", l.terms.len(), terms.len()));
    if terms.is_empty() {
        return Ok(report(Verdict::Vanishes, Some("all coefficients vanish".into()), trace));
    }
    for w in terms.windows(2) {
        if w[0].knot.k == w[1].knot.k {
            return Err(Error::CoprimalityViolated(format!(
                "k = {} appears with companions {} and {}",
                w[0].knot.k,
                w[0].knot.companion.label(),
                w[1].knot.companion.label()
            )));
        }
    }
    let chosen = &terms[0];
    let k = chosen.knot.k;
    let sign = chosen.a.signum();
    if sign < 0 {
        trace.push(format!("sign normalization: replaced the combination by its negative so that a(K_{k}) > 0"));
    }
    let a = chosen.a * sign;
    trace.push(format!("chose K_{k} with coefficient {a}"));

    let data = table
        .get(&chosen.knot.companion)
        .ok_or_else(|| Error::Literal("companion missing from table".into()))?;
    let arf_zero = data.arf.map(|x| x == 0);
    let rho_nonzero = data.rho.is_certified_nonzero();
    let pre = Preconditions { arf_zero, rho_nonzero };
    if arf_zero == Some(false) {
        let mut r = report(Verdict::NotApplicable, Some("companion has nonzero Arf invariant".into()), trace);
        r.preconditions = Some(pre);
        return Ok(r);
    }
    if !rho_nonzero {
        let mut r = report(
            Verdict::NotApplicable,
            Some("companion rho is not certified nonzero".into()),
            trace,
        );
        r.preconditions = Some(pre);
        return Ok(r);
    }

    isolate_block(k, &terms, &mut trace)?;
    let witness = tally_block(k, &[(a, data.rho.clone())], &mut trace)?;
    debug_assert!(witness.rho.is_certified_nonzero());
    let mut r = report(Verdict::Obstructed, None, trace);
    r.preconditions = Some(pre);
    r.witness = Some(witness);
    Ok(r)
}

/// Certificate for combinations of `K^i_k` whose companions are formal
/// symbols `J_i`. Several companions may share one `k`.
pub fn family_independence(l: &LinearCombination, table: &CompanionTable) -> Result<CertificateReport> {
    let mut trace = Vec::new();
    for t in &l.terms {
        if !matches!(t.knot.companion, Companion::Symbol(_)) {
            return Err(Error::Literal(format!(
                "family certificates need symbolic companions, got {}",
                t.knot.companion.label()
            )));
        }
    }
    let terms = l.merged();
    trace.push(format!("merged {} terms into {} nonzero terms", l.terms.len(), terms.len()));
    let Some(first) = terms.first() else {
        return Ok(report(Verdict::Vanishes, Some("all coefficients vanish".into()), trace));
    };
    let k = first.knot.k;
    let block: Vec<&Term> = terms.iter().filter(|t| t.knot.k == k).collect();
    trace.push(format!("grouped by k: the Φ_{k} block holds {} companions", block.len()));
    isolate_block(k, &terms, &mut trace)?;
    let sign = first.a.signum();
    if sign < 0 {
        trace.push("sign normalization: replaced the combination by its negative".to_string());
    }
    let mut data = Vec::new();
    for t in &block {
        let d = table
            .get(&t.knot.companion)
            .ok_or_else(|| Error::Literal("companion missing from table".into()))?;
        data.push((t.a * sign, d.rho.clone()));
    }
    let witness = tally_block(k, &data, &mut trace)?;
    let verdict = if witness.rho.is_certified_nonzero() {
        Verdict::Obstructed
    } else {
        Verdict::NotApplicable
    };
    let mut r = report(verdict, None, trace);
    r.preconditions = Some(Preconditions {
        arf_zero: None,
        rho_nonzero: witness.rho.is_certified_nonzero(),
    });
    r.witness = Some(witness);
    Ok(r)
}

/// Memo table with the default precision.
pub fn default_table(l: &LinearCombination) -> CompanionTable {
    CompanionTable::for_combination(l, DEFAULT_PRECISION)
}
