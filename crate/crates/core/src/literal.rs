//! JSON input literals shared by the command line and tests.
//!
//! Polynomials are sparse `[exponent, "num/den"]` lists. Module elements are
//! lists of polynomials in generator (block) coordinates.

use serde::Deserialize;

use crate::blanchfield::BlanchfieldForm;
use crate::error::{Error, Result};
use crate::lambda_module::{LambdaModule, ModuleElement, Submodule};
use crate::obstruction::{Companion, LinearCombination, SatelliteKnot, Term};
use crate::seifert::SeifertMatrix;
use crate::{LaurentPoly, Rational};

pub fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Literal(e.to_string()))
}

/// A preset name, a bare matrix, or `{"name", "seifert"}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum KnotLiteral {
    Preset(String),
    Matrix(Vec<Vec<i64>>),
    Named { name: Option<String>, seifert: Vec<Vec<i64>> },
}

impl KnotLiteral {
    pub fn resolve(&self) -> Result<(String, SeifertMatrix)> {
        match self {
            KnotLiteral::Preset(name) => SeifertMatrix::preset(name)
                .map(|m| (name.clone(), m))
                .ok_or_else(|| Error::Literal(format!("unknown preset {name:?}"))),
            KnotLiteral::Matrix(v) => Ok(("V".to_string(), SeifertMatrix::new(v.clone())?)),
            KnotLiteral::Named { name, seifert } => Ok((
                name.clone().unwrap_or_else(|| "V".to_string()),
                SeifertMatrix::new(seifert.clone())?,
            )),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct ModuleLiteral {
    pub cyclic_factors: Vec<LaurentPoly>,
}

impl ModuleLiteral {
    pub fn build(&self) -> Result<LambdaModule<Rational>> {
        LambdaModule::from_blocks(&self.cyclic_factors)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct DiagonalEntry {
    pub d: LaurentPoly,
    pub c: LaurentPoly,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormLiteral {
    Diagonal(Vec<DiagonalEntry>),
    Seifert(KnotLiteral),
}

impl FormLiteral {
    pub fn build(&self) -> Result<BlanchfieldForm<Rational>> {
        match self {
            FormLiteral::Diagonal(entries) => {
                BlanchfieldForm::diagonal(entries.iter().map(|e| (e.d.clone(), e.c.clone())).collect())
            }
            FormLiteral::Seifert(k) => BlanchfieldForm::from_seifert(&k.resolve()?.1),
        }
    }
}

pub type ElementLiteral = Vec<LaurentPoly>;

pub fn element(m: &LambdaModule<Rational>, coords: &[LaurentPoly]) -> Result<ModuleElement<Rational>> {
    if coords.len() != m.num_generators() {
        return Err(Error::Literal(format!(
            "element has {} coordinates, module has {} generators",
            coords.len(),
            m.num_generators()
        )));
    }
    m.from_generator_coords(coords)
}

pub fn submodule(m: &LambdaModule<Rational>, gens: &[ElementLiteral]) -> Result<Submodule<Rational>> {
    Ok(Submodule::new(gens.iter().map(|g| element(m, g)).collect::<Result<_>>()?))
}

/// Input of `blanchfield`: a form and optionally a candidate submodule.
#[derive(Clone, Debug, Deserialize)]
pub struct FormQuery {
    pub form: FormLiteral,
    #[serde(default)]
    pub submodule: Option<Vec<ElementLiteral>>,
}

/// Input of `split`: two forms and generators of `P ⊂ M1 ⊕ M2`, each a
/// concatenation of `M1` and `M2` generator coordinates.
#[derive(Clone, Debug, Deserialize)]
pub struct SplitScenario {
    pub m1: FormLiteral,
    pub m2: FormLiteral,
    pub p: Vec<ElementLiteral>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CompanionLiteral {
    Preset(String),
    Symbol { symbol: String },
    Seifert { seifert: Vec<Vec<i64>>, name: Option<String> },
}

impl CompanionLiteral {
    pub fn resolve(&self) -> Result<Companion> {
        match self {
            CompanionLiteral::Preset(name) => {
                Companion::preset(name).ok_or_else(|| Error::Literal(format!("unknown preset {name:?}")))
            }
            CompanionLiteral::Symbol { symbol } => Ok(Companion::symbol(symbol)),
            CompanionLiteral::Seifert { seifert, name } => Ok(Companion::Seifert {
                name: name.clone().unwrap_or_else(|| "V".to_string()),
                matrix: SeifertMatrix::new(seifert.clone())?,
            }),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct TermLiteral {
    pub a: i64,
    pub k: u64,
    pub companion: CompanionLiteral,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CombinationLiteral {
    pub terms: Vec<TermLiteral>,
}

impl CombinationLiteral {
    pub fn build(&self) -> Result<LinearCombination> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    a: t.a,
                    knot: SatelliteKnot::new(t.k, t.companion.resolve()?)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(LinearCombination::new(terms))
    }
}
