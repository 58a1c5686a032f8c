//! ρ-values: a rational number known up to a rigorous enclosure, plus a
//! formal integer combination of companion symbols assumed linearly
//! independent over `Z` (and independent of the numeric part).

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::scalar::format_rational;
use crate::seifert::{Enclosure, RhoIntegral};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoValue {
    numeric: Enclosure,
    symbols: BTreeMap<String, i64>,
}

impl Default for RhoValue {
    fn default() -> Self {
        Self::zero()
    }
}

impl RhoValue {
    pub fn zero() -> Self {
        Self::exact(Rational::zero())
    }

    pub fn exact(x: Rational) -> Self {
        Self {
            numeric: Enclosure::point(x),
            symbols: BTreeMap::new(),
        }
    }

    pub fn enclosed(numeric: Enclosure) -> Self {
        Self {
            numeric,
            symbols: BTreeMap::new(),
        }
    }

    pub fn symbol(name: &str) -> Self {
        let mut symbols = BTreeMap::new();
        symbols.insert(name.to_string(), 1);
        Self {
            numeric: Enclosure::point(Rational::zero()),
            symbols,
        }
    }

    pub fn from_integral(r: &RhoIntegral) -> Self {
        match &r.exact {
            Some(x) => Self::exact(x.clone()),
            None => Self::enclosed(r.enclosure.clone()),
        }
    }

    /// The exact rational part, when it is known exactly.
    pub fn exact_part(&self) -> Option<&Rational> {
        (self.numeric.lo == self.numeric.hi).then_some(&self.numeric.lo)
    }

    pub fn enclosure(&self) -> &Enclosure {
        &self.numeric
    }

    pub fn symbols(&self) -> &BTreeMap<String, i64> {
        &self.symbols
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut symbols = self.symbols.clone();
        for (k, v) in &other.symbols {
            *symbols.entry(k.clone()).or_insert(0) += v;
        }
        symbols.retain(|_, v| *v != 0);
        Self {
            numeric: self.numeric.add(&other.numeric),
            symbols,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            numeric: self.numeric.scale_int(k),
            symbols: self.symbols.iter().map(|(s, v)| (s.clone(), v * k)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Exactly zero: zero numeric part and no symbols.
    pub fn is_zero(&self) -> bool {
        self.symbols.is_empty() && self.exact_part().is_some_and(Zero::is_zero)
    }

    /// Provably nonzero: a surviving symbol, or a numeric enclosure that
    /// excludes 0.
    pub fn is_certified_nonzero(&self) -> bool {
        !self.symbols.is_empty() || self.numeric.excludes_zero()
    }
}

impl std::fmt::Display for RhoValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.exact_part() {
            Some(x) if x.is_zero() => {}
            Some(x) => parts.push(format_rational(x)),
            None => parts.push(format!(
                "[{}, {}]",
                format_rational(&self.numeric.lo),
                format_rational(&self.numeric.hi)
            )),
        }
        for (s, v) in &self.symbols {
            parts.push(match v {
                1 => format!("ρ({s})"),
                -1 => format!("-ρ({s})"),
                _ => format!("{v}·ρ({s})"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for RhoValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RhoValue", 4)?;
        st.serialize_field("exact", &self.exact_part().map(format_rational))?;
        st.serialize_field(
            "enclosure",
            &[format_rational(&self.numeric.lo), format_rational(&self.numeric.hi)],
        )?;
        st.serialize_field("symbols", &self.symbols)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}
