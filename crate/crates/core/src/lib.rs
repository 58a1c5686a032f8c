//! Exact arithmetic for Blanchfield forms, coprime splittings of
//! self-annihilating submodules, Levine–Tristram ρ integrals and the
//! independence certificate for cyclotomic satellite families.
//!
//! Everything is generic over an exact [`scalar::Field`]; the aliases below
//! fix the rational instantiation used by the CLI.

pub mod blanchfield;
pub mod error;
pub mod gamma_group;
pub mod lambda_module;
pub mod lambda_ring;
pub mod literal;
pub mod matrix;
pub mod obstruction;
pub mod rho;
pub mod scalar;
pub mod seifert;
pub mod snf;
pub mod splitting;

pub use error::{Error, Result};

use num_complex::Complex;
use num_rational::BigRational;

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;
pub type LaurentPoly = lambda_ring::Laurent<Rational>;
pub type RationalFn = lambda_ring::RationalFunction<Rational>;
pub type Coset = lambda_ring::QtModLambda<Rational>;
pub type PolyMatrix = matrix::Matrix<LaurentPoly>;
