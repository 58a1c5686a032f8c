use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no unit normalization")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inexact division")]
    InexactDivision,
    #[error("cyclotomic index must be positive")]
    CyclotomicIndex,
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),
    #[error("point is not on the unit circle")]
    NotOnUnitCircle,
    #[error("module not torsion")]
    NotTorsion,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("singular presentation: Alexander polynomial vanishes")]
    SingularPresentation,
    #[error("enumeration unsupported; use is_self_annihilating on candidate ({0})")]
    EnumerationUnsupported(String),
    #[error("coprimality hypothesis of the splitting theorem violated: {0}")]
    SplittingHypothesis(String),
    #[error("coprimality hypothesis violated: {0}")]
    CoprimalityViolated(String),
    #[error("element outside reduced case; apply phi-multiplication first")]
    OutsideReducedBlock,
    #[error("zero element has no reduction")]
    ZeroElement,
    #[error("{0} is not divisible by three distinct primes")]
    NotInT(u64),
    #[error("primary component: {0}")]
    PrimaryComponent(String),
    #[error("invalid literal: {0}")]
    Literal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
