//! Pre-Schwarzian and Schwarzian derivatives of planar harmonic mappings.
//!
//! Maps are written `f = h + conj(g)` with `h`, `g` analytic in the unit
//! disk. Derivatives come from complex Taylor jets ([`jet::Jet`]) evaluated
//! on expression trees ([`expr::Expr`]), so every operator is exact up to
//! rounding. Finite-difference and deviation-expansion oracles live next to
//! the closed forms for cross-checking.

pub mod analytic;
pub mod bivariate;
pub mod expr;
pub mod harmonic;
pub mod jet;
pub mod mobius;
pub mod norms;
pub mod operators;
pub mod verify;

pub use analytic::AnalyticFunction;
pub use harmonic::{HarmonicMap, Sense};
pub use jet::Jet;
pub use mobius::{HarmonicMobius, MobiusMap};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
    #[error("{0}")]
    Eval(#[from] expr::EvalError),
    #[error(transparent)]
    Jet(#[from] jet::JetError),
    #[error("domain error at z = {at}: {reason}")]
    Domain { at: Complex64, reason: String },
    #[error("critical point at z = {at}: derivative vanishes")]
    CriticalPoint { at: Complex64 },
    #[error("shear singularity at z = {at}: 1 - e^(2iθ)ω vanishes")]
    ShearSingularity { at: Complex64 },
    #[error("dilatation vanishes at z = {at}; supply q with q^2 = ω")]
    DilatationZeroNeedsQ { at: Complex64 },
    #[error("supplied q does not satisfy q^2 = ω at z = {at}")]
    QMismatch { at: Complex64 },
    #[error("finite-difference stencil around z = {at} leaves the disk")]
    StencilOutsideDomain { at: Complex64 },
    #[error("degenerate jet at z = {at}: h' vanishes")]
    DegenerateJet { at: Complex64 },
    #[error("quadrature failed to reach tolerance along [0, {at}]")]
    QuadratureFailure { at: Complex64 },
    #[error("ill-conditioned radial fit (condition number {cond:e})")]
    IllConditioned { cond: f64 },
    #[error("non-finite value at z = {at}")]
    NonFinite { at: Complex64 },
    #[error("unknown catalog name `{0}`")]
    UnknownCatalogName(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed map description: {0}")]
    Format(String),
}

/// Coarse failure classes, one per CLI exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Parse,
    Domain,
    Numerical,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Usage => 1,
            ErrorClass::Parse => 2,
            ErrorClass::Domain => 3,
            ErrorClass::Numerical => 4,
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use jet::JetError as J;
        match self {
            Error::Parse(_) => ErrorClass::Parse,
            Error::Eval(e) => match e.kind {
                J::NonFinite => ErrorClass::Numerical,
                _ => ErrorClass::Domain,
            },
            Error::Jet(J::NonFinite) => ErrorClass::Numerical,
            Error::Jet(_) => ErrorClass::Domain,
            Error::Domain { .. }
            | Error::CriticalPoint { .. }
            | Error::ShearSingularity { .. }
            | Error::DilatationZeroNeedsQ { .. }
            | Error::QMismatch { .. }
            | Error::StencilOutsideDomain { .. }
            | Error::DegenerateJet { .. } => ErrorClass::Domain,
            Error::QuadratureFailure { .. }
            | Error::IllConditioned { .. }
            | Error::NonFinite { .. } => ErrorClass::Numerical,
            Error::UnknownCatalogName(_)
            | Error::ParameterOutOfRange(_)
            | Error::InvalidConfig(_) => ErrorClass::Usage,
            Error::Format(_) => ErrorClass::Parse,
        }
    }

    /// The point the failure refers to, when there is one.
    pub fn at(&self) -> Option<Complex64> {
        match self {
            Error::Eval(e) => Some(e.at),
            Error::Domain { at, .. }
            | Error::CriticalPoint { at }
            | Error::ShearSingularity { at }
            | Error::DilatationZeroNeedsQ { at }
            | Error::QMismatch { at }
            | Error::StencilOutsideDomain { at }
            | Error::DegenerateJet { at }
            | Error::QuadratureFailure { at }
            | Error::NonFinite { at } => Some(*at),
            _ => None,
        }
    }

    pub(crate) fn domain(at: Complex64, reason: impl Into<String>) -> Error {
        Error::Domain {
            at,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
