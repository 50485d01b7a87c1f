use alloc::string::String;
use core::fmt;

/// Coarse grouping used by front-ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Math,
    Resource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    SingularMatrix,
    ZeroPolynomial,
    Parse(String),
    DeterminantVanishes,
    NotReduced,
    DegreeMismatch { expected: u32, found: Option<u32> },
    NotLieClosed,
    MissingEuler,
    NotSemiInvariant { index: usize },
    IdentityFails(String),
    NotHomogeneous,
    NotFinite,
    InvalidConnection,
    NoRationalRoot { equation: usize, polynomial: String },
    InconsistentSystem(String),
    StepBudgetExceeded { algorithm: u8 },
    ExhaustedAttempts { attempts: u32 },
    UnsupportedParameter(String),
    ResourceCap { monomials: u128, cap: u128 },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::Parse(_) => "ParseError",
            Error::DeterminantVanishes => "DeterminantVanishes",
            Error::NotReduced => "NotReduced",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::NotLieClosed => "NotLieClosed",
            Error::MissingEuler => "MissingEuler",
            Error::NotSemiInvariant { .. } => "NotSemiInvariant",
            Error::IdentityFails(_) => "IdentityFails",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NotFinite => "NotFinite",
            Error::InvalidConnection => "InvalidConnection",
            Error::NoRationalRoot { .. } => "NoRationalRoot",
            Error::InconsistentSystem(_) => "InconsistentSystem",
            Error::StepBudgetExceeded { .. } => "StepBudgetExceeded",
            Error::ExhaustedAttempts { .. } => "ExhaustedAttempts",
            Error::UnsupportedParameter(_) => "UnsupportedParameter",
            Error::ResourceCap { .. } => "ResourceCap",
        }
    }

    /// Module in which the error originates.
    pub fn module(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. }
            | Error::SingularMatrix
            | Error::ZeroPolynomial
            | Error::Parse(_) => "exactalg",
            Error::DeterminantVanishes
            | Error::NotReduced
            | Error::DegreeMismatch { .. }
            | Error::NotLieClosed
            | Error::MissingEuler
            | Error::NotSemiInvariant { .. }
            | Error::IdentityFails(_) => "divisor",
            Error::NotHomogeneous | Error::NotFinite => "sections",
            Error::InvalidConnection | Error::ResourceCap { .. } => "gaussmanin",
            Error::NoRationalRoot { .. } | Error::InconsistentSystem(_) => "birkhoff",
            Error::StepBudgetExceeded { .. } => "spectrum",
            Error::ExhaustedAttempts { .. } | Error::UnsupportedParameter(_) => "catalog",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::DimensionMismatch { .. }
            | Error::Parse(_)
            | Error::UnsupportedParameter(_)
            | Error::NotLieClosed
            | Error::MissingEuler
            | Error::NotSemiInvariant { .. } => ErrorClass::Input,
            Error::ResourceCap { .. } => ErrorClass::Resource,
            _ => ErrorClass::Math,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::ZeroPolynomial => write!(f, "polynomial is zero"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::DeterminantVanishes => write!(f, "Saito determinant vanishes"),
            Error::NotReduced => write!(f, "Saito determinant is not squarefree"),
            Error::DegreeMismatch { expected, found } => match found {
                Some(d) => write!(f, "expected a form of degree {expected}, found degree {d}"),
                None => write!(
                    f,
                    "expected a form of degree {expected}, found a non-homogeneous polynomial"
                ),
            },
            Error::NotLieClosed => write!(f, "span of the basis is not closed under commutators"),
            Error::MissingEuler => write!(f, "identity matrix is not in the span of the basis"),
            Error::NotSemiInvariant { index } => {
                write!(f, "basis field {index} does not map h to a multiple of h")
            }
            Error::IdentityFails(msg) => write!(f, "identity check failed: {msg}"),
            Error::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            Error::NotFinite => write!(f, "section is not R_h-finite"),
            Error::InvalidConnection => write!(f, "connection coefficient c0 vanishes"),
            Error::NoRationalRoot {
                equation,
                polynomial,
            } => {
                write!(
                    f,
                    "consistency equation Q^{equation} has no rational root: {polynomial}"
                )
            }
            Error::InconsistentSystem(msg) => write!(f, "inconsistent Birkhoff system: {msg}"),
            Error::StepBudgetExceeded { algorithm } => {
                write!(f, "algorithm {algorithm} exceeded its step budget")
            }
            Error::ExhaustedAttempts { attempts } => {
                write!(f, "no finite section found after {attempts} attempts")
            }
            Error::UnsupportedParameter(msg) => write!(f, "unsupported parameter: {msg}"),
            Error::ResourceCap { monomials, cap } => {
                write!(f, "graded piece has {monomials} monomials, cap is {cap}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
