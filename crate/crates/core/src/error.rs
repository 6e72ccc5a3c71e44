//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building schemes, windows or reports.
///
/// Errors come in two classes: invalid input (bad field parameters, lattices
/// without the required independence, malformed exact strings) and missing
/// capability (operations that are only defined for some window shapes).
/// [`Error::is_capability`] separates the two so callers can map them to
/// distinct exit codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Arithmetic mixed two different quadratic fields.
    FieldMismatch { left: u64, right: u64 },
    /// Field parameter is not a square-free integer >= 2.
    InvalidField(u64),
    /// Module membership was asked with a rational generator.
    DegenerateModule,
    /// Exact division by zero.
    DivisionByZero,
    /// A rational or quadratic literal could not be parsed.
    Parse(String),
    /// Lattice basis with determinant zero.
    ZeroDeterminant,
    /// Physical projections of the basis rows are rationally dependent, so
    /// the projection to the physical line is not one-to-one on the lattice.
    DependentPhysical,
    /// Internal projections of the basis rows are rationally dependent, so
    /// the internal projection of the lattice is not dense.
    DependentInternal,
    /// A residue modulus below 2.
    InvalidModulus(u64),
    /// Residue moduli must be listed in strictly increasing order.
    ModuliNotIncreasing,
    /// Two residue moduli share a common factor.
    ModuliNotCoprime(u64, u64),
    /// The product of the residue moduli overflows 64 bits.
    PeriodOverflow,
    /// A residue outside its modulus range.
    InvalidResidue { residue: u64, modulus: u64 },
    /// An interval with its lower endpoint above the upper one.
    InvalidInterval,
    /// Window, point or region does not live in the scheme's spaces.
    SpaceMismatch(&'static str),
    /// A numeric parameter outside its documented range.
    InvalidParameter(&'static str),
    /// A pattern or shift list with no elements.
    EmptyPattern,
    /// The requested region produces an index range beyond what the
    /// enumerator supports.
    RegionTooLarge,
    /// The operation is not defined for this window shape.
    Unsupported(&'static str),
}

impl Error {
    /// True for "the library cannot decide this" as opposed to "the input
    /// is invalid".
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Unsupported(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch { left, right } => {
                write!(f, "field mismatch: sqrt({left}) vs sqrt({right})")
            }
            Error::InvalidField(d) => {
                write!(f, "field parameter {d} must be a square-free integer >= 2")
            }
            Error::DegenerateModule => {
                write!(f, "module membership needs an irrational generator")
            }
            Error::DivisionByZero => write!(f, "exact division by zero"),
            Error::Parse(s) => write!(f, "cannot parse exact literal: {s}"),
            Error::ZeroDeterminant => write!(f, "lattice basis has determinant zero"),
            Error::DependentPhysical => {
                write!(f, "physical projections of the basis are rationally dependent")
            }
            Error::DependentInternal => {
                write!(f, "internal projections of the basis are rationally dependent")
            }
            Error::InvalidModulus(b) => write!(f, "modulus {b} must be at least 2"),
            Error::ModuliNotIncreasing => {
                write!(f, "moduli must be strictly increasing")
            }
            Error::ModuliNotCoprime(a, b) => {
                write!(f, "moduli {a} and {b} are not coprime")
            }
            Error::PeriodOverflow => write!(f, "product of moduli overflows 64 bits"),
            Error::InvalidResidue { residue, modulus } => {
                write!(f, "residue {residue} is outside 0..{modulus}")
            }
            Error::InvalidInterval => write!(f, "interval endpoints are out of order"),
            Error::SpaceMismatch(what) => write!(f, "space mismatch: {what}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::EmptyPattern => write!(f, "pattern must contain at least one element"),
            Error::RegionTooLarge => write!(f, "region is too large to enumerate"),
            Error::Unsupported(what) => write!(f, "not supported: {what}"),
        }
    }
}

impl std::error::Error for Error {}
