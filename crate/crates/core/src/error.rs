use core::fmt;

use alloc::string::String;

/// Errors raised while building fields, algebras, vectors and maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    InvalidModulus(u32),
    InvalidDimension(usize),
    ParityCount { expected: usize, found: usize },
    StructureShape { expected: usize, found: usize },
    CoefficientOutOfRange { value: u32, modulus: u8 },
    IndexOutOfRange { index: usize, dim: usize },
    DimensionMismatch { expected: usize, found: usize },
    FieldMismatch,
    MapShape { expected_rows: usize, found_rows: usize },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::InvalidModulus(p) => {
                write!(f, "modulus {p} is not a prime in 2..=13")
            }
            AlgebraError::InvalidDimension(n) => write!(f, "dimension {n} is outside 1..=6"),
            AlgebraError::ParityCount { expected, found } => {
                write!(f, "expected {expected} parity bits, found {found}")
            }
            AlgebraError::StructureShape { expected, found } => {
                write!(f, "structure table needs {expected} constants, found {found}")
            }
            AlgebraError::CoefficientOutOfRange { value, modulus } => {
                write!(f, "coefficient {value} is not reduced modulo {modulus}")
            }
            AlgebraError::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
            AlgebraError::DimensionMismatch { expected, found } => {
                write!(f, "vector has {found} coordinates, expected {expected}")
            }
            AlgebraError::FieldMismatch => f.write_str("source and target use different fields"),
            AlgebraError::MapShape {
                expected_rows,
                found_rows,
            } => write!(
                f,
                "map needs {expected_rows} image rows of target length, found {found_rows}"
            ),
        }
    }
}

/// Errors raised by degree construction and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeError {
    ZeroDenominator,
    OutOfUnitInterval,
    NotReduced,
    Malformed(String),
    /// `mem.r + non.r > 1`.
    Budget,
}

impl fmt::Display for DegreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeError::ZeroDenominator => f.write_str("zero denominator"),
            DegreeError::OutOfUnitInterval => f.write_str("value outside [0,1]"),
            DegreeError::NotReduced => f.write_str("rational is not in lowest terms"),
            DegreeError::Malformed(s) => write!(f, "malformed rational `{s}`"),
            DegreeError::Budget => f.write_str("membership and non-membership amplitudes sum to more than 1"),
        }
    }
}

/// Errors raised by CIF set construction and set-level operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CifError {
    SpaceMismatch,
    /// An explicit degree at the zero vector other than `(TOP; BOTTOM)`.
    ZeroPinViolated,
    DuplicateEntry,
    NotGraded,
    CarrierTooLarge {
        size: usize,
        cap: usize,
    },
    Algebra(AlgebraError),
    Degree(DegreeError),
}

impl fmt::Display for CifError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CifError::SpaceMismatch => f.write_str("operands live on different spaces"),
            CifError::ZeroPinViolated => {
                f.write_str("the zero vector must carry membership 1/1 1/1 and non-membership 0/1 0/1")
            }
            CifError::DuplicateEntry => f.write_str("vector listed twice"),
            CifError::NotGraded => f.write_str("input is not a Z2-graded CIF subspace"),
            CifError::CarrierTooLarge { size, cap } => {
                write!(f, "carrier has {size} vectors, oracle cap is {cap}")
            }
            CifError::Algebra(e) => e.fmt(f),
            CifError::Degree(e) => e.fmt(f),
        }
    }
}

impl From<AlgebraError> for CifError {
    fn from(e: AlgebraError) -> Self {
        CifError::Algebra(e)
    }
}

impl From<DegreeError> for CifError {
    fn from(e: DegreeError) -> Self {
        CifError::Degree(e)
    }
}

/// Errors raised by the generators and the theorem catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteError {
    UnknownTheorem(String),
    InvalidPool(&'static str),
    InvalidChainLength(usize),
    /// No anti-homomorphism found within the trial budget.
    Exhausted,
    Cif(CifError),
}

impl fmt::Display for SuiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteError::UnknownTheorem(id) => write!(f, "unknown theorem id `{id}`"),
            SuiteError::InvalidPool(why) => write!(f, "invalid degree pool: {why}"),
            SuiteError::InvalidChainLength(k) => write!(f, "chain length {k} outside 2..=4"),
            SuiteError::Exhausted => f.write_str("no anti-homomorphism found within the trial budget"),
            SuiteError::Cif(e) => e.fmt(f),
        }
    }
}

impl From<CifError> for SuiteError {
    fn from(e: CifError) -> Self {
        SuiteError::Cif(e)
    }
}

impl core::error::Error for AlgebraError {}
impl core::error::Error for DegreeError {}
impl core::error::Error for CifError {}
impl core::error::Error for SuiteError {}
