use thiserror::Error;

/// Errors raised by the algebraic core.
///
/// Every variant maps to a stable, module-qualified code via [`Error::code`]
/// so front ends can report failures in a machine-readable way.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the unit monomial has no class")]
    UnitMonomial,
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("an ideal needs at least one generator")]
    EmptyInput,
    #[error("the unit monomial cannot be a generator of a proper ideal")]
    UnitGenerator,
    #[error("ideal is not quasi-stable: {0}")]
    NotQuasiStable(String),
    #[error("ideal is not stable")]
    NotStable,
    #[error("x{var} is multiplicative for basis element {element}")]
    NotNonMultiplicative { element: usize, var: usize },
    #[error("monomial does not lie in the ideal")]
    NotMember,
    #[error("edges {0} and {1} do not form a directed path")]
    NotAPath(usize, usize),
    #[error("edge variables along a path must strictly increase")]
    VariablesNotIncreasing,
    #[error("homological degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("tau contains a multiplicative variable of the base element")]
    TauNotNonMultiplicative,
    #[error("cell complex and free complex come from different bases")]
    MismatchedBases,
    #[error("complex does not carry Pommaret-Seiler provenance")]
    NotPsComplex,
    #[error("matching is not a Morse matching: {0}")]
    NotAMorseMatching(String),
    #[error("pair ({source_gen} -> {target_gen}) in degree {degree} has non-unit coefficient {coeff}")]
    NonUnitPair {
        degree: usize,
        source_gen: usize,
        target_gen: usize,
        coeff: String,
    },
    #[error("complex is not minimal: scalar entry at degree {degree}, column {col}, row {row}")]
    NotMinimal { degree: usize, row: usize, col: usize },
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnitMonomial => "monomial_core::UnitMonomial",
            Error::ArityMismatch { .. } => "monomial_core::ArityMismatch",
            Error::VariableOutOfRange { .. } => "monomial_core::VariableOutOfRange",
            Error::EmptyInput => "ideal_basis::EmptyInput",
            Error::UnitGenerator => "ideal_basis::UnitGenerator",
            Error::NotQuasiStable(_) => "ideal_basis::NotQuasiStable",
            Error::NotStable => "resolution::NotStable",
            Error::NotNonMultiplicative { .. } => "ideal_basis::NotNonMultiplicative",
            Error::NotMember => "resolution::NotMember",
            Error::NotAPath(..) => "ideal_basis::NotAPath",
            Error::VariablesNotIncreasing => "ideal_basis::VariablesNotIncreasing",
            Error::DegreeOutOfRange { .. } => "resolution::DegreeOutOfRange",
            Error::TauNotNonMultiplicative => "cellular::TauNotNonMultiplicative",
            Error::MismatchedBases => "cellular::MismatchedBases",
            Error::NotPsComplex => "morse::NotPSComplex",
            Error::NotAMorseMatching(_) => "morse::NotAMorseMatching",
            Error::NonUnitPair { .. } => "morse::NonUnitPair",
            Error::NotMinimal { .. } => "verify::NotMinimal",
            Error::NotAComplex(_) => "verify::NotAComplex",
        }
    }

    /// True for failures of a mathematical precondition on the input ideal.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotQuasiStable(_) | Error::NotStable | Error::UnitGenerator | Error::EmptyInput
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
