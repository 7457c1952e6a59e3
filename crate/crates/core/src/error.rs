use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("literal {0} is not a valid variable reference")]
    BadLiteral(i64),
    #[error("variable {0} appears twice in one clause")]
    RepeatedVariable(u32),
    #[error("variable {var} exceeds the declared {num_vars} variables")]
    VariableOutOfRange { var: u32, num_vars: usize },
    #[error("assignments over {0} and {1} variables are not comparable")]
    LengthMismatch(usize, usize),
}

/// A structured parse failure. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input is not ASCII text")]
    NotAscii,
    #[error("missing problem header")]
    MissingHeader,
    #[error("line {line}: malformed header: {reason}")]
    BadHeader { line: usize, reason: String },
    #[error("line {line}: duplicate problem header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: `{token}` is not an integer")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: variable {var} out of range 1..={max}")]
    VariableOutOfRange { line: usize, var: i64, max: usize },
    #[error("line {line}: terminator 0 with no preceding literals")]
    EmptyClause { line: usize },
    #[error("line {line}: clause is missing its terminating 0")]
    MissingTerminator { line: usize },
    #[error("line {line}: value {value} outside domain 1..={domain}")]
    ValueOutOfDomain { line: usize, value: i64, domain: usize },
    #[error("line {line}: variable without a forbidden value")]
    MalformedPair { line: usize },
    #[error("line {line}: word has {found} symbols, expected {expected}")]
    WordLength {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("header declares {declared} words but {found} were read")]
    WordCount { declared: usize, found: usize },
    #[error("line {line}: duplicate codeword")]
    DuplicateWord { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("space of {size} words exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("no covering code of {size} words found after {attempts} attempts")]
    ConstructionFailed { size: usize, attempts: u32 },
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(u8, u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("codeword symbol {symbol} exceeds the width {width} of its clause")]
    CodewordOutOfRange { symbol: u8, width: usize },
    #[error(transparent)]
    Csp(#[from] CspError),
}

impl SolveError {
    /// True for resource-cap violations (as opposed to malformed settings).
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            SolveError::TooLarge(_)
                | SolveError::Code(CodeError::CapExceeded { .. })
                | SolveError::Csp(CspError::CapExceeded { .. })
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CspError {
    #[error("value {value} of variable {var} outside domain 1..={domain}")]
    ValueOutOfDomain { var: usize, value: u32, domain: u32 },
    #[error("variable {var} exceeds the declared {num_vars} variables")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("constraint mentions variable {0} twice")]
    RepeatedVariable(usize),
    #[error("constraint has no literals")]
    EmptyConstraint,
    #[error("assignment has {found} values, expected {expected}")]
    LengthMismatch { found: usize, expected: usize },
    #[error("invalid box cover parameters: {0}")]
    InvalidParameters(String),
    #[error("box cover of {size} points exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
}
