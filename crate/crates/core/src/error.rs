use thiserror::Error;

/// Malformed permutation or generator-list input.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty permutation string")]
    Empty,
    #[error("cannot parse {0:?} as cycle notation")]
    Syntax(String),
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears in more than one cycle")]
    RepeatedPoint(usize),
    #[error("image array is not a bijection")]
    NotABijection,
    #[error("unknown group preset {0:?}")]
    UnknownPreset(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("group enumeration exceeded the cap of {cap} elements")]
    EnumerationCapExceeded { cap: usize },
    #[error("generator of degree {found} supplied where degree {expected} was expected")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a subgroup: {0} is not contained in the supergroup")]
    NotASubgroup(String),
    #[error("element {0} is not in the group")]
    ElementNotInGroup(String),
    #[error("domain is not invariant under the group")]
    DomainNotInvariant,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {order} exceeds the cap of {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("division by zero in finite field")]
    DivisionByZero,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("consistency violation between decision paths: {0}")]
    ConsistencyViolation(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),
    #[error("{classes} double-coset classes give 2^{classes} subsets, over the budget of {budget}")]
    TooManyDoubleCosetClasses { classes: usize, budget: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
