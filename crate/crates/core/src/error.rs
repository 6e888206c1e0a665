use thiserror::Error;

use crate::space::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {symbol} is not in the alphabet of level {level} (size {size})")]
    SymbolOutOfRange { level: i64, symbol: Symbol, size: usize },

    #[error("label {label:?} is not in the alphabet of level {level}")]
    UnknownLabel { label: String, level: i64 },

    #[error("period word must be non-empty")]
    EmptyPeriod,

    #[error("levels are 1-indexed; level {0} does not exist")]
    InvalidLevel(i64),

    #[error("expected depth {expected}, found {found}")]
    DepthMismatch { expected: usize, found: usize },

    #[error("depth {requested} exceeds the defined depth {defined}")]
    DepthExceeded { requested: usize, defined: usize },

    #[error("enumeration of {required} words exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("operation requires a homogeneous level system")]
    NotHomogeneous,

    #[error("level systems are incompatible up to depth {0}")]
    IncompatibleSystems(usize),

    #[error("alphabet has {found} symbols, operation requires {expected}")]
    AlphabetSize { expected: String, found: usize },

    #[error("rational {0} is outside [0, 1]")]
    OutOfUnitInterval(String),

    #[error("cannot parse rational {0:?}")]
    InvalidRational(String),

    #[error("mass of word {word:?} is negative ({mass})")]
    NegativeMass { word: Vec<Symbol>, mass: String },

    #[error("mass of word {0:?} is zero but strict positivity was requested")]
    NotStrictlyPositive(Vec<Symbol>),

    #[error("total mass is {0}, expected 1")]
    NotNormalized(String),

    #[error("mass is missing for word {0:?}")]
    MissingMass(Vec<Symbol>),

    #[error("measure is inconsistent at {0} word(s)")]
    Inconsistent(usize),

    #[error("alphabet has no basepoint")]
    MissingBasepoint,

    #[error("operation table has no identity element")]
    MissingIdentity,

    #[error("operation table has no inverses")]
    MissingInverse,

    #[error("operation table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(Symbol, Symbol, Symbol),

    #[error("invalid operation table: {0}")]
    InvalidTable(String),

    #[error("invalid modulus of continuity: {0}")]
    InvalidModulus(String),

    #[error("functional violates its contract: {0}")]
    FunctionalViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
