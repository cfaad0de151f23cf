use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("a pair needs at least one degree")]
    NoDegrees,
    #[error("a pair needs at least one weight")]
    NoWeights,
    #[error("degrees and weights must be positive")]
    NonPositiveEntry,
    #[error("well-formedness needs at least two weights, got {0}")]
    TooFewWeights(usize),
    #[error("weighted projective space is not well formed")]
    NotWellFormed,
    #[error("degenerate pair: no degrees left")]
    Degenerate,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse {0:?} as a nonnegative integer")]
    Parse(String),
    #[error("invalid pair JSON: {0}")]
    InvalidJson(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RepresentError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("residue table of size {needed} exceeds the budget of {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: String, b: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The constructive recursion ran out of cases. Its correctness argument
    /// says this cannot happen, so the trace is kept for diagnosis.
    #[error("proof path exhausted: {reason}\ntrace:\n{}", trace.join("\n"))]
    ProofPathExhausted { reason: String, trace: Vec<String> },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HodgeError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("series truncation degree {needed} exceeds the budget of {budget}")]
    Budget { needed: String, budget: usize },
    #[error("coefficient {value} at degree {degree} is negative; the degrees cannot form a regular sequence")]
    NegativeCoefficient { degree: String, value: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PrimeError {
    #[error("sieve limit {limit} exceeds the budget of {budget}")]
    Budget { limit: u64, budget: u64 },
    #[error("node budget of {0} exhausted before the search finished")]
    BudgetExceeded(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Represent(#[from] RepresentError),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
