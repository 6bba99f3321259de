use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped roughly by the module that raises them; callers that
/// only care about a verdict can match on the few they expect.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("({a},{b}) is not a coprime pair")]
    NotCoprime { a: u32, b: u32 },
    #[error("degenerate pair ({a},{b}): need a >= 1 and b >= 2")]
    Degenerate { a: u32, b: u32 },
    #[error("run vector has length {found}, expected {expected}")]
    BadLength { expected: usize, found: usize },
    #[error("run vector sums to {found}, expected {expected}")]
    BadSum { expected: u64, found: u64 },
    #[error("path dips below the diagonal after east step {0}")]
    BelowDiagonal(u32),
    #[error("label {0} is not at the bottom of a north step")]
    NoNorthStep(u32),
    #[error("resource limit: {needed} objects requested, cap is {cap}")]
    ResourceLimit { needed: u128, cap: u128 },
    #[error("partition is not noncrossing")]
    NotNoncrossing,
    #[error("invalid set partition: {0}")]
    BadPartition(String),
    #[error("ranks sum to {found}, expected {expected}")]
    HeightMismatch { expected: u64, found: u64 },
    #[error("pair is not a member of NC({a},{b})")]
    NotMember { a: u32, b: u32 },
    #[error("no block of the pair contains {0}")]
    UnresolvedBlock(u32),
    #[error("merging these blocks creates a crossing")]
    WouldCross,
    #[error("the P-block does not cover the Q-block")]
    NotCover,
    #[error("pair is not invariant under rotation by {0}")]
    NotDInvariant(u32),
    #[error("{d} is not an admissible divisor of {modulus}")]
    BadDivisor { d: u32, modulus: u32 },
    #[error("bad rank profile: {0}")]
    BadProfile(String),
    #[error("sequence pair is not very good")]
    NotVeryGood,
    #[error("polynomial division left a nonzero remainder")]
    NonDivisible,
    #[error("root-of-unity evaluation is not a rational integer")]
    NotInteger,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("pair ({a},{b}) is not of the form (n+1,n)")]
    WrongShape { a: u32, b: u32 },
    #[error("not a rational slope parking function: {0}")]
    NotParkingFunction(String),
    #[error("invalid configuration: {0}")]
    BadConfiguration(String),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
