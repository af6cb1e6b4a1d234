use thiserror::Error;

/// Errors produced while validating curve parameters or evaluating the
/// semigroup machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter `{0}` must be a positive integer")]
    NonPositive(&'static str),
    #[error("p = {0} is not prime")]
    NonPrimeP(i64),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(i64),
    #[error("b = {b} does not divide a = {a}")]
    BNotDividingA { a: i64, b: i64 },
    #[error("s = {s} does not divide (q^n+1)/(q+1) = {quotient}")]
    SNotDividing { s: i64, quotient: i64 },
    #[error("n = {0} is even; n must be odd")]
    NEven(i64),
    #[error("n = {0} is too small; n must be at least 3")]
    NTooSmall(i64),
    #[error("genus formula evaluates to {0}; positive genus is required")]
    GenusNotPositive(i64),
    #[error("genus numerator {numerator} is not divisible by {denominator}")]
    NonIntegralGenus { numerator: i64, denominator: i64 },
    #[error("integer overflow")]
    Overflow,
    #[error("m = {m} is outside [1, {max_m}]")]
    BadM { m: usize, max_m: usize },
    #[error("({i}, {j}) is not a valid index pair")]
    BadIndexPair { i: i64, j: i64 },
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(i64),
    #[error("empty input")]
    EmptyInput,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("box lower bound exceeds upper bound")]
    BadBox,
    #[error("list is not sorted by strictly increasing second coordinate")]
    NotSorted,
    #[error("coordinate {0} is repeated among two-point relative maximal elements")]
    CoordinateCollision(usize),
    #[error("index {index} is outside a list of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("coordinate index {r} is outside [0, {m}]")]
    BadCoordinate { r: usize, m: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
