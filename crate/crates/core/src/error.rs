use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed radicands: sqrt({0}) and sqrt({1}) do not share a field")]
    MixedRadicands(String, String),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("radicand {radicand} cannot be reduced with trial division up to {bound}")]
    RadicandTooLarge { radicand: String, bound: u64 },
    #[error("pole: the denominator e·x + f vanishes")]
    Pole,
    #[error("singular matrix (determinant zero)")]
    SingularMatrix,
    #[error("rational input has no infinite expansion (its spectrum is empty)")]
    RationalInput,
    #[error("expected a quadratic irrational")]
    NotQuadratic,
    #[error("continued fraction needs at least one digit")]
    EmptyDigits,
    #[error("partial quotient a_{index} = {value} must be at least 1")]
    InvalidDigit { index: usize, value: String },
    #[error("digit stream exhausted: needed {needed} digits, only {available} available")]
    StreamExhausted { needed: usize, available: usize },
    #[error("index {index} out of range ({reason})")]
    IndexOutOfRange { index: usize, reason: &'static str },
    #[error("secondary convergent needs 1 <= a <= {max}, got a = {a}")]
    SecondaryOutOfRange { a: String, max: String },
    #[error("enumeration of {requested} intervals exceeds the budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
