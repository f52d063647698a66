use crate::rational::Rational;

/// Errors shared by the library operations.
///
/// Structural defects of an automaton (bad row sums and the like) are not
/// errors but [`crate::automaton::ValidationReport`] entries; operations
/// assume validated inputs and only report the conditions listed here.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("period must not be empty")]
    EmptyPeriod,
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("mixture weights must be nonnegative and sum to 1")]
    BadWeights,
    #[error("value {0} lies outside [0, 1]")]
    ValueOutOfRange(Rational),
    #[error("threshold {0} lies outside (0, 1)")]
    ThresholdOutOfRange(Rational),
    #[error("automaton is not absorbing")]
    NotAbsorbing,
    #[error("automaton is not acceptance-absorbing")]
    NotAcceptanceAbsorbing,
    #[error("symbol `{0}` collides with the construction alphabet")]
    AlphabetCollision(String),
    #[error("symbol `{0}` listed twice")]
    DuplicateSymbol(String),
    #[error("digit {digit} is not below base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },
    #[error("base must be at least 2")]
    BaseTooSmall,
    #[error("base {0} exceeds the supported maximum of 10")]
    BaseTooLarge(u32),
    #[error("morphism image for `{0}` is empty")]
    EmptyImage(String),
    #[error("damping {0} lies outside (0, 1]")]
    BadDamping(Rational),
    #[error("parameter x must lie in (0, 1), got {0}")]
    XOutOfRange(Rational),
    #[error("parameter x must lie strictly between 1/2 and 1, got {0}")]
    XNotAboveHalf(Rational),
    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(Rational),
    #[error("horizon {horizon} is shorter than the lasso ({needed})")]
    HorizonTooShort { horizon: usize, needed: usize },
    #[error("need at least one trial")]
    NoTrials,
    #[error("operation does not support the {0} condition")]
    UnsupportedCondition(crate::automaton::Condition),
}

pub type Result<T> = std::result::Result<T, Error>;
