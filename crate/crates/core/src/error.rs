use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The coefficient matrix is singular over the rational-function field.
    #[error("singular system")]
    SingularSystem,
    /// Brute-force enumeration would exceed the configured word budget.
    #[error("oracle too large")]
    OracleTooLarge,
    /// The transfer-matrix state space exceeds the configured budget.
    #[error("state space too large")]
    StateSpaceTooLarge,
    /// The transfer-matrix construction needs pattern length at least 2.
    #[error("transfer method requires pattern length >= 2")]
    TransferNeedsLength2,
    /// The denominator's x-constant term is not a single monomial in `t`.
    #[error("cannot normalize specialization")]
    CannotNormalizeSpecialization,
    /// A Laurent coefficient failed the `f_n(1) = m^n` mass check.
    #[error("series corrupt")]
    SeriesCorrupt,
    /// Recurrence iteration hit a zero leading coefficient.
    #[error("singular leading coefficient at n={0}")]
    SingularLeadingCoefficient(i64),
    /// The two fit windows disagree already in the leading digit of `c_0`.
    #[error("fit unstable")]
    FitUnstable,
    /// No recurrence was found within the guessing budget.
    #[error("no recurrence found")]
    NoRecurrenceFound,
    /// A pattern letter lies outside `1..=m`.
    #[error("letter out of range")]
    LetterOutOfRange,
    /// Pattern sets mix different lengths.
    #[error("patterns must share one length")]
    MixedLengths,
    /// A pattern set required to be nonempty is empty.
    #[error("empty pattern set")]
    EmptyPatternSet,
    /// The alphabet must have at least two letters.
    #[error("alphabet size must be at least 2")]
    AlphabetTooSmall,
    /// Not enough sequence terms for the requested operation.
    #[error("not enough terms: need {need}, have {have}")]
    NotEnoughTerms { need: usize, have: usize },
}

impl Error {
    /// True for invalid-input errors (CLI exit code 2), false for
    /// computational failures (exit code 3).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::LetterOutOfRange
                | Error::MixedLengths
                | Error::EmptyPatternSet
                | Error::AlphabetTooSmall
                | Error::OracleTooLarge
                | Error::StateSpaceTooLarge
                | Error::TransferNeedsLength2
                | Error::NotEnoughTerms { .. }
        )
    }
}
