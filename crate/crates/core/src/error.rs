use alloc::string::String;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("unsampleable corpus: no runes to accumulate")]
    UnsampleableCorpus,
    #[error("sampling target must be positive")]
    ZeroTarget,
    #[error("unseen rune {0}")]
    UnseenRune(String),
    #[error("unseen mark {mark} on base {base}")]
    UnseenMark { mark: String, base: String },
    #[error("unseen base {0}")]
    UnseenBase(String),
    #[error("profile {profile}: {codepoint} is both allowlisted and denylisted")]
    ProfileConflict { profile: String, codepoint: String },
    #[error("line count mismatch: gold has {gold} lines, hypothesis has {hyp}")]
    LineCountMismatch { gold: usize, hyp: usize },
    #[error("base letters differ at line {line}, rune {position}")]
    BaseMismatch { line: usize, position: usize },
    #[error("at least 3 observations required, got {0}")]
    TooFewObservations(usize),
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("zero variance")]
    ZeroVariance,
    #[error("unknown column {0}")]
    UnknownColumn(String),
    #[error("corpus has no words")]
    NoWords,
}
