use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{token}` at byte {position}")]
    Parse { token: String, position: usize },

    #[error("mismatched group parameter: {left} vs {right}")]
    MismatchedP { left: usize, right: usize },

    #[error("group parameter p must be at least 2, got {0}")]
    InvalidP(usize),

    #[error("Fordham positive method inapplicable: element is not positive")]
    NotPositive,

    #[error("tree has no carets to classify")]
    EmptyTree,

    #[error("word is not in the normal-form language L_{p}: {reason}")]
    NotInLanguage { p: usize, reason: String },

    #[error("letter x{index} is outside the finite alphabet of F({p})")]
    IndexOutOfAlphabet { p: usize, index: u32 },

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("series is not divisible by x^{shift}: coefficient {exponent} is nonzero")]
    NotDivisible { shift: usize, exponent: usize },

    #[error("enumeration too large: estimated {estimate} items exceeds limit {limit}; {hint}")]
    GuardExceeded {
        estimate: String,
        limit: String,
        hint: &'static str,
    },

    #[error("no sign change of {equation} on the initial bracket")]
    NoSignChange { equation: &'static str },

    #[error("tolerance must be a positive rational")]
    InvalidTolerance,
}
