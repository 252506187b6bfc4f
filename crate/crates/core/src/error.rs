use thiserror::Error;

/// Errors raised by the number families and their supporting machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("coefficient index {index} exceeds truncation order {order}")]
    IndexBeyondOrder { index: usize, order: usize },

    #[error("multinomial parts sum to {sum}, expected {n}")]
    MultinomialSum { n: usize, sum: usize },

    #[error("parameter triple (alpha, beta, gamma) must not be (0, 0, 0)")]
    ZeroParameters,

    #[error("beta = 0 is not allowed for {0}")]
    ZeroBeta(&'static str),

    #[error("block size bound ell = 0 leaves no admissible block")]
    ZeroEll,

    #[error("enumeration size n = {n} exceeds the cap {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("vanishing Pochhammer factor at j = {j}")]
    VanishingPochhammer { j: usize },

    #[error("leading coefficient a_0 must equal 1")]
    LeadingCoefficient,

    #[error("coefficient sequence has {len} entries, index {index} required")]
    SequenceTooShort { len: usize, index: usize },

    #[error("method `{method}` is not available for family `{family}`")]
    UnsupportedMethod {
        family: &'static str,
        method: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
