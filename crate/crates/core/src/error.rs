use thiserror::Error;

/// Errors raised by the evidence, simulation and paradox computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvidenceError {
    #[error("probability {0} is outside the closed interval [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error(
        "random-match probability p = {0} must lie strictly inside (0, 1): \
         perfect specificity/sensitivity is not a finite ratio"
    )]
    DegenerateMatchProbability(f64),

    #[error("{name} must be a nonnegative finite number, got {value}")]
    NegativeParameter { name: &'static str, value: f64 },

    #[error("population prior is empty: m*D + N must be positive (N = {n_outside}, m = {m_factor}, D = {d})")]
    EmptyPriorPopulation { n_outside: f64, m_factor: f64, d: u64 },

    #[error("log10 value {0} is not finite")]
    NonFiniteLog(f64),

    #[error("ratio value {0} is negative or NaN")]
    InvalidRatio(f64),

    #[error("0 x infinity is undefined for ratio values")]
    ZeroTimesInfinity,

    #[error("ratio {0} is undefined (0/0 or inf/inf)")]
    IndeterminateQuotient(&'static str),

    #[error("d = {d} exceeds the enumeration cap of {cap}; use Monte Carlo for databases this large")]
    EnumerationCapExceeded { d: u64, cap: u64 },

    #[error("enumeration mass check failed: {hypothesis} sums to {total}")]
    NormalizationFailed { hypothesis: String, total: f64 },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = EvidenceError> = std::result::Result<T, E>;
