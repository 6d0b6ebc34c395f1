use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{0}` must be strictly positive")]
    NonPositive(&'static str),

    #[error("parameter `{0}` must lie in [0, 1]")]
    ProbabilityOutOfRange(&'static str),

    #[error("parameter `{0}` must be a positive integer")]
    NonIntegerShape(&'static str),

    #[error("parameter `{field}` = {value} exceeds the supported maximum of {max}")]
    AboveCap {
        field: &'static str,
        value: u64,
        max: u64,
    },

    #[error("path-loss exponent must be at least 2 (got {0})")]
    PathLossExponent(f64),

    #[error("unknown parameter `{0}`")]
    UnknownKey(String),

    #[error("invalid value `{value}` for `{key}`")]
    InvalidValue { key: String, value: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("distance {x} lies outside the support (0, {radius})")]
    OutOfSupport { x: f64, radius: f64 },

    #[error("{count} compositions of {kappa} into {parts} parts exceeds the limit of {limit}")]
    CombinatorialBlowup {
        parts: u32,
        kappa: u32,
        count: u128,
        limit: u128,
    },

    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    #[error("coverage target not reached for any antenna count up to {cap}")]
    NotAchievable { cap: u32 },

    #[error("link has no line-of-sight transmitter in range")]
    EmptyProcess,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by user-supplied parameters or arguments.
    pub fn is_config(&self) -> bool {
        !matches!(
            self,
            Error::NumericalInstability(_)
                | Error::CombinatorialBlowup { .. }
                | Error::NotAchievable { .. }
                | Error::EmptyProcess
        )
    }

    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NumericalInstability(_) | Error::CombinatorialBlowup { .. }
        )
    }
}
