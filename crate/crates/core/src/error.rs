use thiserror::Error;

/// Errors raised by the library. Every variant names the violated contract.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coin parameter p = {0} must lie strictly inside (0, 1)")]
    InvalidCoin(f64),
    #[error("count must be at least one")]
    ZeroCount,
    #[error("gain path has {have} entries but level {level} needs {need}")]
    PathTooShort { have: usize, need: usize, level: u32 },
    #[error("level m must be at least 1")]
    ZeroLevel,
    #[error("gains must be positive and finite, got {0}")]
    InvalidGain(f64),
    #[error("sampled path points must have strictly increasing t inside [{lo}, {hi}]")]
    UnorderedPath { lo: f64, hi: f64 },
    #[error("value {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },
    #[error("exact integer arithmetic overflowed at n = {0}")]
    Overflow(u64),
    #[error("{0} is not a dyadic rational in (1/2, 1]")]
    NotDyadic(f64),
    #[error("dyadic exponent {0} exceeds the supported 64 bits")]
    DyadicPrecision(u32),
    #[error("word must be a non-empty string of 0/1 digits")]
    InvalidWord,
    #[error("depth {depth} exceeds the cap {cap}")]
    DepthCap { depth: u32, cap: u32 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series threshold search does not bracket: {0}")]
    NonBracketing(String),
    #[error("point set is empty")]
    EmptySet,
    #[error("degenerate fit: all box counts are equal")]
    DegenerateFit,
    #[error("path sampling is not uniform in t")]
    NonUniformSpacing,
}

pub type Result<T> = std::result::Result<T, Error>;
