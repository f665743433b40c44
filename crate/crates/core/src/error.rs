use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Requested zeta (or a quantity derived from it) at a point where the
    /// series diverges.
    #[error("zeta pole/divergence: r = {r} but the series requires r > 1")]
    ZetaDomain { r: f64 },

    /// The prime cache is capped by `Precision::max_primes`.
    #[error("prime index {index} exceeds the configured cap of {max} primes")]
    PrimeIndexOutOfRange { index: usize, max: usize },

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    /// Greedy approximation target outside the attainable open interval.
    #[error("target {x} lies outside the attainable interval (0, {limit})")]
    TargetOutOfRange { x: f64, limit: f64 },

    /// A strict criterion shortfall could not be certified: either the
    /// comparison sits inside the tightest error budget this build is willing
    /// to certify, or the shortfall simply does not hold at these arguments.
    #[error(
        "cannot certify a criterion shortfall at m = {m}, r = {r} (error budget {budget:e})"
    )]
    Inconclusive { m: usize, r: f64, budget: f64 },

    /// Bisection could not start: the objective has the same sign at both
    /// ends of the initial bracket.
    #[error("no sign change across ({lo}, {hi}); cannot bracket the root")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
