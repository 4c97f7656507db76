use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("the local model is defined only for n = 3, 4, 5 (got {0})")]
    UnsupportedDegree(u32),

    #[error("degree pattern {parts:?} does not sum to n = {n}")]
    PatternMismatch { parts: Vec<u32>, n: u32 },

    #[error("invalid class spec {spec:?}: {reason}")]
    ClassSpec { spec: String, reason: String },

    #[error("cycle type of degree {got} used where degree {expected} was required")]
    DegreeMismatch { expected: u32, got: u32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("eps must be positive and finite (got {0})")]
    BadEps(f64),

    #[error(
        "series did not converge before the sieve limit: last prime {last_prime}, \
         survival {survival:e}, tail bound {tail:e}"
    )]
    Diverged {
        last_prime: u64,
        survival: f64,
        tail: f64,
    },

    #[error("first-hit walk ran past the last sieved prime {0}")]
    SieveExhausted(u64),

    #[error("polynomial must be monic of degree >= {min_degree}")]
    NotMonic { min_degree: usize },

    #[error("record {label:?}: {reason}")]
    BadRecord { label: String, reason: String },

    #[error("records mix degrees {first} and {other}")]
    MixedDegrees { first: usize, other: usize },

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("no prime below {limit} satisfies the target for D = {d}")]
    NoSignPrime { d: i64, limit: u64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
