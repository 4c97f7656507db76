//! Average values of the least prime in (or outside) a Frobenius class of
//! S_n-fields, n = 3, 4, 5.
//!
//! The crate evaluates the first-hit prime series predicted by the local
//! probability model and cross-checks it three ways:
//!
//! - [`montecarlo`] samples the local model directly,
//! - [`quadratic`] brute-forces the quadratic-field constants over
//!   fundamental discriminants,
//! - [`frobscan`] reads Frobenius classes of concrete fields off the
//!   factorization pattern of a defining polynomial mod p.
//!
//! Exact quantities (class densities, local densities, hit probabilities)
//! are kept as rationals; conversion to floating point happens only when a
//! series term is accumulated. Numeric code is generic over [`Scalar`]
//! (local densities) and [`num_traits::Float`] (series sums), with the
//! usual instantiations aliased below.

pub mod error;
pub mod frobscan;
pub mod localmodel;
pub mod montecarlo;
pub mod polymod;
pub mod primes;
pub mod quadratic;
pub mod reference;
pub mod scalar;
pub mod series;
pub mod symgroup;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use series::{HitModel, SeriesResult, Statistic};
pub use symgroup::{ClassDensity, CycleType};

/// Exact rational scalar used for every probability in the model.
pub type Exact = num_rational::BigRational;

/// Fixed-width exact scalar; adequate for primes up to about 10^8.
pub type SmallExact = num_rational::Ratio<i128>;

/// Series result at double precision, the default everywhere.
pub type Series64 = SeriesResult<f64>;

/// Series result at single precision.
pub type Series32 = SeriesResult<f32>;
