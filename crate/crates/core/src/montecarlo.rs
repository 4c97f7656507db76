//! Monte-Carlo sampling of the local model.
//!
//! Sample i walks the primes in order and draws Bernoulli(hit(p)) at each,
//! stopping at the first success. Its random stream is the ChaCha8 stream
//! number i under a key derived from the seed, so a sample's outcome does
//! not depend on which thread runs it. Sums are accumulated as exact
//! integers, which makes the estimate bit-for-bit reproducible for any
//! thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::scalar::Scalar;
use crate::series::{HitModel, StandardModel, Statistic};
use crate::symgroup::CycleType;
use crate::Exact;

/// Primes are tabulated until the survival product falls below this.
const NEGLIGIBLE_SURVIVAL: f64 = 1e-200;

/// Hit probabilities converted once to `f64`, in prime order.
#[derive(Debug, Clone)]
pub struct HitTable {
    primes: Vec<u64>,
    hits: Vec<f64>,
}

impl HitTable {
    pub fn new(model: &(impl HitModel + ?Sized), primes: &PrimeTable) -> Self {
        let mut table = HitTable {
            primes: Vec::new(),
            hits: Vec::new(),
        };
        let mut survival = 1.0f64;
        for p in primes.iter() {
            let hit: Exact = model.hit(p);
            let h = hit.as_f64();
            table.primes.push(p);
            table.hits.push(h);
            survival *= 1.0 - h;
            if survival < NEGLIGIBLE_SURVIVAL {
                break;
            }
        }
        table
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Product of survival probabilities over the first `k` primes.
    pub fn survival_through(&self, k: usize) -> f64 {
        self.hits[..k.min(self.hits.len())]
            .iter()
            .map(|h| 1.0 - h)
            .product()
    }
}

/// Random stream for one sample.
fn stream(key: [u8; 32], index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

fn key_for(seed: u64) -> [u8; 32] {
    ChaCha8Rng::seed_from_u64(seed).get_seed()
}

fn walk(table: &HitTable, rng: &mut ChaCha8Rng) -> Result<u64> {
    for (&p, &h) in table.primes.iter().zip(&table.hits) {
        let u: f64 = rng.gen();
        if u < h {
            return Ok(p);
        }
    }
    Err(Error::SieveExhausted(
        table.primes.last().copied().unwrap_or(0),
    ))
}

/// First prime at which sample `index` of the stream family `seed` hits.
pub fn sample_first_hit(table: &HitTable, seed: u64, index: u64) -> Result<u64> {
    walk(table, &mut stream(key_for(seed), index))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over sqrt(samples); zero for one sample.
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    sum: u128,
    sum_sq: u128,
}

impl Moments {
    fn of(q: u64) -> Self {
        Moments {
            count: 1,
            sum: q as u128,
            sum_sq: q as u128 * q as u128,
        }
    }

    fn merge(self, other: Self) -> Self {
        Moments {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }
}

/// Estimates the first-hit expectation of an arbitrary model.
pub fn estimate_model(
    model: &(impl HitModel + ?Sized),
    samples: u64,
    seed: u64,
    primes: &PrimeTable,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::Input("samples must be at least 1".into()));
    }
    let table = HitTable::new(model, primes);
    let key = key_for(seed);
    let m = (0..samples)
        .into_par_iter()
        .map(|i| walk(&table, &mut stream(key, i)).map(Moments::of))
        .try_reduce(Moments::default, |a, b| Ok(a.merge(b)))?;

    let n = m.count as u128;
    let mean = m.sum as f64 / m.count as f64;
    let std_error = if m.count > 1 {
        // n * sum_sq - sum^2 is exact and non-negative.
        let spread = n * m.sum_sq - m.sum * m.sum;
        let var = spread as f64 / (n * (n - 1)) as f64;
        (var / m.count as f64).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        samples,
        seed,
    })
}

/// Estimates the average of a statistic over S_n-fields from the local
/// model.
pub fn estimate(
    n: u32,
    ct: Option<&CycleType>,
    quantity: Statistic,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    let model = StandardModel::for_statistic(quantity, n, ct)?;
    estimate_model(&model, samples, seed, PrimeTable::shared())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{first_hit_expectation, FnModel};
    use crate::Series64;
    use num_traits::{One, Zero};

    fn ct(parts: &[u32]) -> CycleType {
        CycleType::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn certain_hit_is_two() {
        let model = StandardModel::Constant(Exact::one());
        let t = HitTable::new(&model, PrimeTable::shared());
        assert_eq!(t.len(), 1);
        for i in 0..100 {
            assert_eq!(sample_first_hit(&t, 7, i).unwrap(), 2);
        }
        let est = estimate_model(&model, 1000, 1, PrimeTable::shared()).unwrap();
        assert_eq!(est.mean, 2.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn never_hitting_exhausts_sieve() {
        let model = FnModel::new(|_| Exact::zero(), |_| 1.0);
        let primes = PrimeTable::new(100);
        let t = HitTable::new(&model, &primes);
        assert!(matches!(
            sample_first_hit(&t, 0, 0),
            Err(Error::SieveExhausted(97))
        ));
    }

    #[test]
    fn single_sample_is_a_prime() {
        let one = CycleType::identity(4).unwrap();
        let est = estimate(4, Some(&one), Statistic::LittleN, 1, 99).unwrap();
        assert!(est.mean >= 2.0);
        assert!(crate::primes::is_prime(est.mean as u64));
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn erdos_mean_within_three_standard_errors() {
        let est = estimate(0, None, Statistic::Erdos, 1_000_000, 20240917).unwrap();
        assert!(
            (est.mean - 3.674643966).abs() <= 3.0 * est.std_error,
            "{est:?}"
        );
    }

    #[test]
    fn cubic_identity_little_n() {
        let id = CycleType::identity(3).unwrap();
        let est = estimate(3, Some(&id), Statistic::LittleN, 1_000_000, 31337).unwrap();
        assert!(
            (est.mean - 2.1211027).abs() <= 3.0 * est.std_error,
            "{est:?}"
        );
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let model = StandardModel::big_n(4, &ct(&[2, 2])).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate_model(&model, 50_000, 5, PrimeTable::shared()).unwrap())
        };
        let a = run(1);
        assert_eq!(a, run(4));
        assert_eq!(a, run(3));
        let other = estimate_model(&model, 50_000, 6, PrimeTable::shared()).unwrap();
        assert_ne!(a.mean, other.mean);
    }

    /// The fraction of samples still running after 29 stays below
    /// (max survival)^pi(29).
    #[test]
    fn geometric_tail() {
        let primes = PrimeTable::shared();
        let models = [
            StandardModel::big_n(3, &CycleType::identity(3).unwrap()).unwrap(),
            StandardModel::big_n(5, &ct(&[3, 2])).unwrap(),
            StandardModel::little_n(3, &ct(&[2, 1])).unwrap(),
            StandardModel::Pollack,
        ];
        for m in &models {
            let table = HitTable::new(m, primes);
            let max_survival = primes
                .up_to(10_000)
                .iter()
                .map(|&p| m.survive(p).as_f64())
                .fold(0.0, f64::max);
            let samples = 100_000u64;
            let late = (0..samples)
                .into_par_iter()
                .filter(|&i| sample_first_hit(&table, 11, i).unwrap() > 29)
                .count() as f64;
            let bound = max_survival.powi(10);
            assert!(late / samples as f64 <= bound, "{m:?}: {late} vs {bound}");
            assert!(table.survival_through(10) <= bound);
        }
    }

    #[test]
    fn series_and_sampling_agree_on_custom_model() {
        // hit = 1/3 at every prime.
        let third = Exact::from_ratio(1, 3);
        let model = StandardModel::Constant(third);
        let series: Series64 = first_hit_expectation(&model, 1e-12, PrimeTable::shared()).unwrap();
        let est = estimate_model(&model, 400_000, 3, PrimeTable::shared()).unwrap();
        assert!((est.mean - series.value).abs() <= 4.0 * est.std_error);
    }
}
