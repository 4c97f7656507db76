//! First-hit expectation series over primes.
//!
//! Every average in this crate has the shape
//!
//! ```text
//!   E[q] = sum_q  q * hit(q) * prod_{p<q} (1 - hit(p))
//! ```
//!
//! where `hit(p)` is the probability that the scanned statistic is decided
//! at p. The sum is accumulated with Neumaier compensation; the survival
//! product is kept exact while it is cheap to do so.
//!
//! # Truncation
//!
//! After k primes with survival product P, the omitted mass is
//! `P * E[p_{k+J}]` where J is the index of the first later hit. If every
//! later prime survives with probability at most s < 1 then
//! `P(J > j) <= s^j`, and summation by parts gives
//!
//! ```text
//!   tail <= P * ( U(k+1) + sum_{j>=1} (U(k+j+1) - U(k+j)) s^j )
//! ```
//!
//! for any increasing upper bound U on the m-th prime. U is the sieved prime
//! itself inside the table and `m (ln m + ln ln m)` beyond it. Summation
//! stops once the reported bound is at most `eps`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Float, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localmodel::LocalModel;
use crate::primes::{nth_prime_upper_bound, PrimeTable};
use crate::scalar::Scalar;
use crate::symgroup::{class_density, CycleType};
use crate::{Exact, Series64};

/// Default target for the tail bound.
pub const DEFAULT_EPS: f64 = 1e-10;

/// Survival products are tracked exactly until they fall below this value
/// or their denominator outgrows [`EXACT_DENOM_BITS`].
const EXACT_SURVIVAL_FLOOR: f64 = 1e-30;
const EXACT_DENOM_BITS: u64 = 1024;

/// Per-prime decision probabilities of a first-hit statistic.
pub trait HitModel: Sync {
    /// Probability that the statistic is decided at the prime p.
    fn hit(&self, p: u64) -> Exact;

    /// Upper bound on `1 - hit(p)` over all primes `p > q`.
    fn survival_sup_after(&self, q: u64) -> f64;

    fn survive(&self, p: u64) -> Exact {
        Exact::one() - self.hit(p)
    }
}

impl<M: HitModel + ?Sized> HitModel for &M {
    fn hit(&self, p: u64) -> Exact {
        (**self).hit(p)
    }

    fn survival_sup_after(&self, q: u64) -> f64 {
        (**self).survival_sup_after(q)
    }
}

/// The statistics whose limiting averages the crate computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistic {
    /// Least prime ramified or with Frobenius outside C.
    #[serde(rename = "little-n")]
    LittleN,
    /// Least prime with Frobenius in C.
    #[serde(rename = "big-N")]
    BigN,
    /// Least prime with Frobenius an odd permutation.
    #[serde(rename = "big-N-odd-union")]
    BigNOddUnion,
    /// Least prime not split (resp. not inert) in a quadratic field.
    #[serde(rename = "quadratic-little-n")]
    QuadraticLittleN,
    /// Least split (resp. inert) prime of a quadratic field.
    #[serde(rename = "pollack")]
    Pollack,
    /// Least quadratic non-residue modulo a prime.
    #[serde(rename = "erdos")]
    Erdos,
}

impl Statistic {
    pub const ALL: [Statistic; 6] = [
        Statistic::LittleN,
        Statistic::BigN,
        Statistic::BigNOddUnion,
        Statistic::QuadraticLittleN,
        Statistic::Pollack,
        Statistic::Erdos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::LittleN => "little-n",
            Statistic::BigN => "big-N",
            Statistic::BigNOddUnion => "big-N-odd-union",
            Statistic::QuadraticLittleN => "quadratic-little-n",
            Statistic::Pollack => "pollack",
            Statistic::Erdos => "erdos",
        }
    }

    /// Whether the statistic depends on a degree n (and, for the first
    /// two, on a class C).
    pub fn needs_degree(self) -> bool {
        matches!(
            self,
            Statistic::LittleN | Statistic::BigN | Statistic::BigNOddUnion
        )
    }

    pub fn needs_class(self) -> bool {
        matches!(self, Statistic::LittleN | Statistic::BigN)
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown quantity {s:?}")))
    }
}

/// The hit models behind every constant.
#[derive(Debug, Clone)]
pub enum StandardModel {
    /// hit = (1 - d + f(p)) / (1 + f(p)), d = |C|/n!.
    LittleN { model: LocalModel, density: Exact },
    /// hit = d / (1 + f(p)).
    BigN { model: LocalModel, density: Exact },
    /// hit = (p + 2) / (2(p + 1)): ramified or the wrong sign.
    QuadraticLittleN,
    /// hit = p / (2(p + 1)): split (or inert).
    Pollack,
    /// The same hit probability at every prime.
    Constant(Exact),
}

impl StandardModel {
    pub fn little_n(n: u32, ct: &CycleType) -> Result<Self> {
        let (model, density) = class_model(n, ct)?;
        Ok(StandardModel::LittleN { model, density })
    }

    pub fn big_n(n: u32, ct: &CycleType) -> Result<Self> {
        let (model, density) = class_model(n, ct)?;
        Ok(StandardModel::BigN { model, density })
    }

    /// Frobenius in the union of the odd classes, which has density 1/2.
    pub fn big_n_odd_union(n: u32) -> Result<Self> {
        Ok(StandardModel::BigN {
            model: LocalModel::new(n)?,
            density: Exact::from_ratio(1, 2),
        })
    }

    pub fn erdos() -> Self {
        StandardModel::Constant(Exact::from_ratio(1, 2))
    }

    /// Model for a statistic; `n` and `ct` are ignored where unused.
    pub fn for_statistic(stat: Statistic, n: u32, ct: Option<&CycleType>) -> Result<Self> {
        let class = || ct.ok_or_else(|| Error::Input(format!("{stat} needs a conjugacy class")));
        match stat {
            Statistic::LittleN => StandardModel::little_n(n, class()?),
            Statistic::BigN => StandardModel::big_n(n, class()?),
            Statistic::BigNOddUnion => StandardModel::big_n_odd_union(n),
            Statistic::QuadraticLittleN => Ok(StandardModel::QuadraticLittleN),
            Statistic::Pollack => Ok(StandardModel::Pollack),
            Statistic::Erdos => Ok(StandardModel::erdos()),
        }
    }
}

fn class_model(n: u32, ct: &CycleType) -> Result<(LocalModel, Exact)> {
    let model = LocalModel::new(n)?;
    if ct.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            got: ct.degree(),
        });
    }
    Ok((model, class_density(ct).as_ratio().clone()))
}

fn round_up(x: f64) -> f64 {
    (x * (1.0 + 4.0 * f64::EPSILON)).min(1.0)
}

impl HitModel for StandardModel {
    fn hit(&self, p: u64) -> Exact {
        match self {
            StandardModel::LittleN { model, density } => {
                let f: Exact = model.f(p);
                (Exact::one() - density + &f) / (Exact::one() + f)
            }
            StandardModel::BigN { model, density } => {
                density / (Exact::one() + model.f::<Exact>(p))
            }
            StandardModel::QuadraticLittleN => {
                Exact::new(BigInt::from(p) + 2, BigInt::from(2) * (BigInt::from(p) + 1))
            }
            StandardModel::Pollack => {
                Exact::new(BigInt::from(p), BigInt::from(2) * (BigInt::from(p) + 1))
            }
            StandardModel::Constant(h) => h.clone(),
        }
    }

    fn survival_sup_after(&self, q: u64) -> f64 {
        // f(p) decreases in p, so little-n survival d/(1+f) increases to d
        // while big-N survival 1 - d/(1+f) decreases from its value at q+1.
        let v = match self {
            StandardModel::LittleN { density, .. } => density.as_f64(),
            StandardModel::BigN { .. } | StandardModel::Pollack => self.survive(q + 1).as_f64(),
            StandardModel::QuadraticLittleN => 0.5,
            StandardModel::Constant(h) => (Exact::one() - h).as_f64(),
        };
        round_up(v)
    }
}

/// A hit model given by closures.
pub struct FnModel<H, S> {
    hit: H,
    sup: S,
}

impl<H, S> FnModel<H, S>
where
    H: Fn(u64) -> Exact + Sync,
    S: Fn(u64) -> f64 + Sync,
{
    /// `sup(q)` must bound the survival probability of every prime above q.
    pub fn new(hit: H, sup: S) -> Self {
        FnModel { hit, sup }
    }
}

impl<H, S> HitModel for FnModel<H, S>
where
    H: Fn(u64) -> Exact + Sync,
    S: Fn(u64) -> f64 + Sync,
{
    fn hit(&self, p: u64) -> Exact {
        (self.hit)(p)
    }

    fn survival_sup_after(&self, q: u64) -> f64 {
        (self.sup)(q)
    }
}

/// Value of a truncated series together with its truncation report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult<T> {
    pub value: T,
    /// Number of primes whose terms were added.
    pub terms_used: usize,
    pub last_prime: u64,
    /// Upper bound on the omitted terms.
    pub tail_estimate: T,
    pub requested_eps: f64,
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Float> Default for CompensatedSum<T> {
    fn default() -> Self {
        CompensatedSum {
            sum: T::zero(),
            carry: T::zero(),
        }
    }
}

impl<T: Float> CompensatedSum<T> {
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

impl<T: Float> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        iter.into_iter().for_each(|x| acc.add(x));
        acc
    }
}

enum Survival {
    Exact(Exact),
    Float(f64),
}

impl Survival {
    fn as_f64(&self) -> f64 {
        match self {
            Survival::Exact(v) => v.as_f64(),
            Survival::Float(v) => *v,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Survival::Exact(v) => v.is_zero(),
            Survival::Float(v) => *v == 0.0,
        }
    }

    /// Returns the term `q * hit * survival` and advances the product.
    fn step(&mut self, q: u64, hit: &Exact) -> f64 {
        match self {
            Survival::Exact(s) => {
                let term = (Exact::from_u64(q) * hit * &*s).as_f64();
                *s = &*s * (Exact::one() - hit);
                if s.as_f64() < EXACT_SURVIVAL_FLOOR || s.denom().bits() > EXACT_DENOM_BITS {
                    *self = Survival::Float(s.as_f64());
                }
                term
            }
            Survival::Float(s) => {
                let h = hit.as_f64();
                let term = q as f64 * h * *s;
                *s *= (Exact::one() - hit).as_f64();
                term
            }
        }
    }
}

/// Bound on the omitted mass after `included` primes with survival
/// product `survival`, given that every later prime survives with
/// probability at most `s`.
pub fn tail_bound(survival: f64, included: usize, s: f64, primes: &PrimeTable) -> f64 {
    if survival == 0.0 {
        return 0.0;
    }
    if s.is_nan() || s >= 1.0 {
        return f64::INFINITY;
    }
    if s <= 0.0 {
        return survival * primes.nth_upper(included + 1);
    }
    let mut acc = primes.nth_upper(included + 1);
    let mut weight = 1.0;
    let mut j = 1;
    while weight >= 1e-22 {
        weight *= s;
        acc += (primes.nth_upper(included + j + 1) - primes.nth_upper(included + j)) * weight;
        j += 1;
    }
    // Remaining increments: U(m + i) <= 2 (1 + i) U(m) for the Rosser bound.
    let u = nth_prime_upper_bound(included + j).max(primes.nth_upper(included + j));
    acc += weight * 2.0 * u * (s / (1.0 - s) + s / ((1.0 - s) * (1.0 - s)));
    survival * acc
}

/// Evaluates `sum_q q hit(q) prod_{p<q} (1 - hit(p))` until the tail bound
/// is at most `eps`. The q = 2 term is always included.
pub fn first_hit_expectation<T, M>(
    model: &M,
    eps: f64,
    primes: &PrimeTable,
) -> Result<SeriesResult<T>>
where
    T: Float,
    M: HitModel + ?Sized,
{
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::BadEps(eps));
    }
    accumulate(model, primes, Stop::Eps(eps))
}

/// The same series cut after the last prime `<= cutoff`; the reported
/// tail is the bound at that point and `requested_eps` is zero.
pub fn truncated_at<T, M>(model: &M, cutoff: u64, primes: &PrimeTable) -> Result<SeriesResult<T>>
where
    T: Float,
    M: HitModel + ?Sized,
{
    accumulate(model, primes, Stop::Cutoff(cutoff))
}

enum Stop {
    Eps(f64),
    Cutoff(u64),
}

fn accumulate<T, M>(model: &M, primes: &PrimeTable, stop: Stop) -> Result<SeriesResult<T>>
where
    T: Float,
    M: HitModel + ?Sized,
{
    let cast = |x: f64| T::from(x).unwrap_or_else(T::infinity);
    let mut sum = CompensatedSum::<T>::default();
    let mut survival = Survival::Exact(Exact::one());
    // Survival level at which the full tail bound is next worth computing.
    let mut next_check = f64::INFINITY;
    let mut last_tail = f64::INFINITY;
    let mut last_prime = 0;

    for (i, q) in primes.iter().enumerate() {
        if let Stop::Cutoff(c) = stop {
            if q > c {
                break;
            }
        }
        let hit = model.hit(q);
        sum.add(cast(survival.step(q, &hit)));
        last_prime = q;
        let included = i + 1;

        let Stop::Eps(eps) = stop else { continue };
        if survival.is_zero() {
            return Ok(finish(sum, included, q, 0.0, eps, cast));
        }
        let surv = survival.as_f64();
        if surv * primes.nth_upper(included + 1) > eps || surv > next_check {
            continue;
        }
        let s = model.survival_sup_after(q);
        last_tail = tail_bound(surv, included, s, primes);
        if last_tail <= eps {
            return Ok(finish(sum, included, q, last_tail, eps, cast));
        }
        // The bound scales with the survival product; wait until it could pass.
        next_check = if last_tail.is_finite() {
            surv * (eps / last_tail)
        } else {
            surv * 0.5
        };
    }

    match stop {
        Stop::Cutoff(_) => {
            let included = primes.up_to(last_prime).len();
            let tail = if survival.is_zero() {
                0.0
            } else {
                tail_bound(
                    survival.as_f64(),
                    included,
                    model.survival_sup_after(last_prime),
                    primes,
                )
            };
            Ok(finish(sum, included, last_prime, tail, 0.0, cast))
        }
        Stop::Eps(_) => Err(Error::Diverged {
            last_prime,
            survival: survival.as_f64(),
            tail: last_tail,
        }),
    }
}

fn finish<T: Float>(
    sum: CompensatedSum<T>,
    terms_used: usize,
    last_prime: u64,
    tail: f64,
    eps: f64,
    cast: impl Fn(f64) -> T,
) -> SeriesResult<T> {
    SeriesResult {
        value: sum.value(),
        terms_used,
        last_prime,
        tail_estimate: cast(tail),
        requested_eps: eps,
    }
}

/// Evaluates a statistic's limiting average with the shared prime table.
pub fn evaluate(stat: Statistic, n: u32, ct: Option<&CycleType>, eps: f64) -> Result<Series64> {
    let model = StandardModel::for_statistic(stat, n, ct)?;
    first_hit_expectation(&model, eps, PrimeTable::shared())
}

/// Limiting average of n_{K,C} over S_n-fields.
pub fn avg_little_n(n: u32, ct: &CycleType, eps: f64) -> Result<Series64> {
    evaluate(Statistic::LittleN, n, Some(ct), eps)
}

/// Limiting average of N_{K,C} over S_n-fields.
pub fn avg_big_n(n: u32, ct: &CycleType, eps: f64) -> Result<Series64> {
    evaluate(Statistic::BigN, n, Some(ct), eps)
}

/// Limiting average of the least prime whose Frobenius is odd.
pub fn avg_big_n_union_odd(n: u32, eps: f64) -> Result<Series64> {
    evaluate(Statistic::BigNOddUnion, n, None, eps)
}

/// Average of n_{F,+-1} over quadratic fields.
pub fn quadratic_little_n(eps: f64) -> Result<Series64> {
    evaluate(Statistic::QuadraticLittleN, 0, None, eps)
}

/// Average of N_{D,+-1} over fundamental discriminants.
pub fn pollack_constant(eps: f64) -> Result<Series64> {
    evaluate(Statistic::Pollack, 0, None, eps)
}

/// `sum_k p_k / 2^k`, the average least quadratic non-residue.
pub fn erdos_constant(eps: f64) -> Result<Series64> {
    evaluate(Statistic::Erdos, 0, None, eps)
}

/// Probability that the statistic is decided at p = 2, as a float.
pub fn first_prime_probability(model: &impl HitModel) -> f64 {
    model.hit(2).to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(parts: &[u32]) -> CycleType {
        CycleType::new(parts.to_vec()).unwrap()
    }

    fn constant(h: Exact) -> StandardModel {
        StandardModel::Constant(h)
    }

    fn small_table() -> PrimeTable {
        PrimeTable::new(100_000)
    }

    #[test]
    fn degenerate_hits() {
        let t = small_table();
        let r: Series64 = first_hit_expectation(&constant(Exact::one()), 1e-12, &t).unwrap();
        assert_eq!(r.value, 2.0);
        assert_eq!(r.terms_used, 1);
        assert_eq!(r.tail_estimate, 0.0);

        let skip_two = FnModel::new(
            |p| if p == 2 { Exact::zero() } else { Exact::one() },
            |_| 0.0,
        );
        let r: Series64 = first_hit_expectation(&skip_two, 1e-12, &t).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(r.last_prime, 3);
    }

    #[test]
    fn never_hitting_diverges() {
        let t = PrimeTable::new(1_000);
        let r = first_hit_expectation::<f64, _>(&constant(Exact::zero()), 1e-10, &t);
        assert!(matches!(
            r,
            Err(Error::Diverged {
                last_prime: 997,
                ..
            })
        ));
    }

    #[test]
    fn bad_eps_rejected() {
        let t = small_table();
        for eps in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(first_hit_expectation::<f64, _>(&StandardModel::erdos(), eps, &t).is_err());
        }
    }

    #[test]
    fn huge_eps_still_takes_first_term() {
        let t = small_table();
        let r: Series64 = first_hit_expectation(&StandardModel::Pollack, 1e6, &t).unwrap();
        assert_eq!(r.terms_used, 1);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn erdos_partial_sums() {
        let t = small_table();
        let r: Series64 = truncated_at(&StandardModel::erdos(), 11, &t).unwrap();
        assert_eq!(r.terms_used, 5);
        assert_eq!(r.value, 3.15625);
        let full = erdos_constant(1e-12).unwrap();
        assert!((full.value - 3.67464).abs() < 1e-5);
    }

    /// Exact tail of sum p_k / 2^k stays below (2 p_k + 4) / 2^k.
    #[test]
    fn erdos_tail_below_doubling_bound() {
        let t = small_table();
        let p = t.as_slice();
        for k in 1..=30usize {
            let tail: f64 = (k..k + 200)
                .map(|i| p[i] as f64 / 2f64.powi(i as i32 + 1))
                .sum();
            let bound = (2.0 * p[k - 1] as f64 + 4.0) / 2f64.powi(k as i32);
            assert!(tail <= bound, "k = {k}");
        }
    }

    #[test]
    fn tail_bound_dominates_true_tail() {
        let t = small_table();
        let models = [
            StandardModel::little_n(3, &ct(&[1, 1, 1])).unwrap(),
            StandardModel::big_n(4, &ct(&[3, 1])).unwrap(),
            StandardModel::big_n(5, &ct(&[1, 1, 1, 1, 1])).unwrap(),
            StandardModel::Pollack,
            StandardModel::QuadraticLittleN,
            StandardModel::erdos(),
        ];
        for m in &models {
            let full: Series64 = first_hit_expectation(m, 1e-13, &t).unwrap();
            for cutoff in [2, 3, 30, 100, 1000] {
                let part: Series64 = truncated_at(m, cutoff, &t).unwrap();
                let true_tail = full.value - part.value;
                assert!(true_tail <= part.tail_estimate + 1e-12, "{m:?} {cutoff}");
                assert!(part.value <= full.value + 1e-12);
            }
        }
    }

    #[test]
    fn hit_plus_survive_is_one() {
        let models = [
            StandardModel::little_n(5, &ct(&[2, 2, 1])).unwrap(),
            StandardModel::big_n(3, &ct(&[2, 1])).unwrap(),
            StandardModel::big_n_odd_union(4).unwrap(),
            StandardModel::QuadraticLittleN,
            StandardModel::Pollack,
        ];
        for m in &models {
            for p in [2u64, 3, 5, 7919] {
                let h = m.hit(p);
                assert!((h.clone() + m.survive(p)).is_one());
                assert!(h > Exact::zero() && h <= Exact::one());
            }
        }
        assert_eq!(
            StandardModel::QuadraticLittleN.hit(2),
            Exact::from_ratio(2, 3)
        );
    }

    #[test]
    fn survival_sup_bounds_later_primes() {
        let t = PrimeTable::new(5_000);
        let models = [
            StandardModel::little_n(4, &ct(&[2, 2])).unwrap(),
            StandardModel::big_n(5, &ct(&[2, 1, 1, 1])).unwrap(),
            StandardModel::big_n_odd_union(3).unwrap(),
            StandardModel::QuadraticLittleN,
            StandardModel::Pollack,
        ];
        for m in &models {
            for q in [2u64, 3, 10, 100] {
                let s = m.survival_sup_after(q);
                for p in t.iter().filter(|&p| p > q) {
                    assert!(m.survive(p).as_f64() <= s, "{m:?} q={q} p={p}");
                }
            }
        }
    }

    #[test]
    fn pollack_and_quadratic_first_terms() {
        let t = small_table();
        let first: Series64 = truncated_at(&StandardModel::Pollack, 2, &t).unwrap();
        assert!((first.value - 2.0 / 3.0).abs() < 1e-15);
        // A literal transcription of the quadratic series cut at q = 7.
        let lit: f64 = [2u64, 3, 5, 7]
            .iter()
            .enumerate()
            .map(|(i, &q)| {
                let q = q as f64;
                let prod: f64 = [2.0, 3.0, 5.0][..i]
                    .iter()
                    .map(|p| p / (2.0 * (p + 1.0)))
                    .product();
                (q * q + 2.0 * q) / (2.0 * (q + 1.0)) * prod
            })
            .sum();
        let r: Series64 = truncated_at(&StandardModel::QuadraticLittleN, 7, &t).unwrap();
        assert!((r.value - lit).abs() < 1e-14);
    }

    #[test]
    fn single_precision_instantiation() {
        let t = small_table();
        let m = StandardModel::little_n(3, &ct(&[1, 1, 1])).unwrap();
        let r32: crate::Series32 = first_hit_expectation(&m, 1e-6, &t).unwrap();
        let r64: Series64 = first_hit_expectation(&m, 1e-6, &t).unwrap();
        assert!((r32.value as f64 - r64.value).abs() < 1e-5);
        assert_eq!(r32.terms_used, r64.terms_used);
    }

    #[test]
    fn compensated_sum_recovers_small_addends() {
        let mut s = CompensatedSum::<f64>::default();
        s.add(1e16);
        for _ in 0..10 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 10.0);
    }

    #[test]
    fn statistic_names_round_trip() {
        for st in Statistic::ALL {
            assert_eq!(st.name().parse::<Statistic>().unwrap(), st);
            let json = serde_json::to_string(&st).unwrap();
            assert_eq!(json, format!("\"{}\"", st.name()));
        }
        assert!("big-n".parse::<Statistic>().is_err());
    }

    #[test]
    fn class_degree_checked() {
        assert!(StandardModel::little_n(4, &ct(&[2, 1])).is_err());
        assert!(StandardModel::big_n(6, &ct(&[6])).is_err());
        assert!(StandardModel::for_statistic(Statistic::BigN, 3, None).is_err());
    }
}
