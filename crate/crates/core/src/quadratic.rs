//! Quadratic fields: Kronecker symbols, fundamental discriminants and the
//! least split/inert primes averaged over them.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{is_squarefree, isqrt, primes_up_to, squarefree_flags, PrimeTable};
use crate::series::{evaluate, Statistic};

/// Kronecker symbol (a / n).
pub fn kronecker(a: i64, n: u64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let twos = n.trailing_zeros();
    let mut sign = 1i8;
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = -1 exactly when a = 3, 5 mod 8.
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    let odd = n >> twos;
    sign * jacobi(a.rem_euclid(odd as i64) as u64, odd)
}

/// Jacobi symbol (a / n) for odd n, by reciprocity.
pub fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// D = 1 mod 4 squarefree, or D = 4m with m = 2, 3 mod 4 squarefree; D != 1.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(FundamentalDiscriminant(d))
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// The fundamental discriminant of Q(sqrt(d)) for a nonzero non-square d.
    pub fn of_field(d: i64) -> Result<Self> {
        let mut rest = d.unsigned_abs();
        let mut kernel = 1u64;
        let mut p = 2u64;
        while p * p <= rest {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if e % 2 == 1 {
                kernel *= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        kernel *= rest;
        let s = kernel as i64 * d.signum();
        let disc = if s.rem_euclid(4) == 1 { s } else { 4 * s };
        FundamentalDiscriminant::new(disc)
    }
}

impl fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "both")]
    Both,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Both => "both",
        })
    }
}

impl Sign {
    fn includes_positive(self) -> bool {
        matches!(self, Sign::Positive | Sign::Both)
    }

    fn includes_negative(self) -> bool {
        matches!(self, Sign::Negative | Sign::Both)
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "positive" => Ok(Sign::Positive),
            "-" | "negative" => Ok(Sign::Negative),
            "both" | "+-" | "±" => Ok(Sign::Both),
            _ => Err(Error::Input(format!("unknown sign {s:?}"))),
        }
    }
}

const BLOCK: u64 = 1 << 16;

/// Fundamental discriminants with |D| in `[lo, hi)`, ascending in |D|
/// (negative before positive at equal |D|).
fn discriminants_in(lo: u64, hi: u64, sign: Sign, primes: &[u64]) -> Vec<i64> {
    let odd_flags = squarefree_flags(lo, hi, primes);
    let qlo = lo.div_ceil(4);
    let qhi = hi.div_ceil(4);
    let quarter_flags = squarefree_flags(qlo, qhi, primes);
    let mut out = Vec::new();
    for m in lo.max(1)..hi {
        let (neg, pos) = match m % 4 {
            1 => (false, m != 1 && odd_flags[(m - lo) as usize]),
            3 => (odd_flags[(m - lo) as usize], false),
            0 => {
                let k = m / 4;
                let sf = quarter_flags[(k - qlo) as usize];
                // D/4 = +k needs k = 2, 3 mod 4; D/4 = -k needs k = 1, 2 mod 4.
                (sf && matches!(k % 4, 1 | 2), sf && matches!(k % 4, 2 | 3))
            }
            _ => (false, false),
        };
        if neg && sign.includes_negative() {
            out.push(-(m as i64));
        }
        if pos && sign.includes_positive() {
            out.push(m as i64);
        }
    }
    out
}

fn blocks(x: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    let end = x + 1;
    let count = end.div_ceil(BLOCK) as usize;
    (0..count).into_par_iter().map(move |b| {
        let b = b as u64;
        (b * BLOCK, ((b + 1) * BLOCK).min(end))
    })
}

/// Every fundamental discriminant with |D| <= x of the requested sign,
/// ascending in |D|.
pub fn fundamental_discriminants(x: u64, sign: Sign) -> Vec<FundamentalDiscriminant> {
    let primes = primes_up_to(isqrt(x) + 1);
    blocks(x)
        .flat_map_iter(|(lo, hi)| discriminants_in(lo, hi, sign, &primes))
        .map(FundamentalDiscriminant)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    /// chi_D(p) = +1: p splits.
    Plus,
    /// chi_D(p) = -1: p is inert.
    Minus,
    /// chi_D(p) != +1.
    NotPlus,
    /// chi_D(p) != -1.
    NotMinus,
}

impl Target {
    fn accepts(self, chi: i8) -> bool {
        match self {
            Target::Plus => chi == 1,
            Target::Minus => chi == -1,
            Target::NotPlus => chi != 1,
            Target::NotMinus => chi != -1,
        }
    }
}

/// Least prime p with chi_D(p) meeting `target`.
pub fn first_sign_prime(d: FundamentalDiscriminant, target: Target) -> Result<u64> {
    first_sign_prime_in(d.get(), target, PrimeTable::shared())
}

fn first_sign_prime_in(d: i64, target: Target, primes: &PrimeTable) -> Result<u64> {
    primes
        .iter()
        .find(|&p| target.accepts(kronecker(d, p)))
        .ok_or(Error::NoSignPrime {
            d,
            limit: primes.limit(),
        })
}

/// Brute-force statistics over quadratic fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadraticQuantity {
    /// N_{D,+1}
    #[serde(rename = "N+1")]
    SplitFirst,
    /// N_{D,-1}
    #[serde(rename = "N-1")]
    InertFirst,
    /// n_{D,+1}
    #[serde(rename = "n+1")]
    NotSplitFirst,
    /// n_{D,-1}
    #[serde(rename = "n-1")]
    NotInertFirst,
    /// Least quadratic non-residue mod p over primes 2 < p <= X.
    #[serde(rename = "erdos-prime")]
    ErdosPrime,
}

impl QuadraticQuantity {
    pub const ALL: [QuadraticQuantity; 5] = [
        QuadraticQuantity::SplitFirst,
        QuadraticQuantity::InertFirst,
        QuadraticQuantity::NotSplitFirst,
        QuadraticQuantity::NotInertFirst,
        QuadraticQuantity::ErdosPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuadraticQuantity::SplitFirst => "N+1",
            QuadraticQuantity::InertFirst => "N-1",
            QuadraticQuantity::NotSplitFirst => "n+1",
            QuadraticQuantity::NotInertFirst => "n-1",
            QuadraticQuantity::ErdosPrime => "erdos-prime",
        }
    }

    fn target(self) -> Target {
        match self {
            QuadraticQuantity::SplitFirst => Target::Plus,
            QuadraticQuantity::InertFirst | QuadraticQuantity::ErdosPrime => Target::Minus,
            QuadraticQuantity::NotSplitFirst => Target::NotPlus,
            QuadraticQuantity::NotInertFirst => Target::NotMinus,
        }
    }

    /// The statistic whose series gives the limit.
    pub fn limit_statistic(self) -> Statistic {
        match self {
            QuadraticQuantity::SplitFirst | QuadraticQuantity::InertFirst => Statistic::Pollack,
            QuadraticQuantity::NotSplitFirst | QuadraticQuantity::NotInertFirst => {
                Statistic::QuadraticLittleN
            }
            QuadraticQuantity::ErdosPrime => Statistic::Erdos,
        }
    }
}

impl fmt::Display for QuadraticQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuadraticQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuadraticQuantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown quadratic quantity {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticReport {
    pub x: u64,
    pub sign: Sign,
    pub quantity: QuadraticQuantity,
    pub count: u64,
    pub mean: Option<f64>,
    pub predicted: f64,
}

/// Mean of the least qualifying prime over all fundamental discriminants
/// with |D| <= x of the given sign, or over primes 2 < p <= x for
/// [`QuadraticQuantity::ErdosPrime`] (the sign is then ignored).
pub fn quadratic_averages(
    x: u64,
    sign: Sign,
    quantity: QuadraticQuantity,
) -> Result<QuadraticReport> {
    if x < 3 {
        return Err(Error::Input(format!("X must be at least 3 (got {x})")));
    }
    let primes = PrimeTable::shared();
    let target = quantity.target();
    let (sum, count) = if quantity == QuadraticQuantity::ErdosPrime {
        let candidates = if x <= primes.limit() {
            primes.up_to(x).to_vec()
        } else {
            primes_up_to(x)
        };
        candidates[1..]
            .par_iter()
            .map(|&p| {
                // chi_{p*} with p* = +-p = 1 mod 4 is the Legendre symbol mod p.
                let p_star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
                first_sign_prime_in(p_star, target, primes).map(|q| (q as u128, 1u64))
            })
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?
    } else {
        let sieve_primes = primes_up_to(isqrt(x) + 1);
        blocks(x)
            .map(|(lo, hi)| {
                discriminants_in(lo, hi, sign, &sieve_primes)
                    .into_iter()
                    .try_fold((0u128, 0u64), |(s, c), d| {
                        first_sign_prime_in(d, target, primes).map(|q| (s + q as u128, c + 1))
                    })
            })
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?
    };
    let predicted = evaluate(quantity.limit_statistic(), 0, None, 1e-12)?.value;
    Ok(QuadraticReport {
        x,
        sign,
        quantity,
        count,
        mean: (count > 0).then(|| sum as f64 / count as f64),
        predicted,
    })
}
