//! Prime and squarefree sieves.

use std::sync::OnceLock;

/// Default upper limit for the shared prime table.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000;

const SEGMENT: u64 = 1 << 15;

/// All primes `<= limit`, in increasing order, via a segmented sieve of
/// Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = isqrt(limit);
    let base = simple_sieve(root);
    if limit <= root {
        return base;
    }

    let mut out = base.clone();
    let mut marks = vec![false; SEGMENT as usize];
    let mut lo = root + 1;
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        marks[..len].iter_mut().for_each(|m| *m = true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut m = start;
            while m <= hi {
                marks[(m - lo) as usize] = false;
                m += p;
            }
        }
        out.extend(
            marks[..len]
                .iter()
                .enumerate()
                .filter(|(_, &is_p)| is_p)
                .map(|(i, _)| lo + i as u64),
        );
        lo = hi + 1;
    }
    out
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut is_p = vec![true; n + 1];
    is_p[0] = false;
    if n >= 1 {
        is_p[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is_p[i] {
            let mut j = i * i;
            while j <= n {
                is_p[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is_p.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// An immutable table of consecutive primes starting at 2.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    primes: Vec<u64>,
    limit: u64,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        PrimeTable {
            primes: primes_up_to(limit),
            limit,
        }
    }

    /// Shared table up to [`DEFAULT_SIEVE_LIMIT`].
    pub fn shared() -> &'static PrimeTable {
        static TABLE: OnceLock<PrimeTable> = OnceLock::new();
        TABLE.get_or_init(|| PrimeTable::new(DEFAULT_SIEVE_LIMIT))
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    /// Primes `<= bound` as a slice of the table.
    pub fn up_to(&self, bound: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    /// Upper bound on the m-th prime (1-indexed): exact inside the table,
    /// `m (ln m + ln ln m)` beyond it (valid for m >= 6).
    pub fn nth_upper(&self, m: usize) -> f64 {
        if m >= 1 && m <= self.primes.len() {
            self.primes[m - 1] as f64
        } else {
            nth_prime_upper_bound(m)
        }
    }
}

/// Rosser–Schoenfeld upper bound for the m-th prime.
pub fn nth_prime_upper_bound(m: usize) -> f64 {
    const SMALL: [f64; 6] = [0.0, 2.0, 3.0, 5.0, 7.0, 11.0];
    if m < 6 {
        return SMALL[m];
    }
    let m = m as f64;
    m * (m.ln() + m.ln().ln())
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Squarefree flags for the integers in `[lo, hi)`, given primes covering
/// `sqrt(hi)`. Zero is reported as not squarefree.
pub fn squarefree_flags(lo: u64, hi: u64, primes: &[u64]) -> Vec<bool> {
    let mut flags = vec![true; hi.saturating_sub(lo) as usize];
    if lo == 0 && !flags.is_empty() {
        flags[0] = false;
    }
    for &p in primes {
        let sq = p * p;
        if sq >= hi {
            break;
        }
        let mut m = lo.div_ceil(sq) * sq;
        while m < hi {
            flags[(m - lo) as usize] = false;
            m += sq;
        }
    }
    flags
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}
