//! Conjugacy classes of the symmetric group S_n, named by cycle type.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A partition of n, stored with parts in non-increasing order.
///
/// Conjugacy classes of S_n and unramified splitting patterns of a degree-n
/// field are both parameterized by these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    /// Builds a cycle type from parts in any order. Zero parts and the
    /// empty partition are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::ZeroDegree);
        }
        if parts.contains(&0) {
            return Err(Error::ClassSpec {
                spec: format!("{parts:?}"),
                reason: "parts must be positive".into(),
            });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn identity(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(CycleType {
            parts: vec![1; n as usize],
        })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The degree n this partition sums to.
    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Parity of the permutations in the class: even iff contained in A_n.
    pub fn is_even(&self) -> bool {
        self.parts.iter().map(|&p| p - 1).sum::<u32>() % 2 == 0
    }

    /// Representative in cycle notation, short cycles first: `e`, `(12)`,
    /// `(12)(345)`, ... Points are separated by spaces once n exceeds 9.
    pub fn representative(&self) -> String {
        if self.is_identity() {
            return "e".to_string();
        }
        let wide = self.degree() > 9;
        let mut next = 1u32;
        let mut out = String::new();
        for &len in self.parts.iter().rev().filter(|&&p| p > 1) {
            let pts: Vec<String> = (next..next + len).map(|i| i.to_string()).collect();
            next += len;
            out.push('(');
            out.push_str(&pts.join(if wide { " " } else { "" }));
            out.push(')');
        }
        out
    }

    fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Parses a class spec for S_n: comma-separated parts (`"2,2,1"`, or
    /// `"2,2"` padded with fixed points), cycle notation (`"(12)(34)"`,
    /// `"(1 2)(3 4)"`), or the identity as `"e"` / `"()"`.
    pub fn parse_spec(text: &str, n: u32) -> Result<Self> {
        let spec = text.trim();
        let err = |reason: &str| Error::ClassSpec {
            spec: text.to_string(),
            reason: reason.to_string(),
        };
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut parts = if spec == "e" || spec == "()" || spec == "1" {
            Vec::new()
        } else if spec.starts_with('(') {
            parse_cycles(spec, n).map_err(|r| err(&r))?
        } else {
            let mut parts = Vec::new();
            for tok in spec.split(',') {
                let v: u32 = tok
                    .trim()
                    .parse()
                    .map_err(|_| err("expected comma-separated positive integers"))?;
                if v == 0 {
                    return Err(err("parts must be positive"));
                }
                parts.push(v);
            }
            parts
        };
        let total: u32 = parts.iter().sum();
        if total > n {
            return Err(err(&format!("parts sum to {total}, more than n = {n}")));
        }
        parts.extend(std::iter::repeat_n(1, (n - total) as usize));
        CycleType::new(parts)
    }
}

fn parse_cycles(spec: &str, n: u32) -> std::result::Result<Vec<u32>, String> {
    let mut seen = vec![false; n as usize + 1];
    let mut parts = Vec::new();
    let mut rest = spec;
    while !rest.is_empty() {
        let body_end = rest
            .find(')')
            .ok_or_else(|| "unbalanced parenthesis".to_string())?;
        if !rest.starts_with('(') {
            return Err("expected '(' to open a cycle".into());
        }
        let body = &rest[1..body_end];
        if body.contains('(') {
            return Err("nested parenthesis".into());
        }
        let points: Vec<u32> = if body.contains([' ', ',']) {
            body.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| format!("bad point {t:?}")))
                .collect::<std::result::Result<_, _>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| format!("bad point {c:?}")))
                .collect::<std::result::Result<_, _>>()?
        };
        for &pt in &points {
            if pt == 0 || pt > n {
                return Err(format!("point {pt} outside 1..={n}"));
            }
            if std::mem::replace(&mut seen[pt as usize], true) {
                return Err(format!("point {pt} repeated"));
            }
        }
        if points.len() > 1 {
            parts.push(points.len() as u32);
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(parts)
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl TryFrom<Vec<u32>> for CycleType {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        CycleType::new(parts)
    }
}

impl From<CycleType> for Vec<u32> {
    fn from(ct: CycleType) -> Self {
        ct.parts
    }
}

/// All partitions of n in descending lexicographic order.
pub fn cycle_types(n: u32) -> Result<Vec<CycleType>> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    partitions_into(n, n, &mut current, &mut out);
    Ok(out)
}

fn partitions_into(
    remaining: u32,
    max_part: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<CycleType>,
) {
    if remaining == 0 {
        out.push(CycleType {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        partitions_into(remaining - part, part, current, out);
        current.pop();
    }
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// |C| = n! / prod_k (k^{m_k} m_k!).
pub fn class_size(ct: &CycleType) -> BigUint {
    let centralizer = ct
        .multiplicities()
        .into_iter()
        .fold(BigUint::one(), |acc, (k, m)| {
            acc * BigUint::from(k).pow(m) * factorial(m)
        });
    factorial(ct.degree()) / centralizer
}

/// |C| / |S_n| as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassDensity(BigRational);

impl ClassDensity {
    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn to_scalar<T: Scalar>(&self) -> T {
        T::from_big_ratio(&self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ClassDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn class_density(ct: &CycleType) -> ClassDensity {
    ClassDensity(BigRational::new(
        BigInt::from(class_size(ct)),
        BigInt::from(factorial(ct.degree())),
    ))
}

/// Cycle type of Frob_p read off the factor degrees of f mod p (valid when
/// p does not divide disc f).
pub fn class_of_degree_pattern(degrees: &[u32], n: u32) -> Result<CycleType> {
    let total: u32 = degrees.iter().sum();
    if total != n || degrees.contains(&0) {
        return Err(Error::PatternMismatch {
            parts: degrees.to_vec(),
            n,
        });
    }
    CycleType::new(degrees.to_vec())
}
