//! Frobenius classes of concrete number fields and the first prime that
//! lands in (or escapes) a given class.
//!
//! A field arrives as a monic integer polynomial plus, optionally, its field
//! discriminant. For p not dividing the polynomial discriminant, the factor
//! degrees of f mod p are the cycle type of Frob_p. Primes dividing the
//! polynomial discriminant but not the field discriminant would need a
//! p-maximal order to classify; they are reported as indeterminate instead.

use std::borrow::Cow;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polymod::{degree_pattern, DegreePattern};
use crate::primes::PrimeTable;
use crate::series::{self, Statistic, DEFAULT_EPS};
use crate::symgroup::{class_of_degree_pattern, CycleType};
use crate::{Error, Result};

/// Primes examined per field when no bound is given.
pub const DEFAULT_BOUND: u64 = 10_000;

/// Discriminant of a monic integer polynomial, coefficients constant first.
///
/// Computed as `(-1)^(n(n-1)/2) Res(f, f')` with a fraction-free Sylvester
/// determinant, so the result is exact for any coefficient size.
pub fn poly_disc(coeffs: &[i64]) -> Result<BigInt> {
    let n = coeffs.len().saturating_sub(1);
    if n < 2 || coeffs[n] != 1 {
        return Err(Error::NotMonic { min_degree: 2 });
    }
    let f: Vec<BigInt> = coeffs.iter().rev().map(|&c| BigInt::from(c)).collect();
    let df: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .map(|(i, &c)| BigInt::from(c) * i)
        .collect();

    let size = 2 * n - 1;
    let mut sylvester = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n - 1 {
        for (j, c) in f.iter().enumerate() {
            sylvester[row][row + j] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in df.iter().enumerate() {
            sylvester[n - 1 + row][row + j] = c.clone();
        }
    }
    let res = bareiss_det(sylvester);
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    })
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Human-readable form such as `x^3-x-1`.
pub fn render_poly(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.unsigned_abs();
        let body = match (i, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "x".to_string(),
            (1, m) => format!("{m}x"),
            (e, 1) => format!("x^{e}"),
            (e, m) => format!("{m}x^{e}"),
        };
        out.push_str(sign);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One input field as read from JSON lines or CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    /// Monic defining polynomial, constant term first.
    pub coeffs: Vec<i64>,
    /// Field discriminant d_K, if known.
    #[serde(
        rename = "disc",
        alias = "field_disc",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub field_disc: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl FieldRecord {
    pub fn new(coeffs: Vec<i64>, field_disc: Option<i64>) -> Self {
        FieldRecord {
            coeffs,
            field_disc,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// The label, or the rendered polynomial when none was given.
    pub fn display_label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| render_poly(&self.coeffs))
    }
}

/// A validated record with its polynomial discriminant cached.
#[derive(Debug, Clone)]
pub struct Field {
    record: FieldRecord,
    n: u32,
    poly_disc: BigInt,
}

impl Field {
    pub fn new(record: FieldRecord) -> Result<Self> {
        let bad = |reason: String| Error::BadRecord {
            label: record.display_label(),
            reason,
        };
        let n = record.degree();
        if !(3..=5).contains(&n) {
            return Err(bad(format!("degree must be 3, 4 or 5 (got {n})")));
        }
        if record.coeffs[n] != 1 {
            return Err(bad("polynomial is not monic".into()));
        }
        let poly_disc = poly_disc(&record.coeffs)?;
        if poly_disc.is_zero() {
            return Err(bad("polynomial has a repeated root".into()));
        }
        if let Some(d) = record.field_disc {
            if d == 0 {
                return Err(bad("field discriminant is zero".into()));
            }
            let d = BigInt::from(d);
            let q = &poly_disc / &d;
            let rejected = !(&poly_disc % &d).is_zero() || q.is_negative() || {
                let r = q.sqrt();
                &r * &r != q
            };
            if rejected {
                return Err(bad(format!(
                    "field discriminant {d} does not divide {poly_disc} with square cofactor"
                )));
            }
        }
        Ok(Field {
            record,
            n: n as u32,
            poly_disc,
        })
    }

    pub fn record(&self) -> &FieldRecord {
        &self.record
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    /// Classifies the prime p (assumed prime).
    pub fn outcome(&self, p: u64) -> Result<FrobOutcome> {
        let kind = if !(&self.poly_disc % p).is_zero() {
            match degree_pattern(&self.record.coeffs, p) {
                Some(DegreePattern::Squarefree(degrees)) => {
                    OutcomeKind::Class(class_of_degree_pattern(&degrees, self.n)?)
                }
                _ => {
                    return Err(Error::Invariant(format!(
                    "{} is not squarefree mod {p} although {p} does not divide its discriminant",
                    self.record.display_label()
                )))
                }
            }
        } else if self
            .record
            .field_disc
            .is_some_and(|d| d.unsigned_abs() % p == 0)
        {
            OutcomeKind::Ramified
        } else {
            OutcomeKind::Indeterminate
        };
        Ok(FrobOutcome { prime: p, kind })
    }

    /// Outcomes for every prime up to `bound`, in order.
    pub fn outcomes(&self, bound: u64) -> Result<Vec<FrobOutcome>> {
        primes_through(bound)
            .iter()
            .map(|&p| self.outcome(p))
            .collect()
    }
}

fn primes_through(bound: u64) -> Cow<'static, [u64]> {
    let shared = PrimeTable::shared();
    if bound <= shared.limit() {
        Cow::Borrowed(shared.up_to(bound))
    } else {
        Cow::Owned(PrimeTable::new(bound).as_slice().to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeKind {
    Class(CycleType),
    Ramified,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobOutcome {
    pub prime: u64,
    pub kind: OutcomeKind,
}

/// Result of a first-prime search over primes up to a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum FirstPrime {
    Found {
        prime: u64,
    },
    NotFound {
        bound: u64,
    },
    /// An indeterminate prime came before the answer was settled.
    Tainted {
        prime: u64,
    },
}

impl FirstPrime {
    pub fn prime(self) -> Option<u64> {
        match self {
            FirstPrime::Found { prime } => Some(prime),
            _ => None,
        }
    }
}

impl std::fmt::Display for FirstPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FirstPrime::Found { prime } => write!(f, "{prime}"),
            FirstPrime::NotFound { bound } => write!(f, "not found <= {bound}"),
            FirstPrime::Tainted { prime } => write!(f, "tainted at {prime}"),
        }
    }
}

/// Verdict of one statistic on one outcome: `None` means keep looking.
fn little_n_step(outcome: &FrobOutcome, ct: &CycleType) -> Option<FirstPrime> {
    match &outcome.kind {
        OutcomeKind::Class(c) if c == ct => None,
        OutcomeKind::Class(_) | OutcomeKind::Ramified => Some(FirstPrime::Found {
            prime: outcome.prime,
        }),
        OutcomeKind::Indeterminate => Some(FirstPrime::Tainted {
            prime: outcome.prime,
        }),
    }
}

fn big_n_step(outcome: &FrobOutcome, ct: &CycleType) -> Option<FirstPrime> {
    match &outcome.kind {
        OutcomeKind::Class(c) if c == ct => Some(FirstPrime::Found {
            prime: outcome.prime,
        }),
        OutcomeKind::Class(_) | OutcomeKind::Ramified => None,
        OutcomeKind::Indeterminate => Some(FirstPrime::Tainted {
            prime: outcome.prime,
        }),
    }
}

/// n_{K,C} and N_{K,C} read off a single pass over the outcome stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldValues {
    pub little_n: FirstPrime,
    pub big_n: FirstPrime,
}

impl FieldValues {
    pub fn get(&self, quantity: Statistic) -> FirstPrime {
        match quantity {
            Statistic::LittleN => self.little_n,
            _ => self.big_n,
        }
    }
}

/// Walks primes up to `bound` until both statistics are settled.
pub fn field_values(field: &Field, ct: &CycleType, bound: u64) -> Result<FieldValues> {
    check_degree(field, ct)?;
    let mut little = None;
    let mut big = None;
    for &p in primes_through(bound).iter() {
        let outcome = field.outcome(p)?;
        little = little.or_else(|| little_n_step(&outcome, ct));
        big = big.or_else(|| big_n_step(&outcome, ct));
        if little.is_some() && big.is_some() {
            break;
        }
    }
    let missing = FirstPrime::NotFound { bound };
    Ok(FieldValues {
        little_n: little.unwrap_or(missing),
        big_n: big.unwrap_or(missing),
    })
}

fn check_degree(field: &Field, ct: &CycleType) -> Result<()> {
    if ct.degree() != field.degree() {
        return Err(Error::DegreeMismatch {
            expected: field.degree(),
            got: ct.degree(),
        });
    }
    Ok(())
}

/// Least prime that ramifies in K or whose Frobenius lies outside `ct`.
pub fn little_n_of_field(record: &FieldRecord, ct: &CycleType, bound: u64) -> Result<FirstPrime> {
    Ok(field_values(&Field::new(record.clone())?, ct, bound)?.little_n)
}

/// Least prime whose Frobenius lies in `ct`.
#[allow(non_snake_case)]
pub fn big_N_of_field(record: &FieldRecord, ct: &CycleType, bound: u64) -> Result<FirstPrime> {
    Ok(field_values(&Field::new(record.clone())?, ct, bound)?.big_n)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub label: String,
    pub little_n: FirstPrime,
    pub big_n: FirstPrime,
}

/// Per-field values and their average, next to the predicted average.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: u32,
    pub class: CycleType,
    pub quantity: Statistic,
    pub bound: u64,
    pub rows: Vec<ScanRow>,
    pub fields: usize,
    pub included: usize,
    pub tainted: usize,
    pub not_found: usize,
    pub empirical_mean: Option<f64>,
    pub predicted_mean: f64,
    pub abs_deviation: Option<f64>,
}

/// Scans every record for `ct` and averages the requested statistic over
/// the fields where it was decided.
pub fn aggregate_scan(
    records: Vec<FieldRecord>,
    ct: &CycleType,
    quantity: Statistic,
    bound: u64,
) -> Result<ScanReport> {
    if !matches!(quantity, Statistic::LittleN | Statistic::BigN) {
        return Err(Error::Input(format!(
            "scan supports little-n and big-N, not {quantity}"
        )));
    }
    if let Some(first) = records.first() {
        if let Some(other) = records.iter().find(|r| r.degree() != first.degree()) {
            return Err(Error::MixedDegrees {
                first: first.degree(),
                other: other.degree(),
            });
        }
    }
    let n = ct.degree();
    let predicted_mean = series::evaluate(quantity, n, Some(ct), DEFAULT_EPS)?.value;

    let values: Vec<(String, FieldValues)> = records
        .into_par_iter()
        .map(|record| {
            let label = record.display_label();
            let field = Field::new(record)?;
            Ok((label, field_values(&field, ct, bound)?))
        })
        .collect::<Result<_>>()?;

    let mut tainted = 0;
    let mut not_found = 0;
    let mut sum = 0u128;
    let mut included = 0usize;
    for (_, v) in &values {
        match v.get(quantity) {
            FirstPrime::Found { prime } => {
                sum += prime as u128;
                included += 1;
            }
            FirstPrime::NotFound { .. } => not_found += 1,
            FirstPrime::Tainted { .. } => tainted += 1,
        }
    }
    let empirical_mean = (included > 0).then(|| sum as f64 / included as f64);
    Ok(ScanReport {
        n,
        class: ct.clone(),
        quantity,
        bound,
        fields: values.len(),
        rows: values
            .into_iter()
            .map(|(label, v)| ScanRow {
                label,
                little_n: v.little_n,
                big_n: v.big_n,
            })
            .collect(),
        included,
        tainted,
        not_found,
        empirical_mean,
        predicted_mean,
        abs_deviation: empirical_mean.map(|m| (m - predicted_mean).abs()),
    })
}

/// Reads JSON lines; blank lines are skipped.
pub fn parse_jsonl(reader: impl BufRead) -> Result<Vec<FieldRecord>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line)
            .map_err(|e| Error::Input(format!("line {}: {e}", i + 1)))?;
        out.push(record);
    }
    Ok(out)
}

/// Reads `label,disc,c0,...,cn` rows; a header row starting with `label`
/// is skipped and an empty disc cell means unknown.
pub fn parse_csv(reader: impl Read) -> Result<Vec<FieldRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        if i == 0 && row.get(0).is_some_and(|c| c.eq_ignore_ascii_case("label")) {
            continue;
        }
        let line = i + 1;
        let bad = |what: &str| Error::Input(format!("csv row {line}: {what}"));
        if row.len() < 3 {
            return Err(bad("expected label, disc and coefficients"));
        }
        let label = Some(row[0].to_string()).filter(|s| !s.is_empty());
        let field_disc = match &row[1] {
            "" => None,
            s => Some(s.parse().map_err(|_| bad("disc is not an integer"))?),
        };
        let coeffs = row
            .iter()
            .skip(2)
            .map(|c| {
                c.parse::<i64>()
                    .map_err(|_| bad("coefficient is not an integer"))
            })
            .collect::<Result<_>>()?;
        out.push(FieldRecord {
            coeffs,
            field_disc,
            label,
        });
    }
    Ok(out)
}

/// Reads records from a file, as CSV when the extension is `.csv` and as
/// JSON lines otherwise.
pub fn read_records(path: &Path) -> Result<Vec<FieldRecord>> {
    let file = File::open(path)
        .map_err(|e| Error::Input(format!("cannot open {}: {e}", path.display())))?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        parse_csv(file)
    } else {
        parse_jsonl(BufReader::new(file))
    }
}
