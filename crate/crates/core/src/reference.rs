//! Published reference values, shipped as `data/reference_values.json`.
//!
//! Values are kept as the printed decimal strings so that "matches all
//! printed digits" can be checked against the number of digits shown.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::Statistic;
use crate::symgroup::CycleType;

const DATA: &str = include_str!("../data/reference_values.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceValue {
    pub quantity: Statistic,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// Class label in cycle notation (or a union description).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub value: String,
    pub source: String,
}

impl ReferenceValue {
    pub fn value_f64(&self) -> f64 {
        self.value
            .parse()
            .expect("reference values are decimal literals")
    }

    /// Digits printed after the decimal point.
    pub fn printed_decimals(&self) -> u32 {
        self.value
            .split_once('.')
            .map_or(0, |(_, frac)| frac.len() as u32)
    }

    /// One unit in the last printed place; a computed value matches all
    /// printed digits when it is closer than this.
    pub fn digit_tolerance(&self) -> f64 {
        10f64.powi(-(self.printed_decimals() as i32))
    }

    /// The class for single-class rows; `None` for union and classical rows.
    pub fn cycle_type(&self) -> Option<Result<CycleType>> {
        match (self.quantity, self.n, &self.class) {
            (Statistic::LittleN | Statistic::BigN, Some(n), Some(c)) => {
                Some(CycleType::parse_spec(c, n))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceTable {
    /// Per-class averages and odd-union averages, in published row order.
    pub tables: Vec<ReferenceValue>,
    pub classical: Vec<ReferenceValue>,
    pub first_prime_probabilities: Vec<ReferenceValue>,
}

impl ReferenceTable {
    pub fn get() -> &'static ReferenceTable {
        static TABLE: OnceLock<ReferenceTable> = OnceLock::new();
        TABLE.get_or_init(|| serde_json::from_str(DATA).expect("bundled reference data parses"))
    }

    /// Table rows for one statistic and degree, in published order.
    pub fn rows(&self, quantity: Statistic, n: u32) -> impl Iterator<Item = &ReferenceValue> {
        self.tables
            .iter()
            .filter(move |r| r.quantity == quantity && r.n == Some(n))
    }

    /// The row for a single class, if published.
    pub fn lookup(&self, quantity: Statistic, ct: &CycleType) -> Option<&ReferenceValue> {
        self.rows(quantity, ct.degree())
            .find(|r| r.cycle_type().and_then(|c| c.ok()).as_ref() == Some(ct))
    }

    pub fn union(&self, n: u32) -> Option<&ReferenceValue> {
        self.rows(Statistic::BigNOddUnion, n).next()
    }

    pub fn classical(&self, quantity: Statistic) -> Option<&ReferenceValue> {
        self.classical.iter().find(|r| r.quantity == quantity)
    }
}
