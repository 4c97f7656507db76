//! Local probability model for S_n-fields, n = 3, 4, 5.
//!
//! At a prime p, a random S_n-field is unramified with Frobenius class C with
//! probability `(|C|/n!) / (1 + f(p))`, or ramified with splitting type r_i
//! with probability `c_i(p) / (1 + f(p))`, where `sum_i c_i(p) = f(p)`. Both
//! f and each c_i are short polynomials in 1/p with rational coefficients,
//! stored exactly and evaluated in any [`Scalar`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symgroup::{class_density, cycle_types, CycleType};

/// Term `numer/denom * p^-power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct InvPowerTerm {
    numer: i64,
    denom: u64,
    power: u32,
}

const fn term(numer: i64, denom: u64, power: u32) -> InvPowerTerm {
    InvPowerTerm {
        numer,
        denom,
        power,
    }
}

/// A ramified splitting type with its weight `c(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RamifiedType {
    /// e.g. `"1^2 1"`: a ramified degree-1 prime squared times an unramified
    /// degree-1 prime.
    pub label: &'static str,
    weight: InvPowerTerm,
}

impl RamifiedType {
    /// c(p) for this splitting type.
    pub fn weight<T: Scalar>(&self, p: u64) -> T {
        eval_terms(&[self.weight], p)
    }
}

const fn ram(label: &'static str, numer: i64, denom: u64, power: u32) -> RamifiedType {
    RamifiedType {
        label,
        weight: term(numer, denom, power),
    }
}

const CUBIC_F: [InvPowerTerm; 2] = [term(1, 1, 1), term(1, 1, 2)];
const QUARTIC_F: [InvPowerTerm; 3] = [term(1, 1, 1), term(2, 1, 2), term(1, 1, 3)];
const QUINTIC_F: [InvPowerTerm; 4] = [term(1, 1, 1), term(2, 1, 2), term(2, 1, 3), term(1, 1, 4)];

const CUBIC_RAMIFIED: [RamifiedType; 2] = [ram("1^2 1", 1, 1, 1), ram("1^3", 1, 1, 2)];

const QUARTIC_RAMIFIED: [RamifiedType; 6] = [
    ram("1^2 1 1", 1, 2, 1),
    ram("1^2 2", 1, 2, 1),
    ram("1^2 1^2", 1, 2, 2),
    ram("2^2", 1, 2, 2),
    ram("1^3 1", 1, 1, 2),
    ram("1^4", 1, 1, 3),
];

const QUINTIC_RAMIFIED: [RamifiedType; 10] = [
    ram("1^2 1 1 1", 1, 6, 1),
    ram("1^2 1 2", 1, 2, 1),
    ram("1^2 3", 1, 3, 1),
    ram("1^2 1^2 1", 1, 2, 2),
    ram("2^2 1", 1, 2, 2),
    ram("1^3 1 1", 1, 2, 2),
    ram("1^3 2", 1, 2, 2),
    ram("1^3 1^2", 1, 1, 3),
    ram("1^4 1", 1, 1, 3),
    ram("1^5", 1, 1, 4),
];

fn eval_terms<T: Scalar>(terms: &[InvPowerTerm], p: u64) -> T {
    let inv_p = T::from_u64(p).recip();
    terms.iter().fold(T::zero(), |acc, t| {
        let mut v = T::from_ratio(t.numer, t.denom);
        for _ in 0..t.power {
            v = v * inv_p.clone();
        }
        acc + v
    })
}

/// The closed table for one degree.
#[derive(Debug, Clone, Copy)]
pub struct LocalModel {
    n: u32,
    f_terms: &'static [InvPowerTerm],
    ramified: &'static [RamifiedType],
}

impl LocalModel {
    pub fn new(n: u32) -> Result<Self> {
        let (f_terms, ramified): (&'static [InvPowerTerm], &'static [RamifiedType]) = match n {
            3 => (&CUBIC_F, &CUBIC_RAMIFIED),
            4 => (&QUARTIC_F, &QUARTIC_RAMIFIED),
            5 => (&QUINTIC_F, &QUINTIC_RAMIFIED),
            _ => return Err(Error::UnsupportedDegree(n)),
        };
        Ok(LocalModel {
            n,
            f_terms,
            ramified,
        })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn ramified_types(&self) -> &'static [RamifiedType] {
        self.ramified
    }

    /// Ramified mass f(p).
    pub fn f<T: Scalar>(&self, p: u64) -> T {
        eval_terms(self.f_terms, p)
    }

    fn normalizer<T: Scalar>(&self, p: u64) -> T {
        T::one() + self.f(p)
    }

    pub fn unramified_density<T: Scalar>(&self, p: u64, ct: &CycleType) -> Result<T> {
        self.check_class(ct)?;
        Ok(class_density(ct).to_scalar::<T>() / self.normalizer(p))
    }

    pub fn ramified_density_total<T: Scalar>(&self, p: u64) -> T {
        self.f::<T>(p) / self.normalizer(p)
    }

    /// Per-type ramified densities, in table order.
    pub fn ramified_densities<T: Scalar>(&self, p: u64) -> Vec<(&'static str, T)> {
        let norm: T = self.normalizer(p);
        self.ramified
            .iter()
            .map(|r| (r.label, r.weight::<T>(p) / norm.clone()))
            .collect()
    }

    fn check_class(&self, ct: &CycleType) -> Result<()> {
        if ct.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: ct.degree(),
            });
        }
        Ok(())
    }

    /// Full density table at p in exact and floating form.
    pub fn dump(&self, p: u64) -> ModelDump {
        use crate::Exact;
        let row = |label: String, v: Exact| DensityRow {
            label,
            exact: format!("{}/{}", v.numer(), v.denom()),
            value: v.as_f64(),
        };
        let unramified = cycle_types(self.n)
            .expect("n >= 3")
            .into_iter()
            .map(|ct| {
                let v: Exact = self.unramified_density(p, &ct).expect("same degree");
                row(ct.representative(), v)
            })
            .collect();
        let ramified = self
            .ramified_densities::<Exact>(p)
            .into_iter()
            .map(|(label, v)| row(label.to_string(), v))
            .collect();
        let f: Exact = self.f(p);
        ModelDump {
            n: self.n,
            p,
            f: row("f".into(), f).exact,
            unramified,
            ramified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub label: String,
    pub exact: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDump {
    pub n: u32,
    pub p: u64,
    pub f: String,
    pub unramified: Vec<DensityRow>,
    pub ramified: Vec<DensityRow>,
}

pub fn f<T: Scalar>(n: u32, p: u64) -> Result<T> {
    Ok(LocalModel::new(n)?.f(p))
}

pub fn unramified_density<T: Scalar>(n: u32, p: u64, ct: &CycleType) -> Result<T> {
    LocalModel::new(n)?.unramified_density(p, ct)
}

pub fn ramified_density_total<T: Scalar>(n: u32, p: u64) -> Result<T> {
    Ok(LocalModel::new(n)?.ramified_density_total(p))
}

pub fn ramified_densities<T: Scalar>(n: u32, p: u64) -> Result<Vec<(&'static str, T)>> {
    Ok(LocalModel::new(n)?.ramified_densities(p))
}
