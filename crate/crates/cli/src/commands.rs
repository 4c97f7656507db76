use std::borrow::Cow;
use std::io::Write;

use leastprime::frobscan::{self, FieldRecord, ScanReport};
use leastprime::localmodel::{LocalModel, ModelDump};
use leastprime::montecarlo::{self, McEstimate};
use leastprime::primes::{is_prime, PrimeTable};
use leastprime::quadratic::{self, QuadraticQuantity, QuadraticReport, Sign};
use leastprime::reference::{ReferenceTable, ReferenceValue};
use leastprime::series::{first_hit_expectation, StandardModel};
use leastprime::{CycleType, Series64, Statistic};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{
    Cli, Command, ConstantsArgs, Format, ModelCommand, MonteCarloArgs, QuadraticArgs, ScanArgs,
};
use crate::format::{num, opt_num, Table};
use crate::CliError;

type Result<T, E = CliError> = std::result::Result<T, E>;

/// One row of `constants --all`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub quantity: Statistic,
    pub n: Option<u32>,
    pub class: Option<String>,
    pub value: f64,
    pub terms_used: usize,
    pub last_prime: u64,
    pub tail_estimate: f64,
    /// Published value as printed.
    pub reference: Option<String>,
    pub abs_diff: Option<f64>,
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub eps: f64,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub quantity: Statistic,
    pub n: Option<u32>,
    pub class: Option<CycleType>,
    pub estimate: McEstimate,
    pub series: f64,
    /// (estimate - series) / standard error, zero when the error is zero.
    pub z_score: f64,
}

/// A fully validated invocation.
pub struct Plan {
    format: Format,
    sieve_limit: u64,
    action: Action,
}

enum Action {
    Constant {
        stat: Statistic,
        n: Option<u32>,
        ct: Option<CycleType>,
        eps: f64,
    },
    Table {
        stat: Option<Statistic>,
        n: Option<u32>,
        eps: f64,
    },
    Scan {
        records: Vec<FieldRecord>,
        ct: CycleType,
        stat: Statistic,
        bound: u64,
    },
    Quadratic {
        x: u64,
        sign: Sign,
        quantity: QuadraticQuantity,
    },
    MonteCarlo {
        stat: Statistic,
        n: Option<u32>,
        ct: Option<CycleType>,
        samples: u64,
        seed: u64,
    },
    Model {
        n: u32,
        p: u64,
    },
}

pub enum Report {
    Series {
        stat: Statistic,
        n: Option<u32>,
        ct: Option<CycleType>,
        result: Series64,
    },
    Table(TableReport),
    Scan(ScanReport),
    Quadratic(QuadraticReport),
    MonteCarlo(MonteCarloReport),
    Model(ModelDump),
}

fn parse_degree(n: u32) -> Result<u32> {
    LocalModel::new(n)
        .map(|m| m.degree())
        .map_err(CliError::usage)
}

fn parse_quantity(text: &str) -> Result<Statistic> {
    text.parse().map_err(CliError::usage)
}

/// Degree and class as required by `stat`; extra flags are rejected.
fn stat_inputs(
    stat: Statistic,
    n: Option<u32>,
    class: Option<&str>,
) -> Result<(Option<u32>, Option<CycleType>)> {
    if !stat.needs_degree() {
        if n.is_some() || class.is_some() {
            return Err(CliError::Usage(format!(
                "{stat} takes neither --n nor --class"
            )));
        }
        return Ok((None, None));
    }
    let n = parse_degree(n.ok_or_else(|| CliError::Usage(format!("{stat} needs --n")))?)?;
    if !stat.needs_class() {
        if class.is_some() {
            return Err(CliError::Usage(format!("{stat} takes no --class")));
        }
        return Ok((Some(n), None));
    }
    let spec = class.ok_or_else(|| CliError::Usage(format!("{stat} needs --class")))?;
    let ct = CycleType::parse_spec(spec, n).map_err(CliError::usage)?;
    Ok((Some(n), Some(ct)))
}

/// Smallest degree a class spec can live in: the sum of a parts list, or
/// the largest point in cycle notation.
fn implied_degree(spec: &str) -> Option<u32> {
    let numbers = || {
        spec.split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<u32>().ok())
    };
    if spec.contains('(') {
        spec.chars().filter_map(|c| c.to_digit(10)).max()
    } else {
        Some(numbers().sum()).filter(|&s| s > 0)
    }
}

impl Plan {
    pub fn validate(cli: Cli) -> Result<Plan> {
        if cli.sieve_limit < 100 {
            return Err(CliError::Usage("--sieve-limit must be at least 100".into()));
        }
        let action = match cli.command {
            Command::Constants(args) => constants_action(args)?,
            Command::Scan(args) => scan_action(args)?,
            Command::Quadratic(QuadraticArgs { x, sign, quantity }) => {
                if x < 3 {
                    return Err(CliError::Usage("--x must be at least 3".into()));
                }
                Action::Quadratic {
                    x,
                    sign: sign.parse().map_err(CliError::usage)?,
                    quantity: quantity.parse().map_err(CliError::usage)?,
                }
            }
            Command::Montecarlo(MonteCarloArgs {
                n,
                class,
                quantity,
                samples,
                seed,
            }) => {
                let stat = parse_quantity(&quantity)?;
                let (n, ct) = stat_inputs(stat, n, class.as_deref())?;
                if samples == 0 {
                    return Err(CliError::Usage("--samples must be positive".into()));
                }
                Action::MonteCarlo {
                    stat,
                    n,
                    ct,
                    samples,
                    seed,
                }
            }
            Command::Model(ModelCommand::Dump { n, p }) => {
                let n = parse_degree(n)?;
                if !is_prime(p) {
                    return Err(CliError::Usage(format!("--p {p} is not prime")));
                }
                Action::Model { n, p }
            }
        };
        Ok(Plan {
            format: cli.format,
            sieve_limit: cli.sieve_limit,
            action,
        })
    }

    pub fn format(&self) -> Format {
        self.format
    }

    fn primes(&self) -> Cow<'static, PrimeTable> {
        let shared = PrimeTable::shared();
        if self.sieve_limit == shared.limit() {
            Cow::Borrowed(shared)
        } else {
            Cow::Owned(PrimeTable::new(self.sieve_limit))
        }
    }

    pub fn compute(&self) -> Result<Report> {
        let report = match &self.action {
            Action::Constant { stat, n, ct, eps } => Report::Series {
                stat: *stat,
                n: *n,
                ct: ct.clone(),
                result: series(*stat, *n, ct.as_ref(), *eps, &self.primes())?,
            },
            Action::Table { stat, n, eps } => {
                Report::Table(table(*stat, *n, *eps, &self.primes())?)
            }
            Action::Scan {
                records,
                ct,
                stat,
                bound,
            } => Report::Scan(frobscan::aggregate_scan(
                records.clone(),
                ct,
                *stat,
                *bound,
            )?),
            Action::Quadratic { x, sign, quantity } => {
                Report::Quadratic(quadratic::quadratic_averages(*x, *sign, *quantity)?)
            }
            Action::MonteCarlo {
                stat,
                n,
                ct,
                samples,
                seed,
            } => {
                let primes = self.primes();
                let model = StandardModel::for_statistic(*stat, n.unwrap_or(0), ct.as_ref())?;
                let estimate = montecarlo::estimate_model(&model, *samples, *seed, &primes)?;
                let series: Series64 =
                    first_hit_expectation(&model, leastprime::series::DEFAULT_EPS, &primes)?;
                let z_score = if estimate.std_error > 0.0 {
                    (estimate.mean - series.value) / estimate.std_error
                } else {
                    0.0
                };
                Report::MonteCarlo(MonteCarloReport {
                    quantity: *stat,
                    n: *n,
                    class: ct.clone(),
                    estimate,
                    series: series.value,
                    z_score,
                })
            }
            Action::Model { n, p } => Report::Model(LocalModel::new(*n)?.dump(*p)),
        };
        Ok(report)
    }
}

fn constants_action(args: ConstantsArgs) -> Result<Action> {
    if !(args.eps > 0.0 && args.eps.is_finite()) {
        return Err(CliError::Usage(format!(
            "--eps must be positive (got {})",
            args.eps
        )));
    }
    if args.all {
        if args.class.is_some() {
            return Err(CliError::Usage(
                "--all lists every class; drop --class".into(),
            ));
        }
        let stat = args.quantity.as_deref().map(parse_quantity).transpose()?;
        let n = args.n.map(parse_degree).transpose()?;
        if let (Some(stat), Some(_)) = (stat, n) {
            if !stat.needs_degree() {
                return Err(CliError::Usage(format!("{stat} takes no --n")));
            }
        }
        return Ok(Action::Table {
            stat,
            n,
            eps: args.eps,
        });
    }
    let quantity = args
        .quantity
        .ok_or_else(|| CliError::Usage("constants needs --quantity (or --all)".into()))?;
    let stat = parse_quantity(&quantity)?;
    let (n, ct) = stat_inputs(stat, args.n, args.class.as_deref())?;
    Ok(Action::Constant {
        stat,
        n,
        ct,
        eps: args.eps,
    })
}

fn scan_action(args: ScanArgs) -> Result<Action> {
    let stat = parse_quantity(&args.quantity)?;
    if !matches!(stat, Statistic::LittleN | Statistic::BigN) {
        return Err(CliError::Usage(format!(
            "scan supports little-n and big-N, not {stat}"
        )));
    }
    if args.bound < 2 {
        return Err(CliError::Usage("--bound must be at least 2".into()));
    }
    let records = frobscan::read_records(&args.input)?;
    let n = match (args.n, records.first()) {
        (Some(n), _) => n,
        (None, Some(rec)) => rec.degree() as u32,
        (None, None) => implied_degree(&args.class)
            .ok_or_else(|| CliError::Usage("empty input: pass --n to fix the degree".into()))?,
    };
    let n = parse_degree(n)?;
    let ct = CycleType::parse_spec(&args.class, n).map_err(CliError::usage)?;
    Ok(Action::Scan {
        records,
        ct,
        stat,
        bound: args.bound,
    })
}

fn series(
    stat: Statistic,
    n: Option<u32>,
    ct: Option<&CycleType>,
    eps: f64,
    primes: &PrimeTable,
) -> Result<Series64> {
    let model = StandardModel::for_statistic(stat, n.unwrap_or(0), ct)?;
    Ok(first_hit_expectation(&model, eps, primes)?)
}

fn table(
    stat: Option<Statistic>,
    n: Option<u32>,
    eps: f64,
    primes: &PrimeTable,
) -> Result<TableReport> {
    let reference = ReferenceTable::get();
    let wanted = |r: &&ReferenceValue| {
        stat.is_none_or(|s| r.quantity == s) && n.is_none_or(|n| r.n == Some(n))
    };
    let mut selected: Vec<&ReferenceValue> = reference.tables.iter().filter(wanted).collect();
    if n.is_none() {
        selected.extend(
            reference
                .classical
                .iter()
                .filter(|r| stat.is_none_or(|s| r.quantity == s)),
        );
    }
    let rows = selected
        .into_par_iter()
        .map(|r| {
            let ct = r.cycle_type().transpose()?;
            let result = series(r.quantity, r.n, ct.as_ref(), eps, primes)?;
            Ok(TableRow {
                quantity: r.quantity,
                n: r.n,
                class: r.class.clone(),
                value: result.value,
                terms_used: result.terms_used,
                last_prime: result.last_prime,
                tail_estimate: result.tail_estimate,
                reference: Some(r.value.clone()),
                abs_diff: Some((result.value - r.value_f64()).abs()),
                source: Some(r.source.clone()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport { eps, rows })
}

fn key_values(pairs: Vec<(&str, String)>) -> Table {
    let mut t = Table::new(pairs.iter().map(|(k, _)| *k));
    t.row(pairs.into_iter().map(|(_, v)| v));
    t
}

fn vertical(pairs: Vec<(&str, String)>) -> Table {
    let mut t = Table::new(["field", "value"]);
    for (k, v) in pairs {
        t.row([k.to_string(), v]);
    }
    t
}

fn label_of(n: Option<u32>, ct: Option<&CycleType>) -> (String, String) {
    (
        n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
        ct.map(|c| c.representative()).unwrap_or_else(|| "-".into()),
    )
}

impl Report {
    fn json(&self) -> Result<String> {
        Ok(match self {
            Report::Series { result, .. } => serde_json::to_string_pretty(result)?,
            Report::Table(r) => serde_json::to_string_pretty(r)?,
            Report::Scan(r) => serde_json::to_string_pretty(r)?,
            Report::Quadratic(r) => serde_json::to_string_pretty(r)?,
            Report::MonteCarlo(r) => serde_json::to_string_pretty(r)?,
            Report::Model(r) => serde_json::to_string_pretty(r)?,
        })
    }

    /// The report as one or more text tables, in order.
    fn tables(&self) -> Vec<Table> {
        match self {
            Report::Series {
                stat,
                n,
                ct,
                result,
            } => {
                let (n, class) = label_of(*n, ct.as_ref());
                vec![key_values(vec![
                    ("quantity", stat.to_string()),
                    ("n", n),
                    ("class", class),
                    ("value", num(result.value)),
                    ("terms_used", result.terms_used.to_string()),
                    ("last_prime", result.last_prime.to_string()),
                    ("tail_estimate", num(result.tail_estimate)),
                    ("requested_eps", num(result.requested_eps)),
                ])]
            }
            Report::Table(report) => {
                let mut t = Table::new([
                    "quantity",
                    "n",
                    "class",
                    "value",
                    "reference",
                    "abs_diff",
                    "terms_used",
                ]);
                for row in &report.rows {
                    t.row([
                        row.quantity.to_string(),
                        row.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                        row.class.clone().unwrap_or_else(|| "-".into()),
                        num(row.value),
                        row.reference.clone().unwrap_or_else(|| "-".into()),
                        opt_num(row.abs_diff),
                        row.terms_used.to_string(),
                    ]);
                }
                vec![t]
            }
            Report::Scan(report) => {
                let mut rows = Table::new(["label", "little-n", "big-N"]);
                for row in &report.rows {
                    rows.row([
                        row.label.clone(),
                        row.little_n.to_string(),
                        row.big_n.to_string(),
                    ]);
                }
                let summary = vertical(vec![
                    ("quantity", report.quantity.to_string()),
                    ("n", report.n.to_string()),
                    ("class", report.class.representative()),
                    ("bound", report.bound.to_string()),
                    ("fields", report.fields.to_string()),
                    ("included", report.included.to_string()),
                    ("tainted", report.tainted.to_string()),
                    ("not_found", report.not_found.to_string()),
                    ("empirical_mean", opt_num(report.empirical_mean)),
                    ("predicted_mean", num(report.predicted_mean)),
                    ("abs_deviation", opt_num(report.abs_deviation)),
                ]);
                vec![rows, summary]
            }
            Report::Quadratic(r) => vec![key_values(vec![
                ("quantity", r.quantity.to_string()),
                ("x", r.x.to_string()),
                ("sign", r.sign.to_string()),
                ("count", r.count.to_string()),
                ("mean", opt_num(r.mean)),
                ("predicted", num(r.predicted)),
                (
                    "abs_deviation",
                    opt_num(r.mean.map(|m| (m - r.predicted).abs())),
                ),
            ])],
            Report::MonteCarlo(r) => {
                let (n, class) = label_of(r.n, r.class.as_ref());
                vec![key_values(vec![
                    ("quantity", r.quantity.to_string()),
                    ("n", n),
                    ("class", class),
                    ("samples", r.estimate.samples.to_string()),
                    ("seed", r.estimate.seed.to_string()),
                    ("mean", num(r.estimate.mean)),
                    ("std_error", num(r.estimate.std_error)),
                    ("series", num(r.series)),
                    ("z_score", num(r.z_score)),
                ])]
            }
            Report::Model(dump) => {
                let mut t = Table::new(["kind", "label", "exact", "value"]);
                t.row(["f(p)".to_string(), "-".into(), dump.f.clone(), "-".into()]);
                for (kind, rows) in [
                    ("unramified", &dump.unramified),
                    ("ramified", &dump.ramified),
                ] {
                    for row in rows {
                        t.row([
                            kind.to_string(),
                            row.label.clone(),
                            row.exact.clone(),
                            num(row.value),
                        ]);
                    }
                }
                vec![t]
            }
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.json()?)?,
            Format::Table => {
                for (i, t) in self.tables().iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    t.write_table(out)?;
                }
            }
            Format::Csv => {
                if let Some(t) = self.tables().first() {
                    t.write_csv(out)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implied_degrees() {
        assert_eq!(implied_degree("2,1"), Some(3));
        assert_eq!(implied_degree("(12)(345)"), Some(5));
        assert_eq!(implied_degree("e"), None);
    }
}
