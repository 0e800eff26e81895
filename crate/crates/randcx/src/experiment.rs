//! Monte Carlo estimates compared against the predicted verdicts.
//!
//! Trials run in parallel but every trial owns the generator for its `(seed, trial)` pair and
//! results are collected in trial order, so records do not depend on the number of threads.
//! Cells of a sweep are processed in grid order and share the seed.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use statrs::distribution::{Binomial, DiscreteCDF};

use randcx_core::density::DEFAULT_VERTEX_CAP;
use randcx_core::embed::{contains_copy_with_budget, DEFAULT_NODE_BUDGET};
use randcx_core::prediction::{containment_verdict, predict_dimension, ExponentVector, VerdictValue};
use randcx_core::rational::{parse_rational, to_f64};
use randcx_core::sampler::{sample_trial, SamplerConfig};
use randcx_core::{AmbientContext, Complex};

use crate::error::{Error, Result};
use crate::format::rational_string;
use crate::DEFAULT_SEED;

/// Finite-n calibration of the asymptotic claims.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// A cell is strongly interior (exterior) when its binding constraint value is at most
    /// `1 − margin` (at least `1 + margin`).
    pub margin: f64,
    /// Smallest `n` at which strong cells are expected to agree with the prediction.
    pub min_n: u32,
    /// Required fraction of strong cells whose frequency lies on the predicted side of 1/2.
    pub agreement_rate: f64,
    /// Significance of the one-sided binomial test for a drop in frequency as `n` grows.
    pub trend_significance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { margin: 0.2, min_n: 500, agreement_rate: 0.95, trend_significance: 0.01 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub alpha: ExponentVector,
    pub n: u32,
    pub trials: u64,
    /// Conclusive trials in which a copy was found.
    pub contained: Option<u64>,
    /// Trials whose embedding search ran out of budget.
    pub inconclusive: u64,
    /// `contained / (trials − inconclusive)`.
    pub contain_freq: Option<f64>,
    pub dim_histogram: Option<BTreeMap<isize, u64>>,
    pub predicted: Option<String>,
    pub seed: u64,
    pub wall_time_ms: u64,
    pub error: Option<String>,
}

impl ExperimentRecord {
    fn blank(alpha: &ExponentVector, n: u32, trials: u64, seed: u64) -> Self {
        ExperimentRecord {
            alpha: alpha.clone(),
            n,
            trials,
            contained: None,
            inconclusive: 0,
            contain_freq: None,
            dim_histogram: None,
            predicted: None,
            seed,
            wall_time_ms: 0,
            error: None,
        }
    }

    /// Most frequent dimension, the smaller one on ties.
    pub fn dim_mode(&self) -> Option<isize> {
        let hist = self.dim_histogram.as_ref()?;
        hist.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(d, _)| *d)
    }

    pub fn dim_mass(&self) -> Option<f64> {
        let hist = self.dim_histogram.as_ref()?;
        let mode = self.dim_mode()?;
        Some(hist[&mode] as f64 / self.trials as f64)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha.as_slice().iter().map(rational_string).collect::<Vec<_>>(),
            "n": self.n,
            "trials": self.trials,
            "contained": self.contained,
            "inconclusive": self.inconclusive,
            "contain_freq": self.contain_freq,
            "dim_histogram": self.dim_histogram.as_ref().map(|h| {
                h.iter().map(|(d, c)| (d.to_string(), json!(c))).collect::<serde_json::Map<_, _>>()
            }),
            "dim_mode": self.dim_mode(),
            "dim_mass": self.dim_mass(),
            "predicted": self.predicted,
            "seed": self.seed,
            "wall_time_ms": self.wall_time_ms,
            "error": self.error,
        })
    }
}

fn sampler_config(alpha: &ExponentVector, n: u32, trials: u64, seed: u64) -> Result<SamplerConfig> {
    if trials == 0 {
        return Err(Error::Input("trials must be at least 1".into()));
    }
    let ctx = AmbientContext::new(n, alpha.r())?;
    Ok(SamplerConfig::new(ctx, alpha.probabilities(n)?, seed)?)
}

/// Fraction of samples of `Y_r(n, n^{-α})` containing a copy of `s`.
pub fn estimate_containment(
    s: &Complex,
    alpha: &ExponentVector,
    n: u32,
    trials: u64,
    seed: u64,
    node_budget: u64,
) -> Result<ExperimentRecord> {
    let start = Instant::now();
    if s.dim() > alpha.r() as isize {
        return Err(randcx_core::Error::DimensionCap { dim: s.dim(), r: alpha.r() }.into());
    }
    let cfg = sampler_config(alpha, n, trials, seed)?;
    let outcomes: Vec<Option<bool>> = (0..trials)
        .into_par_iter()
        .map(|t| contains_copy_with_budget(s, &sample_trial(&cfg, t), node_budget).ok())
        .collect();
    let inconclusive = outcomes.iter().filter(|o| o.is_none()).count() as u64;
    let contained = outcomes.iter().filter(|o| **o == Some(true)).count() as u64;
    let conclusive = trials - inconclusive;

    let mut record = ExperimentRecord::blank(alpha, n, trials, seed);
    record.contained = Some(contained);
    record.inconclusive = inconclusive;
    record.contain_freq = (conclusive > 0).then(|| contained as f64 / conclusive as f64);
    record.predicted = containment_verdict(s, alpha, DEFAULT_VERTEX_CAP).ok().map(|v| v.value.as_str().to_string());
    record.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(record)
}

/// Histogram of `dim Y` over samples of `Y_r(n, n^{-α})` with `r = len(α) − 1`.
pub fn estimate_dimension(alpha: &ExponentVector, n: u32, trials: u64, seed: u64) -> Result<ExperimentRecord> {
    let start = Instant::now();
    let cfg = sampler_config(alpha, n, trials, seed)?;
    let dims: Vec<isize> = (0..trials).into_par_iter().map(|t| sample_trial(&cfg, t).dim()).collect();
    let mut histogram = BTreeMap::new();
    for d in dims {
        *histogram.entry(d).or_insert(0u64) += 1;
    }
    let mut record = ExperimentRecord::blank(alpha, n, trials, seed);
    record.dim_histogram = Some(histogram);
    record.predicted = Some(predict_dimension(alpha).to_string());
    record.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(record)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Containment,
    Dimension,
}

/// Points `t · direction` for each step `t`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaySpec {
    pub direction: String,
    pub steps: Vec<String>,
}

/// An experiment file (TOML).
///
/// ```toml
/// kind = "containment"
/// complex = "corpus:s3"       # or a path relative to this file; containment only
/// alphas = ["0,1/2,3/5"]
/// n = [100, 300]
/// trials = 200
/// seed = 1
///
/// [[rays]]
/// direction = "0,1/2,3/2"
/// steps = ["0.5", "0.75", "1", "1.25"]
///
/// [tolerances]
/// margin = 0.2
/// ```
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub kind: Kind,
    pub complex: Option<String>,
    #[serde(default)]
    pub alphas: Vec<String>,
    #[serde(default)]
    pub rays: Vec<RaySpec>,
    pub n: Vec<u32>,
    pub trials: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub node_budget: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = toml::from_str(text)?;
        if spec.kind == Kind::Containment && spec.complex.is_none() {
            return Err(Error::Input("a containment experiment needs `complex`".into()));
        }
        Ok(spec)
    }

    /// Explicit `alphas` followed by the ray points, in file order.
    pub fn grid(&self) -> Result<Vec<ExponentVector>> {
        let mut grid: Vec<ExponentVector> =
            self.alphas.iter().map(|a| ExponentVector::parse(a)).collect::<randcx_core::Result<_>>()?;
        for ray in &self.rays {
            let direction = ExponentVector::parse(&ray.direction)?;
            for step in &ray.steps {
                let t = parse_rational(step)?;
                grid.push(ExponentVector::new(direction.as_slice().iter().map(|a| a * &t).collect())?);
            }
        }
        Ok(grid)
    }
}

fn check_grid(grid: &[ExponentVector], ns: &[u32]) -> Result<usize> {
    let first = grid.first().ok_or_else(|| Error::Input("the alpha grid is empty".into()))?;
    if ns.is_empty() {
        return Err(Error::Input("the list of n values is empty".into()));
    }
    if let Some(bad) = grid.iter().find(|a| a.r() != first.r()) {
        return Err(Error::Input(format!("alpha vectors differ in length: `{first}` and `{bad}`")));
    }
    Ok(first.r())
}

fn failed(alpha: &ExponentVector, n: u32, trials: u64, seed: u64, err: Error) -> ExperimentRecord {
    let mut record = ExperimentRecord::blank(alpha, n, trials, seed);
    record.error = Some(err.to_string());
    record
}

/// One containment record per `(α, n)` cell, handed to `sink` as soon as it is computed.
/// A failing cell yields a record carrying the error; the sweep continues.
pub fn threshold_sweep_with(
    s: &Complex,
    grid: &[ExponentVector],
    ns: &[u32],
    trials: u64,
    seed: u64,
    node_budget: u64,
    mut sink: impl FnMut(ExperimentRecord) -> Result<()>,
) -> Result<()> {
    check_grid(grid, ns)?;
    for alpha in grid {
        for &n in ns {
            let record = estimate_containment(s, alpha, n, trials, seed, node_budget)
                .unwrap_or_else(|e| failed(alpha, n, trials, seed, e));
            sink(record)?;
        }
    }
    Ok(())
}

pub fn threshold_sweep(
    s: &Complex,
    grid: &[ExponentVector],
    ns: &[u32],
    trials: u64,
    seed: u64,
    node_budget: u64,
) -> Result<Vec<ExperimentRecord>> {
    let mut out = Vec::new();
    threshold_sweep_with(s, grid, ns, trials, seed, node_budget, |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}

/// Dimension records over the same kind of grid.
pub fn dimension_sweep_with(
    grid: &[ExponentVector],
    ns: &[u32],
    trials: u64,
    seed: u64,
    mut sink: impl FnMut(ExperimentRecord) -> Result<()>,
) -> Result<()> {
    check_grid(grid, ns)?;
    for alpha in grid {
        for &n in ns {
            let record =
                estimate_dimension(alpha, n, trials, seed).unwrap_or_else(|e| failed(alpha, n, trials, seed, e));
            sink(record)?;
        }
    }
    Ok(())
}

/// Runs an experiment file; `complex` is required for containment experiments.
pub fn run_spec(
    spec: &ExperimentSpec,
    complex: Option<&Complex>,
    sink: impl FnMut(ExperimentRecord) -> Result<()>,
) -> Result<()> {
    let grid = spec.grid()?;
    match spec.kind {
        Kind::Containment => {
            let s = complex.ok_or_else(|| Error::Input("a containment experiment needs a complex".into()))?;
            threshold_sweep_with(s, &grid, &spec.n, spec.trials, spec.seed, spec.node_budget, sink)
        }
        Kind::Dimension => dimension_sweep_with(&grid, &spec.n, spec.trials, spec.seed, sink),
    }
}

pub fn csv_header(r: usize) -> Vec<String> {
    let mut header: Vec<String> = (0..=r).map(|i| format!("alpha_{i}")).collect();
    header.extend(
        ["n", "trials", "contain_freq", "inconclusive", "dim_mode", "dim_mass", "predicted", "seed"].map(String::from),
    );
    header
}

fn opt<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// CSV output. `alpha_i` are written as decimals; `predicted` holds `error: ...` for failed cells.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
    r: usize,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W, r: usize) -> Result<Self> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(csv_header(r))?;
        Ok(CsvSink { writer, r })
    }

    pub fn write(&mut self, record: &ExperimentRecord) -> Result<()> {
        if record.alpha.r() != self.r {
            return Err(Error::Input(format!("record has r = {} but the header has r = {}", record.alpha.r(), self.r)));
        }
        let mut row: Vec<String> = record.alpha.as_slice().iter().map(|a| to_f64(a).to_string()).collect();
        row.push(record.n.to_string());
        row.push(record.trials.to_string());
        row.push(opt(record.contain_freq));
        row.push(record.inconclusive.to_string());
        row.push(opt(record.dim_mode()));
        row.push(opt(record.dim_mass()));
        row.push(match &record.error {
            Some(e) => format!("error: {e}"),
            None => record.predicted.clone().unwrap_or_default(),
        });
        row.push(record.seed.to_string());
        self.writer.write_record(&row)?;
        Ok(())
    }

    pub fn finish(self) -> Result<W> {
        self.writer.into_inner().map_err(|e| Error::Write(e.into_error()))
    }
}

pub fn to_csv(records: &[ExperimentRecord]) -> Result<String> {
    let r = records.first().map_or(0, |rec| rec.alpha.r());
    let mut sink = CsvSink::new(Vec::new(), r)?;
    for rec in records {
        sink.write(rec)?;
    }
    Ok(String::from_utf8(sink.finish()?).expect("csv output is UTF-8"))
}

/// One JSON object per line, including the full histogram and timing.
pub fn write_jsonl<W: Write + ?Sized>(out: &mut W, record: &ExperimentRecord) -> Result<()> {
    serde_json::to_writer(&mut *out, &record.to_json())?;
    out.write_all(b"\n")?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgreementSummary {
    /// Strongly interior or exterior cells with `n ≥ min_n` and a frequency.
    pub cells: usize,
    pub agreeing: usize,
    pub passes: bool,
}

/// How often strong cells land on the predicted side of 1/2.
pub fn prediction_agreement(s: &Complex, records: &[ExperimentRecord], tol: &Tolerances) -> Result<AgreementSummary> {
    let (mut cells, mut agreeing) = (0, 0);
    for rec in records.iter().filter(|r| r.n >= tol.min_n) {
        let Some(freq) = rec.contain_freq else { continue };
        let verdict = containment_verdict(s, &rec.alpha, DEFAULT_VERTEX_CAP)?;
        let value = to_f64(&verdict.binding_value);
        let expect_contained = if value <= 1.0 - tol.margin {
            true
        } else if value >= 1.0 + tol.margin {
            false
        } else {
            continue;
        };
        cells += 1;
        if (freq > 0.5) == expect_contained {
            agreeing += 1;
        }
    }
    let passes = cells == 0 || agreeing as f64 >= tol.agreement_rate * cells as f64;
    Ok(AgreementSummary { cells, agreeing, passes })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendViolation {
    pub alpha: ExponentVector,
    pub n_small: u32,
    pub n_large: u32,
    pub p_value: f64,
}

/// For cells predicted to contain the complex, tests whether the frequency at a larger `n` is
/// significantly below the frequency at a smaller `n` (one-sided binomial test).
pub fn monotone_trend_violations(records: &[ExperimentRecord], tol: &Tolerances) -> Vec<TrendViolation> {
    let contains = VerdictValue::ContainsAas.as_str();
    let mut groups: Vec<(&ExponentVector, Vec<&ExperimentRecord>)> = Vec::new();
    for rec in records.iter().filter(|r| r.predicted.as_deref() == Some(contains) && r.contain_freq.is_some()) {
        match groups.iter_mut().find(|(a, _)| **a == rec.alpha) {
            Some((_, list)) => list.push(rec),
            None => groups.push((&rec.alpha, vec![rec])),
        }
    }
    let mut violations = Vec::new();
    for (alpha, mut list) in groups {
        list.sort_by_key(|r| r.n);
        for (i, small) in list.iter().enumerate() {
            for large in &list[i + 1..] {
                if large.n == small.n {
                    continue;
                }
                let p_small = small.contain_freq.expect("filtered");
                let conclusive = large.trials - large.inconclusive;
                let k = large.contained.unwrap_or(0);
                let p_value = Binomial::new(p_small, conclusive).map_or(1.0, |b| b.cdf(k));
                if p_value < tol.trend_significance {
                    violations.push(TrendViolation { alpha: alpha.clone(), n_small: small.n, n_large: large.n, p_value });
                }
            }
        }
    }
    violations
}
