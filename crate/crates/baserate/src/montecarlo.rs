//! Seeded simulation of a population screened by an imperfect detector.
//!
//! This is the frequentist cross-check on the closed forms: each case draws
//! its damage state from the base rate, then its detection outcome from the
//! conditional rate for that state, and the tallied cells converge to the
//! expected-count formulas as the population grows.
//!
//! Reproducibility is the whole point of the module, so the random stream for
//! a case is a pure function of `(seed, case index)`: every case gets its own
//! counter-mode stream of one shared generator. Chunking and thread count
//! influence scheduling only, never the outcome.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decimal::sig9;
use crate::error::{Error, Result};
use crate::metrics::{metrics, ConfusionCounts, DetectorProfile, MetricsReport, Population};
use crate::num::max_exact_count;

/// Identifier of the random stream construction. Recorded in golden files
/// because tallies are only comparable under the same generator.
pub const GENERATOR: &str = "chacha8-stream-per-case";

/// A fully determined simulation: detector, population, seed and chunking.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimulationConfig {
    profile: DetectorProfile<f64>,
    population: Population<f64>,
    seed: u64,
    chunk_size: u64,
}

impl SimulationConfig {
    /// Cases handed to a worker at a time. Large enough to amortize
    /// scheduling, small enough to balance load.
    pub const DEFAULT_CHUNK_SIZE: u64 = 65536;

    pub fn new(profile: DetectorProfile<f64>, population: Population<f64>, seed: u64) -> Self {
        Self {
            profile,
            population,
            seed,
            chunk_size: Self::DEFAULT_CHUNK_SIZE,
        }
    }

    /// Overrides the scheduling granularity. Results never depend on it.
    pub fn with_chunk_size(mut self, chunk_size: u64) -> Result<Self> {
        if chunk_size == 0 {
            return Err(Error::ZeroChunkSize);
        }
        self.chunk_size = chunk_size;
        Ok(self)
    }

    pub fn profile(&self) -> &DetectorProfile<f64> {
        &self.profile
    }

    pub fn population(&self) -> &Population<f64> {
        &self.population
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chunk_size(&self) -> u64 {
        self.chunk_size
    }
}

/// Realized tallies with the metrics they imply.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimulationResult {
    pub counts: ConfusionCounts<f64>,
    pub empirical_metrics: MetricsReport<f64>,
    /// Binomial standard error of the empirical precision,
    /// `sqrt(p*(1-p) / alarms)`; `None` when nothing was flagged.
    pub standard_error_precision: Option<f64>,
    /// Seed echoed back so a result names its own reproduction recipe.
    pub seed: u64,
}

/// Runs the simulation described by `config`.
///
/// Each case draws two uniforms from its own stream, one for the damage
/// state and one for the detection outcome, keeping the two conditional
/// rates independently auditable. Identical configs produce identical
/// results whatever the chunk size or worker count.
///
/// Rejects populations beyond the largest exactly representable tally
/// rather than letting cells round.
pub fn simulate(config: &SimulationConfig) -> Result<SimulationResult> {
    let n = config.population.size();
    let max = max_exact_count::<f64>();
    if n > max {
        return Err(Error::PopulationTooLarge { size: n, max });
    }
    let b = config.population.base_rate().get();
    let tpr = config.profile.tpr();
    let fpr = config.profile.fpr();
    let base = ChaCha8Rng::seed_from_u64(config.seed);

    let chunks = n.div_ceil(config.chunk_size);
    let [tp, fn_, fp, tn] = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * config.chunk_size;
            let end = (start + config.chunk_size).min(n);
            let mut cells = [0u64; 4];
            for case in start..end {
                let mut rng = base.clone();
                rng.set_stream(case);
                let damaged = rng.random::<f64>() < b;
                let threshold = if damaged { tpr } else { fpr };
                let flagged = rng.random::<f64>() < threshold;
                let cell = match (damaged, flagged) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                cells[cell] += 1;
            }
            cells
        })
        .reduce(
            || [0u64; 4],
            |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
        );

    let counts: ConfusionCounts<f64> = ConfusionCounts::empirical(tp, fn_, fp, tn)
        .expect("cells sum to n, which fits the exact integer range");
    let empirical_metrics = counts.metrics();
    let alarms = (tp + fp) as f64;
    let standard_error_precision = empirical_metrics
        .precision
        .map(|p| (p * (1.0 - p) / alarms).sqrt());
    Ok(SimulationResult {
        counts,
        empirical_metrics,
        standard_error_precision,
        seed: config.seed,
    })
}

/// One scale step of a convergence study.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub empirical_precision: Option<f64>,
    pub closed_form_precision: Option<f64>,
    pub abs_error: Option<f64>,
}

/// Empirical precision against the closed form across population sizes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,empirical_precision,closed_form_precision,abs_error\n");
        let opt = |v: Option<f64>| v.map(sig9).unwrap_or_default();
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                opt(row.empirical_precision),
                opt(row.closed_form_precision),
                opt(row.abs_error),
            ));
        }
        out
    }
}

impl core::fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let opt = |v: Option<f64>| v.map(sig9).unwrap_or_else(|| "undefined".to_string());
        writeln!(
            f,
            "{:>12}  {:>20}  {:>22}  {:>12}",
            "n", "empirical_precision", "closed_form_precision", "abs_error"
        )?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>12}  {:>20}  {:>22}  {:>12}",
                row.n,
                opt(row.empirical_precision),
                opt(row.closed_form_precision),
                opt(row.abs_error),
            )?;
        }
        Ok(())
    }
}

/// Simulates the same configuration at each size in `n_grid` and tabulates
/// empirical precision against the closed form.
///
/// Sizes must be nonempty and strictly ascending. The closed-form column is
/// constant by construction; only the empirical column moves with n.
pub fn convergence_report(config: &SimulationConfig, n_grid: &[u64]) -> Result<ConvergenceReport> {
    if n_grid.is_empty() || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedGrid { name: "n_grid" });
    }
    let closed_form_precision = metrics(&config.profile, config.population.base_rate()).precision;
    let mut rows = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let population = Population::new(config.population.base_rate().get(), n)
            .expect("base rate already validated");
        let scaled =
            SimulationConfig::new(config.profile, population, config.seed).with_chunk_size(
                config.chunk_size,
            )?;
        let result = simulate(&scaled)?;
        let empirical_precision = result.empirical_metrics.precision;
        rows.push(ConvergenceRow {
            n,
            empirical_precision,
            closed_form_precision,
            abs_error: empirical_precision
                .zip(closed_form_precision)
                .map(|(e, c)| (e - c).abs()),
        });
    }
    Ok(ConvergenceReport { rows })
}

/// CSV snapshot of a simulation: a header row naming every input the tallies
/// depend on (seed, generator, rates, size, chunking), then the cells.
pub fn golden_csv(config: &SimulationConfig, result: &SimulationResult) -> String {
    let (tp, fn_, fp, tn) = result.counts.cells();
    let cell = |v: f64| (v as u64).to_string();
    format!(
        "seed,generator,tpr,fpr,base_rate,n,chunk_size,tp,fn,fp,tn\n{},{},{},{},{},{},{},{},{},{},{}\n",
        config.seed,
        GENERATOR,
        sig9(config.profile.tpr()),
        sig9(config.profile.fpr()),
        sig9(config.population.base_rate().get()),
        config.population.size(),
        config.chunk_size,
        cell(tp),
        cell(fn_),
        cell(fp),
        cell(tn),
    )
}
