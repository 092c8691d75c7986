// SPDX-License-Identifier: Apache-2.0

//! Cycle-count benchmark: how many cycles the sorter needs to find the
//! `n`-th extreme value, averaged over random input vectors.
//!
//! Trial `i` draws its vector from a ChaCha8 generator seeded with
//! `seed + i`, so trials are independent and may run in parallel while the
//! aggregate stays identical for a given seed.

use std::io::Write;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal, Uniform};
use rayon::prelude::*;
use serde::Serialize;

use crate::bitstream::{check_width, max_value};
use crate::error::{Error, Result};
use crate::{run_architecture, values_from, Architecture};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InputDistribution {
    /// Normal samples rounded to the nearest integer and clamped to `0..=2^M-1`.
    Gaussian { mu: f64, sigma: f64 },
    /// Uniform over `0..=2^M-1`.
    Uniform,
    /// Vectors taken from CSV rows; trial `i` uses row `i mod rows`.
    File {
        path: PathBuf,
        #[serde(skip)]
        rows: Vec<Vec<u64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub arch: Architecture,
    pub n: usize,
    pub width: u32,
    pub distribution: InputDistribution,
    pub trials: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        check_width(self.width)?;
        if self.n < 2 {
            return Err(Error::TooFewInputs(self.n));
        }
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.arch == Architecture::UnaryBatcher {
            return Err(Error::InvalidConfig(
                "the bitonic network has no per-element detection cycle to benchmark".into(),
            ));
        }
        match &self.distribution {
            InputDistribution::Gaussian { mu, sigma } => {
                if !mu.is_finite() || !sigma.is_finite() || *sigma < 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "gaussian needs finite mu and sigma >= 0, got mu={mu} sigma={sigma}"
                    )));
                }
            }
            InputDistribution::Uniform => {}
            InputDistribution::File { rows, .. } => {
                if rows.is_empty() {
                    return Err(Error::InvalidConfig("input file has no vectors".into()));
                }
                if let Some(r) = rows.iter().find(|r| r.len() != self.n) {
                    return Err(Error::InputCountMismatch {
                        expected: self.n,
                        got: r.len(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Input vector of trial `trial`.
    pub fn sample_vector(&self, trial: usize) -> Vec<u64> {
        let max = max_value(self.width);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(trial as u64));
        match &self.distribution {
            InputDistribution::Gaussian { mu, sigma } => {
                let normal = Normal::new(*mu, *sigma).expect("validated parameters");
                (0..self.n)
                    .map(|_| quantize(normal.sample(&mut rng), max))
                    .collect()
            }
            InputDistribution::Uniform => {
                let uniform = Uniform::new_inclusive(0, max);
                (0..self.n).map(|_| uniform.sample(&mut rng)).collect()
            }
            InputDistribution::File { rows, .. } => rows[trial % rows.len()].clone(),
        }
    }
}

/// Round to nearest, clamp into `0..=max`.
pub fn quantize(x: f64, max: u64) -> u64 {
    x.round().clamp(0.0, max as f64) as u64
}

/// Cycle counts of one trial, indexed by rank (0 = first value found).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialResult {
    pub input: Vec<u64>,
    /// `Elapsed_Cycle` when the rank-`k` value was detected.
    pub detect_cycle: Vec<u64>,
    /// Clock cycle in which the rank-`k` value was written out.
    pub write_cycle: Vec<u64>,
}

pub fn run_trial(cfg: &BenchConfig, trial: usize) -> Result<TrialResult> {
    let input = cfg.sample_vector(trial);
    let values = values_from(&input, cfg.width)?;
    let outcome = run_architecture(cfg.arch, &values, cfg.width)?;
    let trace = outcome.trace.expect("engine architectures produce a trace");
    let (mut detect_cycle, mut write_cycle) =
        (Vec::with_capacity(cfg.n), Vec::with_capacity(cfg.n));
    for e in trace.events() {
        if e.write.is_some() {
            detect_cycle.push(e.elapsed_cycle);
            write_cycle.push(e.cycle);
        }
    }
    Ok(TrialResult {
        input,
        detect_cycle,
        write_cycle,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchRow {
    /// 1-based rank of the extreme value.
    pub n: usize,
    pub mean_cycles: f64,
    pub std_cycles: f64,
    pub mean_write_cycle: f64,
    pub std_write_cycle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
}

fn mean_std(xs: impl Iterator<Item = u64> + Clone) -> (f64, f64) {
    let count = xs.clone().count() as f64;
    let mean = xs.clone().map(|x| x as f64).sum::<f64>() / count;
    let var = xs.map(|x| (x as f64 - mean).powi(2)).sum::<f64>() / count;
    (mean, var.sqrt())
}

/// Runs every trial and aggregates per rank. `std` is the population
/// standard deviation across trials.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..cfg.n)
        .map(|k| {
            let (mean_cycles, std_cycles) = mean_std(trials.iter().map(|t| t.detect_cycle[k]));
            let (mean_write_cycle, std_write_cycle) =
                mean_std(trials.iter().map(|t| t.write_cycle[k]));
            BenchRow {
                n: k + 1,
                mean_cycles,
                std_cycles,
                mean_write_cycle,
                std_write_cycle,
            }
        })
        .collect();
    Ok(BenchReport {
        config: cfg.clone(),
        rows,
    })
}

pub const BENCH_CSV_HEADER: [&str; 5] = [
    "n",
    "mean_cycles",
    "std_cycles",
    "mean_write_cycle",
    "std_write_cycle",
];

impl BenchReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(BENCH_CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                format!("{:.6}", r.mean_cycles),
                format!("{:.6}", r.std_cycles),
                format!("{:.6}", r.mean_write_cycle),
                format!("{:.6}", r.std_write_cycle),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Metadata sidecar: config echo, seed scheme, tool version.
    pub fn metadata(&self) -> serde_json::Value {
        serde_json::json!({
            "tool": "unisort",
            "version": env!("CARGO_PKG_VERSION"),
            "command": "bench",
            "config": self.config,
            "rng": "ChaCha8Rng (rand_chacha 0.3), trial i seeded with seed + i",
            "quantization": "round to nearest, clamp to [0, 2^M - 1]",
            "std": "population standard deviation across trials",
            "columns": BENCH_CSV_HEADER,
        })
    }
}
