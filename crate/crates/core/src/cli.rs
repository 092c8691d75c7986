// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Parsing and command logic live here so the
//! binary stays a thin wrapper and tests can drive commands in-process.
//!
//! Exit status: 0 on success, 1 on validation errors, 2 when `--check` (or
//! `compare`) finds an oracle mismatch.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::batcher::build_bitonic_network;
use crate::bench::{run_bench, BenchConfig, InputDistribution};
use crate::bitstream::{check_width, max_value, BinaryValue};
use crate::cost::{cost_table, write_cost_csv, WeightSet, GRID_M, GRID_N};
use crate::error::{Error, Result};
use crate::trace::write_traces_csv;
use crate::ung::{cfung_generate, comparator_ung_generate};
use crate::{run_architecture, values_from, Architecture};

#[derive(Debug, Parser)]
#[command(
    name = "unisort",
    version,
    about = "Comparison-free unary sorter simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the CFUNG and comparator-UNG streams for one value.
    Generate(GenerateArgs),
    /// Sort CSV vectors on one architecture and emit the cycle trace.
    Sort(SortArgs),
    /// Cycle counts to find the n-th minimum over random inputs.
    Bench(BenchArgs),
    /// Structural cost table over an (N, M) grid.
    Cost(CostArgs),
    /// Cross-check all three architectures on shared vectors.
    Compare(CompareArgs),
    /// Dump the bitonic CAS network stage list.
    Network(NetworkArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub value: u64,
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct SortArgs {
    /// CSV file, one vector per row; `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "proposed-min")]
    pub arch: Architecture,
    #[arg(long)]
    pub m: u32,
    /// Sorted CSV destination (stdout if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Cycle trace CSV destination.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Compare against a reference sort; exit 2 on mismatch.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Gaussian,
    Uniform,
    File,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "proposed-min")]
    pub arch: Architecture,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = DistKind::Gaussian)]
    pub dist: DistKind,
    /// Gaussian mean (defaults to 2^(M-1)).
    #[arg(long)]
    pub mu: Option<f64>,
    /// Gaussian standard deviation (defaults to 2^M / 8).
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vector CSV for `--dist file`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// CSV destination; a `<output>.json` metadata sidecar is written next to it.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    #[arg(long, value_delimiter = ',', default_values_t = GRID_N)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = GRID_M)]
    pub m: Vec<u32>,
    /// Seven weights: register,adder,comparator,or,encoder,mux,cas.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub m: u32,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use these vectors instead of random ones.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NetworkArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Mismatch,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Mismatch => 2,
        }
    }
}

/// Reads comma-separated unsigned integers, one vector per non-empty row.
pub fn read_vectors<R: Read>(input: R) -> Result<Vec<Vec<u64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .map(|f| {
                f.parse::<u64>().map_err(|_| {
                    Error::Parse(format!(
                        "row {}: {f:?} is not an unsigned integer",
                        line + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no input vectors".into()));
    }
    Ok(rows)
}

fn read_vectors_from(path: &Path) -> Result<Vec<Vec<u64>>> {
    if path == Path::new("-") {
        read_vectors(io::stdin().lock())
    } else {
        read_vectors(File::open(path)?)
    }
}

fn write_rows<W: Write>(out: W, rows: &[Vec<BinaryValue>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    for row in rows {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Runs `f` against the file at `path`, or against `stdout` when absent.
fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let mut file = BufWriter::new(File::create(p)?);
            f(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Generate(a) => cmd_generate(&a, stdout),
        Command::Sort(a) => cmd_sort(&a, stdout, stderr),
        Command::Bench(a) => cmd_bench(&a, stdout),
        Command::Cost(a) => cmd_cost(&a, stdout),
        Command::Compare(a) => cmd_compare(&a, stdout, stderr),
        Command::Network(a) => {
            stdout.write_all(build_bitonic_network(a.n)?.dump().as_bytes())?;
            Ok(Outcome::Success)
        }
    }
}

pub fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<Outcome> {
    let v = BinaryValue::new(a.value, a.m)?;
    let cfung = cfung_generate(v);
    let comparator = comparator_ung_generate(v);
    writeln!(out, "value {} (M={}, fraction {})", v, a.m, v.as_fraction())?;
    writeln!(
        out,
        "cfung       emission {}  written {}",
        cfung.emission_string(),
        cfung.written_form()
    )?;
    writeln!(
        out,
        "comparator  emission {}  written {}",
        comparator.emission_string(),
        comparator.written_form()
    )?;
    Ok(Outcome::Success)
}

fn reference_sort(raw: &[u64], arch: Architecture) -> Vec<u64> {
    let mut sorted = raw.to_vec();
    sorted.sort_unstable();
    if arch == Architecture::PriorMax {
        sorted.reverse();
    }
    sorted
}

pub fn cmd_sort(a: &SortArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Outcome> {
    check_width(a.m)?;
    let raw = read_vectors_from(&a.input)?;
    let mut sorted = Vec::with_capacity(raw.len());
    let mut traces = Vec::new();
    let mut outcome = Outcome::Success;
    for (i, row) in raw.iter().enumerate() {
        let values = values_from(row, a.m)?;
        let result = run_architecture(a.arch, &values, a.m)?;
        if a.check {
            let got: Vec<u64> = result.sorted.iter().map(|v| v.value() as u64).collect();
            if got != reference_sort(row, a.arch) {
                writeln!(
                    stderr,
                    "vector {i}: {} output {got:?} disagrees with reference sort",
                    a.arch
                )?;
                outcome = Outcome::Mismatch;
            }
        }
        sorted.push(result.sorted);
        traces.extend(result.trace);
    }
    with_output(a.output.as_deref(), stdout, |w| write_rows(w, &sorted))?;
    if let Some(path) = &a.trace {
        if a.arch == Architecture::UnaryBatcher {
            writeln!(
                stderr,
                "note: the bitonic network has no controller trace; {} left empty",
                path.display()
            )?;
        }
        write_traces_csv(BufWriter::new(File::create(path)?), &traces)?;
    }
    Ok(outcome)
}

pub fn bench_config(a: &BenchArgs) -> Result<BenchConfig> {
    check_width(a.m)?;
    let distribution = match a.dist {
        DistKind::Gaussian => InputDistribution::Gaussian {
            mu: a.mu.unwrap_or((1u64 << (a.m - 1)) as f64),
            sigma: a.sigma.unwrap_or((1u64 << a.m) as f64 / 8.0),
        },
        DistKind::Uniform => InputDistribution::Uniform,
        DistKind::File => {
            let path = a
                .input
                .clone()
                .ok_or_else(|| Error::InvalidConfig("--dist file needs --input".into()))?;
            let rows = read_vectors_from(&path)?;
            let max = max_value(a.m);
            if let Some(&v) = rows.iter().flatten().find(|&&v| v > max) {
                return Err(Error::ValueOutOfRange {
                    value: v,
                    width: a.m,
                });
            }
            InputDistribution::File { path, rows }
        }
    };
    let cfg = BenchConfig {
        arch: a.arch,
        n: a.n,
        width: a.m,
        distribution,
        trials: a.trials,
        seed: a.seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_bench(a: &BenchArgs, stdout: &mut dyn Write) -> Result<Outcome> {
    let report = run_bench(&bench_config(a)?)?;
    with_output(a.output.as_deref(), stdout, |w| report.write_csv(w))?;
    if let Some(path) = &a.output {
        let mut sidecar = path.clone().into_os_string();
        sidecar.push(".json");
        let mut f = BufWriter::new(File::create(sidecar)?);
        serde_json::to_writer_pretty(&mut f, &report.metadata())?;
        writeln!(f)?;
    }
    Ok(Outcome::Success)
}

pub fn cmd_cost(a: &CostArgs, stdout: &mut dyn Write) -> Result<Outcome> {
    let weights =
        match &a.weights {
            Some(w) => WeightSet::from_array(w.as_slice().try_into().map_err(|_| {
                Error::InvalidConfig("--weights takes exactly seven values".into())
            })?)?,
            None => WeightSet::default(),
        };
    let rows = cost_table(&a.n, &a.m, &weights)?;
    with_output(a.output.as_deref(), stdout, |w| write_cost_csv(w, &rows))?;
    Ok(Outcome::Success)
}

pub fn cmd_compare(
    a: &CompareArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<Outcome> {
    check_width(a.m)?;
    let vectors = match &a.input {
        Some(path) => read_vectors_from(path)?,
        None => {
            let max = max_value(a.m);
            (0..a.trials)
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(a.seed.wrapping_add(t as u64));
                    (0..a.n).map(|_| rng.gen_range(0..=max)).collect()
                })
                .collect()
        }
    };
    let mut mismatches = 0usize;
    let mut rows = Vec::with_capacity(vectors.len());
    for (i, raw) in vectors.iter().enumerate() {
        let values = values_from(raw, a.m)?;
        let asc = run_architecture(Architecture::ProposedMin, &values, a.m)?.sorted;
        let mut desc = run_architecture(Architecture::PriorMax, &values, a.m)?.sorted;
        desc.reverse();
        let net = if raw.len().is_power_of_two() {
            Some(run_architecture(Architecture::UnaryBatcher, &values, a.m)?.sorted)
        } else {
            None
        };
        let max_ok = desc == asc;
        let net_ok = net.as_ref().map(|n| *n == asc);
        if !max_ok || net_ok == Some(false) {
            mismatches += 1;
            writeln!(stderr, "vector {i}: architectures disagree on {raw:?}")?;
        }
        rows.push((i, max_ok, net_ok));
    }
    with_output(a.output.as_deref(), stdout, |out| {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["vector", "prior_max_agrees", "unary_batcher_agrees"])?;
        for (i, max_ok, net_ok) in &rows {
            w.write_record([
                i.to_string(),
                max_ok.to_string(),
                net_ok
                    .map(|b| b.to_string())
                    .unwrap_or_else(|| "n/a".into()),
            ])?;
        }
        w.flush()?;
        Ok(())
    })?;
    writeln!(
        stderr,
        "compared {} vectors, {mismatches} mismatches",
        vectors.len()
    )?;
    Ok(if mismatches == 0 {
        Outcome::Success
    } else {
        Outcome::Mismatch
    })
}
