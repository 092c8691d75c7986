// SPDX-License-Identifier: Apache-2.0

//! Cycle-accurate, bit-true models of comparison-free unary sorting hardware.
//!
//! * [`ung`]: the two-state FSM unary number generator (CFUNG) and the
//!   counter/comparator generator it replaces.
//! * [`sorter_min`]: the ascending-order sorter that finds the minimum by
//!   watching for the first 0 in right-aligned streams.
//! * [`sorter_max`]: the descending-order baseline that finds the maximum by
//!   the first 1 under a shared down counter.
//! * [`batcher`]: unary bitonic CAS networks.
//! * [`cost`]: a structural resource model for relative cost trends.
//! * [`bench`] and [`cli`]: the cycle-count benchmark harness and the
//!   command-line front end.

use std::fmt;
use std::str::FromStr;

pub mod batcher;
pub mod bench;
pub mod bitstream;
pub mod cli;
pub mod cost;
pub mod engine;
pub mod error;
pub mod sorter_max;
pub mod sorter_min;
pub mod trace;
pub mod ung;

pub use bitstream::{BinaryValue, UnaryStream};
pub use engine::SorterConfig;
pub use error::{Error, Result};
pub use trace::CycleTrace;

/// Sorter architectures modelled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Architecture {
    /// CFUNG bank, minimum-first, ascending output.
    ProposedMin,
    /// Comparator UNG bank, maximum-first, descending output.
    PriorMax,
    /// Unary bitonic CAS network.
    UnaryBatcher,
}

impl Architecture {
    pub const ALL: [Architecture; 3] = [
        Architecture::ProposedMin,
        Architecture::PriorMax,
        Architecture::UnaryBatcher,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Architecture::ProposedMin => "proposed-min",
            Architecture::PriorMax => "prior-max",
            Architecture::UnaryBatcher => "unary-batcher",
        }
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "proposed-min" | "min" | "proposed" => Ok(Architecture::ProposedMin),
            "prior-max" | "max" | "prior" => Ok(Architecture::PriorMax),
            "unary-batcher" | "batcher" | "bitonic" => Ok(Architecture::UnaryBatcher),
            other => Err(Error::Parse(format!("unknown architecture {other:?}"))),
        }
    }
}

/// Result of running one architecture on one input vector. Output order is
/// the architecture's natural order: descending for `PriorMax`, ascending
/// otherwise. The network has no controller, so it produces no trace.
#[derive(Debug, Clone)]
pub struct SortOutcome {
    pub sorted: Vec<BinaryValue>,
    pub trace: Option<CycleTrace>,
}

pub fn run_architecture(
    arch: Architecture,
    values: &[BinaryValue],
    width: u32,
) -> Result<SortOutcome> {
    let sorter = || SorterConfig::new(values.len(), width);
    match arch {
        Architecture::ProposedMin => {
            let (sorted, trace) = sorter_min::engine_run(values, sorter()?)?;
            Ok(SortOutcome {
                sorted,
                trace: Some(trace),
            })
        }
        Architecture::PriorMax => {
            let (sorted, trace) = sorter_max::max_engine_run(values, sorter()?)?;
            Ok(SortOutcome {
                sorted,
                trace: Some(trace),
            })
        }
        Architecture::UnaryBatcher => Ok(SortOutcome {
            sorted: batcher::batcher_sort(values, width)?,
            trace: None,
        }),
    }
}

/// Builds `BinaryValue`s from raw integers at a common width.
pub fn values_from(raw: &[u64], width: u32) -> Result<Vec<BinaryValue>> {
    raw.iter().map(|&v| BinaryValue::new(v, width)).collect()
}
