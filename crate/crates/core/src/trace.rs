// SPDX-License-Identifier: Apache-2.0

//! Per-cycle event log recorded by the sorting engines.

use std::io::Write;

use crate::bitstream::BinaryValue;
use crate::engine::ControllerState;
use crate::error::{Error, Result};
use crate::Architecture;

/// One output-memory write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputWrite {
    pub address: usize,
    /// Input index the value came from.
    pub index: usize,
    pub value: BinaryValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    /// Clock cycle, 1-based.
    pub cycle: u64,
    /// Controller state during this cycle.
    pub state: ControllerState,
    /// `Elapsed_Cycle` after this cycle.
    pub elapsed_cycle: u64,
    pub ds: usize,
    /// Inputs newly detected in this cycle.
    pub detected: Vec<usize>,
    pub write: Option<OutputWrite>,
    /// Tick issued after sorting had finished; no state changed.
    pub idle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTrace {
    architecture: Architecture,
    n_inputs: usize,
    events: Vec<TraceEvent>,
    complete: bool,
}

impl CycleTrace {
    pub(crate) fn new(architecture: Architecture, n_inputs: usize) -> Self {
        Self {
            architecture,
            n_inputs,
            events: Vec::new(),
            complete: false,
        }
    }

    pub(crate) fn push(&mut self, event: TraceEvent) {
        debug_assert!(self
            .events
            .last()
            .is_none_or(|last| last.cycle < event.cycle));
        self.events.push(event);
    }

    pub(crate) fn mark_complete(&mut self) {
        self.complete = true;
    }

    pub fn architecture(&self) -> Architecture {
        self.architecture
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn working(&self) -> Result<impl Iterator<Item = &TraceEvent>> {
        if !self.complete {
            return Err(Error::IncompleteTrace);
        }
        Ok(self.events.iter().filter(|e| !e.idle))
    }

    /// Clock cycles from load to the last output write.
    pub fn total_cycles(&self) -> Result<u64> {
        Ok(self.working()?.count() as u64)
    }

    /// Cycles spent generating bitstreams (controller in `FindIndex`).
    pub fn generation_cycles(&self) -> Result<u64> {
        Ok(self
            .working()?
            .filter(|e| e.state == ControllerState::FindIndex)
            .count() as u64)
    }

    /// Cycles spent writing results (controller in `PutResults`).
    pub fn write_cycles(&self) -> Result<u64> {
        Ok(self
            .working()?
            .filter(|e| e.state == ControllerState::PutResults)
            .count() as u64)
    }

    /// `Elapsed_Cycle` at which input `index` was detected.
    pub fn detection_cycle(&self, index: usize) -> Option<u64> {
        self.events
            .iter()
            .find(|e| e.detected.contains(&index))
            .map(|e| e.elapsed_cycle)
    }

    /// Output writes with the clock cycle each one happened in, in address order.
    pub fn writes(&self) -> impl Iterator<Item = (u64, &OutputWrite)> {
        self.events
            .iter()
            .filter_map(|e| e.write.as_ref().map(|w| (e.cycle, w)))
    }

    /// Detection events as `(elapsed_cycle, ds)`.
    pub fn detections(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.events
            .iter()
            .filter(|e| e.ds > 0)
            .map(|e| (e.elapsed_cycle, e.ds))
    }
}

pub const TRACE_CSV_HEADER: [&str; 8] = [
    "arch",
    "vector",
    "cycle",
    "state",
    "elapsed_cycle",
    "ds",
    "detected_indices",
    "writes",
];

/// Writes traces as CSV. `detected_indices` is a space-separated list of
/// input indices and `writes` is `address:value`; both may be empty.
pub fn write_traces_csv<'a, W, I>(out: W, traces: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a CycleTrace>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_CSV_HEADER)?;
    for (vector, trace) in traces.into_iter().enumerate() {
        for e in &trace.events {
            let detected = e
                .detected
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let write = e
                .write
                .map(|w| format!("{}:{}", w.address, w.value))
                .unwrap_or_default();
            let state = if e.idle { "idle" } else { e.state.as_str() };
            w.write_record([
                trace.architecture.as_str().to_string(),
                vector.to_string(),
                e.cycle.to_string(),
                state.to_string(),
                e.elapsed_cycle.to_string(),
                e.ds.to_string(),
                detected,
                write,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
