// SPDX-License-Identifier: Apache-2.0

//! Controller datapath shared by the min- and max-finding sorters.
//!
//! Both sorters are a bank of unary generators feeding an extreme-element
//! detector. Each generation cycle the detector latches the inputs that
//! just signalled (first 0 for the min sorter, first 1 for the max sorter)
//! into flip-flops, and an adder counts them into `ds`. A nonzero `ds` moves
//! the controller from `FindIndex` to `PutResults`, where a priority encoder
//! drains the latched inputs one per cycle into output memory. Generation
//! and `Elapsed_Cycle` are frozen while results are being written.

use std::fmt;

use crate::bitstream::{check_width, BinaryValue};
use crate::error::{Error, Result};
use crate::trace::{CycleTrace, OutputWrite, TraceEvent};
use crate::Architecture;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControllerState {
    FindIndex,
    PutResults,
}

impl ControllerState {
    pub fn as_str(self) -> &'static str {
        match self {
            ControllerState::FindIndex => "find_index",
            ControllerState::PutResults => "put_results",
        }
    }
}

impl fmt::Display for ControllerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Number of inputs newly detected in one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DetectionSignal(pub usize);

impl DetectionSignal {
    pub fn count(self) -> usize {
        self.0
    }
}

/// The `ds` adder: popcount of the new-detection lines.
pub fn detection_signal(new_detections: &[bool]) -> DetectionSignal {
    DetectionSignal(new_detections.iter().filter(|&&b| b).count())
}

/// Lowest set index wins.
pub fn priority_encode(requests: &[bool]) -> Result<usize> {
    requests.iter().position(|&b| b).ok_or(Error::NoDetection)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SorterConfig {
    n_inputs: usize,
    width: u32,
}

impl SorterConfig {
    pub fn new(n_inputs: usize, width: u32) -> Result<Self> {
        if n_inputs < 2 {
            return Err(Error::TooFewInputs(n_inputs));
        }
        check_width(width)?;
        Ok(Self { n_inputs, width })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub(crate) fn check_inputs(&self, values: &[BinaryValue]) -> Result<()> {
        if values.len() != self.n_inputs {
            return Err(Error::InputCountMismatch {
                expected: self.n_inputs,
                got: values.len(),
            });
        }
        for (index, v) in values.iter().enumerate() {
            if v.width() != self.width {
                return Err(Error::WidthMismatch {
                    index,
                    expected: self.width,
                    got: v.width(),
                });
            }
        }
        Ok(())
    }
}

/// A bank of unary generators plus the per-input detector logic.
pub trait GeneratorBank {
    fn architecture(&self) -> Architecture;

    fn width(&self) -> u32;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Advances one generation cycle. Units with `active[i] == false` are
    /// masked and hold their state. `signals[i]` receives the detector line
    /// of unit `i` for this cycle.
    fn step(&mut self, active: &[bool], signals: &mut [bool]);

    /// Value of input `index`, detected at `elapsed_cycle`, reconstructed
    /// from datapath state.
    fn retrieve(&self, index: usize, elapsed_cycle: u64) -> Result<BinaryValue>;
}

/// Full architectural state of a sorter built on bank `B`.
#[derive(Debug, Clone)]
pub struct Engine<B> {
    bank: B,
    detect_ff: Vec<bool>,
    output_mask: Vec<bool>,
    pending: Vec<bool>,
    controller: ControllerState,
    elapsed_cycle: u64,
    clock: u64,
    idle_ticks: u64,
    out_ptr: usize,
    outputs: Vec<Option<BinaryValue>>,
    trace: CycleTrace,
    // scratch lines reused across cycles
    signals: Vec<bool>,
    active: Vec<bool>,
}

impl<B: GeneratorBank> Engine<B> {
    pub(crate) fn with_bank(bank: B) -> Self {
        let n = bank.len();
        let trace = CycleTrace::new(bank.architecture(), n);
        Self {
            bank,
            detect_ff: vec![false; n],
            output_mask: vec![false; n],
            pending: vec![false; n],
            controller: ControllerState::FindIndex,
            elapsed_cycle: 0,
            clock: 0,
            idle_ticks: 0,
            out_ptr: 0,
            outputs: vec![None; n],
            trace,
            signals: vec![false; n],
            active: vec![true; n],
        }
    }

    pub fn bank(&self) -> &B {
        &self.bank
    }

    pub fn n_inputs(&self) -> usize {
        self.bank.len()
    }

    pub fn controller(&self) -> ControllerState {
        self.controller
    }

    pub fn elapsed_cycle(&self) -> u64 {
        self.elapsed_cycle
    }

    /// Clock cycles that did work so far.
    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn out_ptr(&self) -> usize {
        self.out_ptr
    }

    pub fn detect_ff(&self) -> &[bool] {
        &self.detect_ff
    }

    pub fn output_mask(&self) -> &[bool] {
        &self.output_mask
    }

    pub fn pending(&self) -> &[bool] {
        &self.pending
    }

    /// Output memory; slots not yet written are `None`.
    pub fn outputs(&self) -> &[Option<BinaryValue>] {
        &self.outputs
    }

    pub fn trace(&self) -> &CycleTrace {
        &self.trace
    }

    pub fn is_complete(&self) -> bool {
        self.out_ptr == self.n_inputs()
    }

    /// Advances one clock cycle. Ticking a finished engine changes nothing
    /// and logs an idle event.
    pub fn tick(&mut self) -> Result<()> {
        if self.is_complete() {
            self.idle_ticks += 1;
            self.trace.push(TraceEvent {
                cycle: self.clock + self.idle_ticks,
                state: self.controller,
                elapsed_cycle: self.elapsed_cycle,
                ds: 0,
                detected: Vec::new(),
                write: None,
                idle: true,
            });
            return Ok(());
        }
        self.clock += 1;
        match self.controller {
            ControllerState::FindIndex => self.find_index(),
            ControllerState::PutResults => self.put_result()?,
        }
        if self.is_complete() {
            self.trace.mark_complete();
        }
        Ok(())
    }

    fn find_index(&mut self) {
        for (a, &masked) in self.active.iter_mut().zip(&self.output_mask) {
            *a = !masked;
        }
        self.bank.step(&self.active, &mut self.signals);
        self.elapsed_cycle += 1;

        for ((s, &latched), &a) in self
            .signals
            .iter_mut()
            .zip(&self.detect_ff)
            .zip(&self.active)
        {
            *s = *s && !latched && a;
        }
        let ds = detection_signal(&self.signals);
        let mut detected = Vec::with_capacity(ds.count());
        for (i, &hit) in self.signals.iter().enumerate() {
            if hit {
                self.detect_ff[i] = true;
                self.pending[i] = true;
                detected.push(i);
            }
        }
        self.trace.push(TraceEvent {
            cycle: self.clock,
            state: ControllerState::FindIndex,
            elapsed_cycle: self.elapsed_cycle,
            ds: ds.count(),
            detected,
            write: None,
            idle: false,
        });
        if ds.count() >= 1 {
            self.controller = ControllerState::PutResults;
        }
    }

    fn put_result(&mut self) -> Result<()> {
        let index = priority_encode(&self.pending)?;
        let value = self.bank.retrieve(index, self.elapsed_cycle)?;
        let write = OutputWrite {
            address: self.out_ptr,
            index,
            value,
        };
        self.outputs[self.out_ptr] = Some(value);
        self.out_ptr += 1;
        self.output_mask[index] = true;
        self.pending[index] = false;
        self.trace.push(TraceEvent {
            cycle: self.clock,
            state: ControllerState::PutResults,
            elapsed_cycle: self.elapsed_cycle,
            ds: 0,
            detected: Vec::new(),
            write: Some(write),
            idle: false,
        });
        if !self.pending.contains(&true) {
            self.controller = ControllerState::FindIndex;
        }
        Ok(())
    }

    /// Ticks until every output is written and returns the output memory
    /// and the trace.
    pub fn run(mut self) -> Result<(Vec<BinaryValue>, CycleTrace)> {
        while !self.is_complete() {
            self.tick()?;
        }
        let outputs = self
            .outputs
            .into_iter()
            .map(|o| o.expect("every slot is written once sorting completes"))
            .collect();
        Ok((outputs, self.trace))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ds_counts_set_lines() {
        assert_eq!(detection_signal(&[true, false, true]).count(), 2);
        assert_eq!(detection_signal(&[false; 5]).count(), 0);
        assert_eq!(detection_signal(&[true; 7]).count(), 7);
    }

    #[test]
    fn priority_encoder_picks_lowest() {
        assert_eq!(priority_encode(&[true, false, true]).unwrap(), 0);
        assert_eq!(priority_encode(&[false, false, true]).unwrap(), 2);
        assert!(matches!(
            priority_encode(&[false; 3]),
            Err(Error::NoDetection)
        ));
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            SorterConfig::new(1, 8),
            Err(Error::TooFewInputs(1))
        ));
        assert!(matches!(
            SorterConfig::new(0, 8),
            Err(Error::TooFewInputs(0))
        ));
        assert!(matches!(
            SorterConfig::new(4, 0),
            Err(Error::InvalidWidth(0))
        ));
        assert!(matches!(
            SorterConfig::new(4, 33),
            Err(Error::InvalidWidth(33))
        ));
        let cfg = SorterConfig::new(3, 3).unwrap();
        let v = |x| BinaryValue::new(x, 3).unwrap();
        assert!(cfg.check_inputs(&[v(1), v(2), v(3)]).is_ok());
        assert!(matches!(
            cfg.check_inputs(&[v(1), v(2)]),
            Err(Error::InputCountMismatch {
                expected: 3,
                got: 2
            })
        ));
        let wide = BinaryValue::new(1, 4).unwrap();
        assert!(matches!(
            cfg.check_inputs(&[v(1), wide, v(3)]),
            Err(Error::WidthMismatch {
                index: 1,
                expected: 3,
                got: 4
            })
        ));
    }
}
