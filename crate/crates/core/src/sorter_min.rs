// SPDX-License-Identifier: Apache-2.0

//! Ascending-order sorter built on a CFUNG bank.
//!
//! The smallest element detector flags the inputs whose stream emits its
//! first 0. Input `v` emits `v` ones, so it is detected at
//! `Elapsed_Cycle = v + 1`. By then its remainder register has drained to
//! zero, and the value is rebuilt as `remainder + (Elapsed_Cycle - 1)`.

use crate::bitstream::{max_value, BinaryValue};
use crate::engine::{Engine, GeneratorBank, SorterConfig};
use crate::error::{Error, Result};
use crate::trace::CycleTrace;
use crate::ung::{CfungUnit, FsmState};
use crate::Architecture;

#[derive(Debug, Clone)]
pub struct CfungBank {
    units: Vec<CfungUnit>,
    width: u32,
}

impl CfungBank {
    pub fn units(&self) -> &[CfungUnit] {
        &self.units
    }
}

impl GeneratorBank for CfungBank {
    fn architecture(&self) -> Architecture {
        Architecture::ProposedMin
    }

    fn width(&self) -> u32 {
        self.width
    }

    fn len(&self) -> usize {
        self.units.len()
    }

    fn step(&mut self, active: &[bool], signals: &mut [bool]) {
        for ((unit, &a), s) in self.units.iter_mut().zip(active).zip(signals.iter_mut()) {
            *s = if a { !unit.step() } else { false };
        }
    }

    fn retrieve(&self, index: usize, elapsed_cycle: u64) -> Result<BinaryValue> {
        let unit = &self.units[index];
        debug_assert_eq!(unit.state(), FsmState::Red);
        let cycles = retrieve_value(elapsed_cycle, self.width)?;
        BinaryValue::new(unit.remainder() as u64 + cycles.value() as u64, self.width)
    }
}

pub type SortEngine = Engine<CfungBank>;

/// Loads every input into its own CFUNG unit.
pub fn engine_load(values: &[BinaryValue], cfg: SorterConfig) -> Result<SortEngine> {
    cfg.check_inputs(values)?;
    let units = values.iter().copied().map(CfungUnit::load).collect();
    Ok(Engine::with_bank(CfungBank {
        units,
        width: cfg.width(),
    }))
}

/// `Elapsed_Cycle - 1` as an M-bit word.
pub fn retrieve_value(elapsed_cycle: u64, width: u32) -> Result<BinaryValue> {
    if elapsed_cycle == 0 || elapsed_cycle - 1 > max_value(width) {
        return Err(Error::RetrievalOverflow {
            elapsed: elapsed_cycle,
            width,
        });
    }
    BinaryValue::new(elapsed_cycle - 1, width)
}

/// Loads and runs the sorter to completion.
pub fn engine_run(
    values: &[BinaryValue],
    cfg: SorterConfig,
) -> Result<(Vec<BinaryValue>, CycleTrace)> {
    engine_load(values, cfg)?.run()
}

/// Total clock cycles of a finished min-sorter trace.
pub fn total_cycles(trace: &CycleTrace) -> Result<u64> {
    trace.total_cycles()
}

/// Closed form for the min sorter: `(max + 1)` generation cycles plus one
/// write cycle per input.
pub fn expected_total_cycles(values: &[BinaryValue]) -> u64 {
    let max = values.iter().map(|v| v.value() as u64).max().unwrap_or(0);
    max + 1 + values.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ControllerState;
    use proptest::prelude::*;

    fn vals(xs: &[u64], width: u32) -> Vec<BinaryValue> {
        xs.iter()
            .map(|&x| BinaryValue::new(x, width).unwrap())
            .collect()
    }

    fn run(xs: &[u64], width: u32) -> (Vec<u64>, CycleTrace) {
        let cfg = SorterConfig::new(xs.len(), width).unwrap();
        let (out, trace) = engine_run(&vals(xs, width), cfg).unwrap();
        (out.iter().map(|v| v.value() as u64).collect(), trace)
    }

    #[test]
    fn load_worked_example() {
        let cfg = SorterConfig::new(3, 3).unwrap();
        let e = engine_load(&vals(&[4, 6, 4], 3), cfg).unwrap();
        let rem: Vec<_> = e.bank().units().iter().map(|u| u.remainder()).collect();
        assert_eq!(rem, [4, 6, 4]);
        assert_eq!(e.elapsed_cycle(), 0);
        assert_eq!(e.controller(), ControllerState::FindIndex);
        assert!(e.detect_ff().iter().all(|&b| !b));
        assert!(e.output_mask().iter().all(|&b| !b));
    }

    #[test]
    fn load_rejects_bad_shapes() {
        assert!(matches!(
            SorterConfig::new(0, 3),
            Err(Error::TooFewInputs(0))
        ));
        let cfg = SorterConfig::new(3, 3).unwrap();
        assert!(engine_load(&vals(&[1, 2], 3), cfg).is_err());
        assert!(engine_load(&vals(&[1, 2, 3], 4), cfg).is_err());
    }

    #[test]
    fn load_zero_inputs() {
        let cfg = SorterConfig::new(2, 3).unwrap();
        let e = engine_load(&vals(&[0, 0], 3), cfg).unwrap();
        assert!(e.bank().units().iter().all(|u| !u.out_or()));
    }

    #[test]
    fn worked_example_step_by_step() {
        let cfg = SorterConfig::new(3, 3).unwrap();
        let mut e = engine_load(&vals(&[4, 6, 4], 3), cfg).unwrap();
        for _ in 0..4 {
            e.tick().unwrap();
            assert_eq!(e.controller(), ControllerState::FindIndex);
        }
        e.tick().unwrap();
        let ev = e.trace().events().last().unwrap().clone();
        assert_eq!(ev.elapsed_cycle, 5);
        assert_eq!(ev.ds, 2);
        assert_eq!(ev.detected, [0, 2]);
        assert_eq!(e.controller(), ControllerState::PutResults);

        e.tick().unwrap();
        e.tick().unwrap();
        assert_eq!(e.controller(), ControllerState::FindIndex);
        let writes: Vec<_> = e
            .trace()
            .writes()
            .map(|(_, w)| (w.index, w.value.value()))
            .collect();
        assert_eq!(writes, [(0, 4), (2, 4)]);
        assert_eq!(e.elapsed_cycle(), 5);

        let (out, trace) = e.run().unwrap();
        assert_eq!(out, vals(&[4, 4, 6], 3));
        assert_eq!(total_cycles(&trace).unwrap(), 10);
        assert_eq!(trace.generation_cycles().unwrap(), 7);
        assert_eq!(trace.write_cycles().unwrap(), 3);
    }

    #[test]
    fn zero_detected_first_cycle() {
        let cfg = SorterConfig::new(2, 3).unwrap();
        let mut e = engine_load(&vals(&[0, 5], 3), cfg).unwrap();
        e.tick().unwrap();
        let ev = &e.trace().events()[0];
        assert_eq!(
            (ev.elapsed_cycle, ev.ds, ev.detected.as_slice()),
            (1, 1, &[0][..])
        );
        e.tick().unwrap();
        assert_eq!(e.outputs()[0].unwrap().value(), 0);
    }

    #[test]
    fn tick_after_completion_is_idle() {
        let cfg = SorterConfig::new(2, 2).unwrap();
        let mut e = engine_load(&vals(&[1, 2], 2), cfg).unwrap();
        while !e.is_complete() {
            e.tick().unwrap();
        }
        let before = e.trace().total_cycles().unwrap();
        let outputs = e.outputs().to_vec();
        e.tick().unwrap();
        e.tick().unwrap();
        assert_eq!(e.outputs(), outputs.as_slice());
        assert_eq!(e.trace().total_cycles().unwrap(), before);
        let last = e.trace().events().last().unwrap();
        assert!(last.idle);
        let cycles: Vec<_> = e.trace().events().iter().map(|ev| ev.cycle).collect();
        assert!(cycles.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn incomplete_trace_has_no_total() {
        let cfg = SorterConfig::new(2, 3).unwrap();
        let mut e = engine_load(&vals(&[3, 5], 3), cfg).unwrap();
        e.tick().unwrap();
        assert!(matches!(
            total_cycles(e.trace()),
            Err(Error::IncompleteTrace)
        ));
    }

    #[test]
    fn retrieval() {
        assert_eq!(retrieve_value(5, 3).unwrap().value(), 4);
        assert_eq!(retrieve_value(1, 3).unwrap().value(), 0);
        assert_eq!(retrieve_value(8, 3).unwrap().value(), 7);
        assert!(matches!(
            retrieve_value(9, 3),
            Err(Error::RetrievalOverflow { .. })
        ));
        assert!(matches!(
            retrieve_value(0, 3),
            Err(Error::RetrievalOverflow { .. })
        ));
    }

    #[test]
    fn max_value_detected_in_last_window_cycle() {
        // load v = 7 and confirm detection at Elapsed_Cycle = 8
        let (out, trace) = run(&[7, 7], 3);
        assert_eq!(out, [7, 7]);
        assert_eq!(trace.detection_cycle(0), Some(8));
        assert_eq!(trace.total_cycles().unwrap(), 8 + 2);
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(run(&[0, 0, 0, 0], 3).1.total_cycles().unwrap(), 5);
        assert_eq!(run(&[0, 1, 2, 3], 3).0, [0, 1, 2, 3]);
        let (_, trace) = run(&[255; 6], 8);
        assert_eq!(trace.total_cycles().unwrap(), 256 + 6);
        assert_eq!(trace.detections().collect::<Vec<_>>(), [(256, 6)]);
    }

    #[test]
    fn exhaustive_n4_m3() {
        for code in 0..8u64.pow(4) {
            let xs: Vec<u64> = (0..4).map(|k| (code >> (3 * k)) & 7).collect();
            let (out, _) = run(&xs, 3);
            let mut expected = xs.clone();
            expected.sort_unstable();
            assert_eq!(out, expected, "input {xs:?}");
        }
    }

    proptest! {
        #[test]
        fn sorts_and_obeys_laws(width in 1u32..=8, raw in prop::collection::vec(any::<u64>(), 2..12)) {
            let xs: Vec<u64> = raw.iter().map(|r| r % (1 << width)).collect();
            let (out, trace) = run(&xs, width);
            let mut expected = xs.clone();
            expected.sort_unstable();
            prop_assert_eq!(&out, &expected);

            // detection-time law
            for (i, &x) in xs.iter().enumerate() {
                prop_assert_eq!(trace.detection_cycle(i), Some(x + 1));
            }
            // retrieved values never decrease
            let written: Vec<_> = trace.writes().map(|(_, w)| w.value.value()).collect();
            prop_assert!(written.windows(2).all(|w| w[0] <= w[1]));
            // ties: one event with ds = k, then k writes of the same value
            for (elapsed, ds) in trace.detections() {
                let k = xs.iter().filter(|&&x| x + 1 == elapsed).count();
                prop_assert_eq!(ds, k);
                let idx = trace.events().iter().position(|e| e.ds > 0 && e.elapsed_cycle == elapsed).unwrap();
                let following = &trace.events()[idx + 1..idx + 1 + k];
                prop_assert!(following.iter().all(|e| e.write.map(|w| w.value.value() as u64) == Some(elapsed - 1)));
            }
            prop_assert_eq!(trace.total_cycles().unwrap(), expected_total_cycles(&vals(&xs, width)));
            // engine invariants hold at the end
            prop_assert!(trace.is_complete());
        }

        #[test]
        fn engine_invariants_every_cycle(width in 1u32..=5, raw in prop::collection::vec(any::<u64>(), 2..6)) {
            let xs: Vec<u64> = raw.iter().map(|r| r % (1 << width)).collect();
            let cfg = SorterConfig::new(xs.len(), width).unwrap();
            let mut e = engine_load(&vals(&xs, width), cfg).unwrap();
            while !e.is_complete() {
                let before = (e.controller(), e.elapsed_cycle());
                e.tick().unwrap();
                if before.0 == ControllerState::PutResults {
                    prop_assert_eq!(e.elapsed_cycle(), before.1);
                }
                for i in 0..xs.len() {
                    if e.detect_ff()[i] {
                        prop_assert_eq!(e.bank().units()[i].state(), FsmState::Red);
                    }
                    if e.output_mask()[i] {
                        prop_assert!(e.detect_ff()[i]);
                    }
                }
                prop_assert!(e.out_ptr() <= xs.len());
            }
        }
    }
}
