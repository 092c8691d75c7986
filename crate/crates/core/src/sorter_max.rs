// SPDX-License-Identifier: Apache-2.0

//! Baseline descending-order sorter: comparator UNGs driven by a shared
//! down counter, with the largest element found as the first stream to emit
//! a 1. The counter value at detection is the detected input's value.

use crate::bitstream::{max_value, stream_len, BinaryValue};
use crate::engine::{Engine, GeneratorBank, SorterConfig};
use crate::error::Result;
use crate::trace::CycleTrace;
use crate::Architecture;

/// Detector bit of one comparator UNG: `value >= counter`.
pub fn max_bit(v: BinaryValue, counter: u32) -> bool {
    v.value() >= counter
}

#[derive(Debug, Clone)]
pub struct ComparatorBank {
    thresholds: Vec<BinaryValue>,
    width: u32,
    /// Counter value presented in the current cycle; `None` before the first.
    counter: Option<u32>,
}

impl ComparatorBank {
    pub fn thresholds(&self) -> &[BinaryValue] {
        &self.thresholds
    }

    pub fn counter(&self) -> Option<u32> {
        self.counter
    }
}

impl GeneratorBank for ComparatorBank {
    fn architecture(&self) -> Architecture {
        Architecture::PriorMax
    }

    fn width(&self) -> u32 {
        self.width
    }

    fn len(&self) -> usize {
        self.thresholds.len()
    }

    fn step(&mut self, active: &[bool], signals: &mut [bool]) {
        let counter = match self.counter {
            None => max_value(self.width) as u32,
            Some(c) => c.saturating_sub(1),
        };
        self.counter = Some(counter);
        for ((&v, &a), s) in self.thresholds.iter().zip(active).zip(signals.iter_mut()) {
            *s = a && max_bit(v, counter);
        }
    }

    fn retrieve(&self, _index: usize, elapsed_cycle: u64) -> Result<BinaryValue> {
        debug_assert_eq!(
            self.counter.map(|c| c as u64),
            Some(stream_len(self.width) - elapsed_cycle)
        );
        BinaryValue::new(self.counter.unwrap_or(0) as u64, self.width)
    }
}

pub type MaxEngine = Engine<ComparatorBank>;

pub fn max_engine_load(values: &[BinaryValue], cfg: SorterConfig) -> Result<MaxEngine> {
    cfg.check_inputs(values)?;
    Ok(Engine::with_bank(ComparatorBank {
        thresholds: values.to_vec(),
        width: cfg.width(),
        counter: None,
    }))
}

pub fn max_engine_run(
    values: &[BinaryValue],
    cfg: SorterConfig,
) -> Result<(Vec<BinaryValue>, CycleTrace)> {
    max_engine_load(values, cfg)?.run()
}

/// Closed form for the max sorter: `(2^M - min)` generation cycles plus one
/// write cycle per input.
pub fn expected_total_cycles_max(values: &[BinaryValue], width: u32) -> u64 {
    let min = values.iter().map(|v| v.value() as u64).min().unwrap_or(0);
    stream_len(width) - min + values.len() as u64
}
