// SPDX-License-Identifier: Apache-2.0

//! Unary number generators.
//!
//! [`CfungUnit`] is the comparison-free generator: a remainder register, an
//! OR-reduction of that register (`Out_OR`), and a two-state FSM. Each clock
//! it emits `Out_OR` and subtracts the emitted bit from the remainder, so a
//! value `v` produces `v` ones and then zeros forever.
//!
//! [`ComparatorUng`] is the conventional counter-plus-comparator generator
//! used as the baseline.

use crate::bitstream::{decode, max_value, stream_len, BinaryValue, UnaryStream};
use crate::error::{Error, Result};

/// CFUNG FSM state. Blue emits 1, Red emits 0 and is absorbing until reload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FsmState {
    Blue,
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CfungUnit {
    remainder: u32,
    state: FsmState,
    width: u32,
}

impl CfungUnit {
    pub fn load(v: BinaryValue) -> Self {
        Self {
            remainder: v.value(),
            state: FsmState::Blue,
            width: v.width(),
        }
    }

    pub fn remainder(&self) -> u32 {
        self.remainder
    }

    pub fn state(&self) -> FsmState {
        self.state
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// OR-reduction of the remainder register.
    pub fn out_or(&self) -> bool {
        self.remainder != 0
    }

    /// One clock: emit `Out_OR`, then `R <- R - bit`.
    pub fn step(&mut self) -> bool {
        let bit = self.out_or();
        self.remainder -= bit as u32;
        if !bit {
            self.state = FsmState::Red;
        }
        bit
    }

    /// Value-style variant of [`CfungUnit::step`].
    pub fn stepped(mut self) -> (bool, Self) {
        let bit = self.step();
        (bit, self)
    }
}

/// Runs a freshly loaded CFUNG unit for `2^M` cycles.
pub fn cfung_generate(v: BinaryValue) -> UnaryStream {
    let mut unit = CfungUnit::load(v);
    let bits = (0..stream_len(v.width())).map(|_| unit.step()).collect();
    UnaryStream::from_bits(bits)
}

/// Counter plus comparator generator. The counter runs down from `2^M - 1`
/// and the unit emits `value > counter`, so the ones arrive last in time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComparatorUng {
    threshold: BinaryValue,
    counter: u32,
}

impl ComparatorUng {
    pub fn load(threshold: BinaryValue) -> Self {
        Self {
            threshold,
            counter: max_value(threshold.width()) as u32,
        }
    }

    pub fn counter(&self) -> u32 {
        self.counter
    }

    pub fn step(&mut self) -> bool {
        let bit = self.threshold.value() > self.counter;
        // wraps back to 2^M - 1 after the last cycle, i.e. a reload
        self.counter = if self.counter == 0 {
            max_value(self.threshold.width()) as u32
        } else {
            self.counter - 1
        };
        bit
    }
}

pub fn comparator_ung_generate(v: BinaryValue) -> UnaryStream {
    let mut unit = ComparatorUng::load(v);
    let bits = (0..stream_len(v.width())).map(|_| unit.step()).collect();
    UnaryStream::from_bits(bits)
}

/// Whether two generator outputs carry the same value. Bit order may differ
/// between generator conventions, so this compares decoded values and checks
/// that both streams are unary.
pub fn streams_equivalent(a: &UnaryStream, b: &UnaryStream) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::EmptyStream);
    }
    Ok(a.is_unary() && b.is_unary() && decode(a)? == decode(b)?)
}
