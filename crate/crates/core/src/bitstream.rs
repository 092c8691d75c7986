// SPDX-License-Identifier: Apache-2.0

//! Binary data words, unary bitstreams, and the reference conversions every
//! generator is checked against.
//!
//! Streams are stored in emission order: index 0 is the bit produced in the
//! first clock cycle. A right-aligned stream therefore emits all of its ones
//! first. Hardware write-ups usually print such a stream with the first bit
//! on the right (`00001111` for the value 4 at M = 3); [`UnaryStream::written_form`]
//! renders that form.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported data width.
pub const MAX_WIDTH: u32 = 32;

/// Largest value an `width`-bit word can hold, `2^M - 1`.
pub fn max_value(width: u32) -> u64 {
    (1u64 << width) - 1
}

/// Length of a unary stream for `width`-bit data, `2^M`.
pub fn stream_len(width: u32) -> u64 {
    1u64 << width
}

pub fn check_width(width: u32) -> Result<()> {
    if (1..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(Error::InvalidWidth(width))
    }
}

/// An M-bit unsigned data word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryValue {
    value: u32,
    width: u32,
}

impl BinaryValue {
    pub fn new(value: u64, width: u32) -> Result<Self> {
        check_width(width)?;
        if value > max_value(width) {
            return Err(Error::ValueOutOfRange { value, width });
        }
        Ok(Self {
            value: value as u32,
            width,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn width(self) -> u32 {
        self.width
    }

    /// The value as a fraction of the stream length, e.g. 4 at M = 3 is 0.5.
    pub fn as_fraction(self) -> f64 {
        self.value as f64 / stream_len(self.width) as f64
    }
}

impl fmt::Display for BinaryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Where the run of ones sits in a unary stream.
///
/// Only right-aligned streams are generated here. `LeftAligned` names the
/// convention of earlier max-finding sorters, which look for the first 1 in
/// a stream whose ones are written on the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamAlignment {
    RightAligned,
    LeftAligned,
}

/// A unary bitstream in emission order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UnaryStream {
    bits: Vec<bool>,
}

impl UnaryStream {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parses a `0`/`1` string given in emission order.
    pub fn from_emission_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "unexpected character {other:?} in bitstream"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The data width implied by the stream length.
    pub fn width(&self) -> Result<u32> {
        let len = self.bits.len();
        if len == 0 {
            return Err(Error::EmptyStream);
        }
        if !len.is_power_of_two() {
            return Err(Error::NonPowerOfTwoLength(len));
        }
        let width = len.trailing_zeros();
        check_width(width)?;
        Ok(width)
    }

    /// Bits as a `0`/`1` string, first emitted bit first.
    pub fn emission_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// Bits as a `0`/`1` string, first emitted bit last (`00001111` for 4).
    pub fn written_form(&self) -> String {
        self.bits
            .iter()
            .rev()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// True when the ones form one contiguous block at either end of the
    /// stream, whichever direction it is read in.
    pub fn is_unary(&self) -> bool {
        is_right_aligned(self) || self.bits.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for UnaryStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.emission_string())
    }
}

/// Reference encoder: `v` ones followed by `2^M - v` zeros.
pub fn encode_right_aligned(v: BinaryValue) -> UnaryStream {
    let len = stream_len(v.width) as usize;
    let ones = v.value as usize;
    let mut bits = vec![false; len];
    bits[..ones].fill(true);
    UnaryStream { bits }
}

/// Inverse of [`encode_right_aligned`]: the popcount, at the width implied
/// by the stream length.
pub fn decode(s: &UnaryStream) -> Result<BinaryValue> {
    let width = s.width()?;
    BinaryValue::new(s.popcount() as u64, width)
}

/// No 1 follows a 0 in emission order.
pub fn is_right_aligned(s: &UnaryStream) -> bool {
    s.bits.windows(2).all(|w| w[0] >= w[1])
}
