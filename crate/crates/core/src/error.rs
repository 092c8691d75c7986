// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit width {0} outside supported range 1..=32")]
    InvalidWidth(u32),
    #[error("value {value} not representable in M={width}")]
    ValueOutOfRange { value: u64, width: u32 },
    #[error("stream has zero length")]
    EmptyStream,
    #[error("stream length {0} is not a power of two")]
    NonPowerOfTwoLength(usize),
    #[error("stream lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("a sorter needs at least 2 inputs, got {0}")]
    TooFewInputs(usize),
    #[error("expected {expected} inputs, got {got}")]
    InputCountMismatch { expected: usize, got: usize },
    #[error("input {index} has width {got}, sorter is configured for M={expected}")]
    WidthMismatch {
        index: usize,
        expected: u32,
        got: u32,
    },
    #[error("no detection")]
    NoDetection,
    #[error("network size {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),
    #[error("trace is incomplete: sorting has not finished")]
    IncompleteTrace,
    #[error("elapsed cycle {elapsed} does not map to an M={width} value")]
    RetrievalOverflow { elapsed: u64, width: u32 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
