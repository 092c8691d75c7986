// SPDX-License-Identifier: Apache-2.0

//! Unary bitonic sorting network. On right-aligned unary streams a
//! compare-and-swap block is one AND gate (minimum) and one OR gate
//! (maximum), applied bit by bit as the streams flow through.

use std::fmt::Write as _;

use crate::bitstream::{check_width, decode, encode_right_aligned, BinaryValue, UnaryStream};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Minimum on the lower lane.
    Ascending,
    /// Maximum on the lower lane.
    Descending,
}

impl Direction {
    fn as_str(self) -> &'static str {
        match self {
            Direction::Ascending => "asc",
            Direction::Descending => "desc",
        }
    }
}

/// One CAS block between `lane_a < lane_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cas {
    pub lane_a: usize,
    pub lane_b: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasNetwork {
    n_inputs: usize,
    stages: Vec<Vec<Cas>>,
}

fn check_size(n: usize) -> Result<()> {
    if n >= 2 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}

/// `N * log2(N) * (log2(N) + 1) / 4`
pub fn cas_count(n: usize) -> Result<u64> {
    check_size(n)?;
    let n = n as u64;
    let lg = n.trailing_zeros() as u64;
    Ok(n * lg * (lg + 1) / 4)
}

/// AND/OR compare-and-swap on one bit from each lane.
pub fn cas_apply(a: bool, b: bool, direction: Direction) -> (bool, bool) {
    let (lo, hi) = (a & b, a | b);
    match direction {
        Direction::Ascending => (lo, hi),
        Direction::Descending => (hi, lo),
    }
}

pub fn build_bitonic_network(n: usize) -> Result<CasNetwork> {
    check_size(n)?;
    let mut stages = Vec::new();
    let mut block = 2;
    while block <= n {
        let mut dist = block / 2;
        while dist > 0 {
            let stage = (0..n)
                .filter_map(|i| {
                    let j = i ^ dist;
                    (j > i).then_some(Cas {
                        lane_a: i,
                        lane_b: j,
                        direction: if i & block == 0 {
                            Direction::Ascending
                        } else {
                            Direction::Descending
                        },
                    })
                })
                .collect();
            stages.push(stage);
            dist /= 2;
        }
        block *= 2;
    }
    Ok(CasNetwork {
        n_inputs: n,
        stages,
    })
}

impl CasNetwork {
    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn stages(&self) -> &[Vec<Cas>] {
        &self.stages
    }

    pub fn cas_total(&self) -> usize {
        self.stages.iter().map(Vec::len).sum()
    }

    /// Pushes one bit per lane through every stage (one clock of the
    /// combinational network).
    pub fn apply_bits(&self, lanes: &mut [bool]) {
        assert_eq!(lanes.len(), self.n_inputs);
        for stage in &self.stages {
            for cas in stage {
                let (a, b) = cas_apply(lanes[cas.lane_a], lanes[cas.lane_b], cas.direction);
                lanes[cas.lane_a] = a;
                lanes[cas.lane_b] = b;
            }
        }
    }

    fn check_streams(&self, streams: &[UnaryStream]) -> Result<usize> {
        if streams.len() != self.n_inputs {
            return Err(Error::InputCountMismatch {
                expected: self.n_inputs,
                got: streams.len(),
            });
        }
        let len = streams[0].len();
        if let Some(s) = streams.iter().find(|s| s.len() != len) {
            return Err(Error::LengthMismatch(len, s.len()));
        }
        Ok(len)
    }

    /// Bit-serial evaluation: one bit of every stream per cycle.
    pub fn sort_streams_serial(&self, streams: &[UnaryStream]) -> Result<Vec<UnaryStream>> {
        let len = self.check_streams(streams)?;
        let mut out = vec![Vec::with_capacity(len); self.n_inputs];
        let mut lanes = vec![false; self.n_inputs];
        for t in 0..len {
            for (lane, s) in lanes.iter_mut().zip(streams) {
                *lane = s.bits()[t];
            }
            self.apply_bits(&mut lanes);
            for (o, &b) in out.iter_mut().zip(&lanes) {
                o.push(b);
            }
        }
        Ok(out.into_iter().map(UnaryStream::from_bits).collect())
    }

    /// Whole-stream evaluation on packed words; each CAS is a word-wide
    /// AND/OR over the full stream.
    pub fn sort_streams_batch(&self, streams: &[UnaryStream]) -> Result<Vec<UnaryStream>> {
        let len = self.check_streams(streams)?;
        let mut packed: Vec<Vec<u64>> = streams.iter().map(|s| pack(s.bits())).collect();
        for stage in &self.stages {
            for cas in stage {
                let (lo, hi): (Vec<u64>, Vec<u64>) = packed[cas.lane_a]
                    .iter()
                    .zip(&packed[cas.lane_b])
                    .map(|(&a, &b)| (a & b, a | b))
                    .unzip();
                let (a, b) = match cas.direction {
                    Direction::Ascending => (lo, hi),
                    Direction::Descending => (hi, lo),
                };
                packed[cas.lane_a] = a;
                packed[cas.lane_b] = b;
            }
        }
        Ok(packed
            .iter()
            .map(|w| UnaryStream::from_bits(unpack(w, len)))
            .collect())
    }

    /// Stage list, one line per stage, e.g. `stage 0: 0-1 asc, 2-3 desc`.
    pub fn dump(&self) -> String {
        let mut s = format!(
            "bitonic N={} stages={} cas={}\n",
            self.n_inputs,
            self.stages.len(),
            self.cas_total()
        );
        for (k, stage) in self.stages.iter().enumerate() {
            let pairs: Vec<String> = stage
                .iter()
                .map(|c| format!("{}-{} {}", c.lane_a, c.lane_b, c.direction.as_str()))
                .collect();
            writeln!(s, "stage {k}: {}", pairs.join(", ")).unwrap();
        }
        s
    }
}

fn pack(bits: &[bool]) -> Vec<u64> {
    bits.chunks(64)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u64, |w, (i, &b)| w | ((b as u64) << i))
        })
        .collect()
}

fn unpack(words: &[u64], len: usize) -> Vec<bool> {
    (0..len)
        .map(|i| words[i / 64] >> (i % 64) & 1 == 1)
        .collect()
}

fn encode_all(values: &[BinaryValue], width: u32) -> Result<Vec<UnaryStream>> {
    check_width(width)?;
    values
        .iter()
        .enumerate()
        .map(|(index, &v)| {
            if v.width() != width {
                return Err(Error::WidthMismatch {
                    index,
                    expected: width,
                    got: v.width(),
                });
            }
            Ok(encode_right_aligned(v))
        })
        .collect()
}

/// Encodes, streams bit-serially through the bitonic network, and decodes.
pub fn batcher_sort(values: &[BinaryValue], width: u32) -> Result<Vec<BinaryValue>> {
    let network = build_bitonic_network(values.len())?;
    let streams = encode_all(values, width)?;
    network
        .sort_streams_serial(&streams)?
        .iter()
        .map(decode)
        .collect()
}

/// Same as [`batcher_sort`] using whole-stream evaluation.
pub fn batcher_sort_batch(values: &[BinaryValue], width: u32) -> Result<Vec<BinaryValue>> {
    let network = build_bitonic_network(values.len())?;
    let streams = encode_all(values, width)?;
    network
        .sort_streams_batch(&streams)?
        .iter()
        .map(decode)
        .collect()
}
