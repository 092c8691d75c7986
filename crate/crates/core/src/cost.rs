// SPDX-License-Identifier: Apache-2.0

//! Structural resource model. Counts the building blocks each architecture
//! needs for `N` inputs of `M` bits and folds them into a gate-equivalent
//! score with a [`WeightSet`]. The score is only meaningful for comparing
//! architectures and configurations against each other; it says nothing
//! about absolute area or power.

use std::io::Write;
use std::ops::{Add, Mul};

use serde::Serialize;

use crate::batcher::cas_count;
use crate::engine::SorterConfig;
use crate::error::{Error, Result};
use crate::Architecture;

/// Input counts of the `N` axis of the published comparison grid.
pub const GRID_N: [usize; 6] = [8, 16, 32, 64, 128, 256];
/// Data widths of the published comparison grid.
pub const GRID_M: [u32; 3] = [8, 16, 32];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ResourceCount {
    pub registers_bits: u64,
    pub adder_bits: u64,
    pub comparator_bits: u64,
    pub or_inputs: u64,
    pub encoder_inputs: u64,
    pub mux_inputs: u64,
    pub cas_blocks: u64,
}

impl Add for ResourceCount {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            registers_bits: self.registers_bits + o.registers_bits,
            adder_bits: self.adder_bits + o.adder_bits,
            comparator_bits: self.comparator_bits + o.comparator_bits,
            or_inputs: self.or_inputs + o.or_inputs,
            encoder_inputs: self.encoder_inputs + o.encoder_inputs,
            mux_inputs: self.mux_inputs + o.mux_inputs,
            cas_blocks: self.cas_blocks + o.cas_blocks,
        }
    }
}

impl Mul<u64> for ResourceCount {
    type Output = Self;

    fn mul(self, k: u64) -> Self {
        Self {
            registers_bits: self.registers_bits * k,
            adder_bits: self.adder_bits * k,
            comparator_bits: self.comparator_bits * k,
            or_inputs: self.or_inputs * k,
            encoder_inputs: self.encoder_inputs * k,
            mux_inputs: self.mux_inputs * k,
            cas_blocks: self.cas_blocks * k,
        }
    }
}

/// Gate-equivalent weight per resource category.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightSet {
    pub register_bit: f64,
    pub adder_bit: f64,
    pub comparator_bit: f64,
    pub or_input: f64,
    pub encoder_input: f64,
    pub mux_input: f64,
    pub cas_block: f64,
}

impl Default for WeightSet {
    fn default() -> Self {
        Self {
            register_bit: 4.0,
            adder_bit: 5.0,
            comparator_bit: 3.0,
            or_input: 1.0,
            encoder_input: 2.0,
            mux_input: 1.0,
            cas_block: 2.0,
        }
    }
}

impl WeightSet {
    pub fn as_array(&self) -> [f64; 7] {
        [
            self.register_bit,
            self.adder_bit,
            self.comparator_bit,
            self.or_input,
            self.encoder_input,
            self.mux_input,
            self.cas_block,
        ]
    }

    pub fn from_array(w: [f64; 7]) -> Result<Self> {
        let set = Self {
            register_bit: w[0],
            adder_bit: w[1],
            comparator_bit: w[2],
            or_input: w[3],
            encoder_input: w[4],
            mux_input: w[5],
            cas_block: w[6],
        };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        if self.as_array().iter().all(|w| w.is_finite() && *w > 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidConfig(
                "cost weights must be finite and positive".into(),
            ))
        }
    }

    /// Every weight multiplied by the matching factor.
    pub fn perturbed(&self, factors: [f64; 7]) -> Result<Self> {
        let mut w = self.as_array();
        for (x, f) in w.iter_mut().zip(factors) {
            *x *= f;
        }
        Self::from_array(w)
    }
}

fn register(bits: u64) -> ResourceCount {
    ResourceCount {
        registers_bits: bits,
        ..Default::default()
    }
}

/// Register plus incrementer/decrementer.
fn counter(bits: u64) -> ResourceCount {
    ResourceCount {
        registers_bits: bits,
        adder_bits: bits,
        ..Default::default()
    }
}

fn comparator(bits: u64) -> ResourceCount {
    ResourceCount {
        comparator_bits: bits,
        ..Default::default()
    }
}

/// Bits needed to hold `0..=n`.
fn bits_for(n: u64) -> u64 {
    64 - n.leading_zeros() as u64
}

/// Detection flip-flops and masks, `ds` adder, priority encoder, two-state
/// controller, output address counter, and the value-select MUX. Shared by
/// both extreme-finding sorters.
fn sorter_control(n: u64, m: u64) -> ResourceCount {
    register(2 * n)
        + ResourceCount {
            adder_bits: n,
            encoder_inputs: n,
            mux_inputs: n * m,
            ..Default::default()
        }
        + register(1)
        + counter(bits_for(n))
}

/// Resource counts for `arch` sorting `n` inputs of `m` bits.
pub fn resources(arch: Architecture, n: usize, m: u32) -> Result<ResourceCount> {
    let cfg = SorterConfig::new(n, m)?;
    let (n, m) = (cfg.n_inputs() as u64, cfg.width() as u64);
    Ok(match arch {
        Architecture::ProposedMin => {
            // remainder register doubles as the input register; decrement
            // by the emitted bit, OR-reduce for Out_OR, one FSM state bit
            let cfung = register(m)
                + ResourceCount {
                    adder_bits: m,
                    or_inputs: m,
                    ..Default::default()
                }
                + register(1);
            // Elapsed_Cycle counter and the retrieval adder
            let retrieval = counter(m + 1)
                + ResourceCount {
                    adder_bits: m,
                    ..Default::default()
                };
            cfung * n + retrieval + sorter_control(n, m)
        }
        Architecture::PriorMax => {
            // input register plus a counter/comparator UNG per input
            let ung = register(m) + counter(m) + comparator(m);
            ung * n + sorter_control(n, m)
        }
        Architecture::UnaryBatcher => {
            let input_side = register(m) + counter(m) + comparator(m);
            let output_side = counter(m);
            (input_side + output_side) * n
                + ResourceCount {
                    cas_blocks: cas_count(n as usize)?,
                    ..Default::default()
                }
        }
    })
}

pub fn gate_equiv(rc: &ResourceCount, w: &WeightSet) -> f64 {
    rc.registers_bits as f64 * w.register_bit
        + rc.adder_bits as f64 * w.adder_bit
        + rc.comparator_bits as f64 * w.comparator_bit
        + rc.or_inputs as f64 * w.or_input
        + rc.encoder_inputs as f64 * w.encoder_input
        + rc.mux_inputs as f64 * w.mux_input
        + rc.cas_blocks as f64 * w.cas_block
}

pub fn score(arch: Architecture, n: usize, m: u32, w: &WeightSet) -> Result<f64> {
    Ok(gate_equiv(&resources(arch, n, m)?, w))
}

/// One row of the comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostRow {
    pub n: usize,
    pub m: u32,
    pub proposed_min: f64,
    pub prior_max: f64,
    pub unary_batcher: Option<f64>,
    pub cas_blocks: Option<u64>,
}

impl CostRow {
    pub fn proposed_below_prior(&self) -> bool {
        self.proposed_min < self.prior_max
    }

    pub fn prior_below_batcher(&self) -> Option<bool> {
        self.unary_batcher.map(|b| self.prior_max < b)
    }
}

/// Scores every `(n, m)` grid point. The network column is empty where `n`
/// is not a power of two.
pub fn cost_table(ns: &[usize], ms: &[u32], w: &WeightSet) -> Result<Vec<CostRow>> {
    w.validate()?;
    let mut rows = Vec::with_capacity(ns.len() * ms.len());
    for &n in ns {
        for &m in ms {
            let batcher = if n.is_power_of_two() {
                Some(score(Architecture::UnaryBatcher, n, m, w)?)
            } else {
                None
            };
            rows.push(CostRow {
                n,
                m,
                proposed_min: score(Architecture::ProposedMin, n, m, w)?,
                prior_max: score(Architecture::PriorMax, n, m, w)?,
                unary_batcher: batcher,
                cas_blocks: cas_count(n).ok(),
            });
        }
    }
    Ok(rows)
}

pub const COST_CSV_HEADER: [&str; 8] = [
    "n",
    "m",
    "proposed_min",
    "prior_max",
    "unary_batcher",
    "cas_blocks",
    "proposed_lt_prior",
    "prior_lt_batcher",
];

pub fn write_cost_csv<W: Write>(out: W, rows: &[CostRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COST_CSV_HEADER)?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.m.to_string(),
            format!("{:.1}", r.proposed_min),
            format!("{:.1}", r.prior_max),
            opt(r.unary_batcher.map(|b| format!("{b:.1}"))),
            opt(r.cas_blocks.map(|c| c.to_string())),
            r.proposed_below_prior().to_string(),
            opt(r.prior_below_batcher().map(|b| b.to_string())),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn batcher_cas_blocks() {
        let rc = resources(Architecture::UnaryBatcher, 8, 8).unwrap();
        assert_eq!(rc.cas_blocks, 24);
        assert_eq!(
            resources(Architecture::UnaryBatcher, 256, 8)
                .unwrap()
                .cas_blocks,
            4608
        );
        assert!(resources(Architecture::UnaryBatcher, 12, 8).is_err());
    }

    #[test]
    fn degenerate_configs_rejected() {
        assert!(matches!(
            resources(Architecture::ProposedMin, 1, 8),
            Err(Error::TooFewInputs(1))
        ));
        assert!(resources(Architecture::PriorMax, 8, 0).is_err());
    }

    #[test]
    fn hand_counted_small_config() {
        // N = 2, M = 3
        let min = resources(Architecture::ProposedMin, 2, 3).unwrap();
        assert_eq!(
            min,
            ResourceCount {
                // 2*(3+1) cfung + 4 elapsed + 4 ff/mask + 1 ctrl + 2 out ptr
                registers_bits: 8 + 4 + 4 + 1 + 2,
                // 2*3 decrement + 4 elapsed + 3 retrieval + 2 ds + 2 out ptr
                adder_bits: 6 + 4 + 3 + 2 + 2,
                comparator_bits: 0,
                or_inputs: 6,
                encoder_inputs: 2,
                mux_inputs: 6,
                cas_blocks: 0,
            }
        );
        let max = resources(Architecture::PriorMax, 2, 3).unwrap();
        assert_eq!(max.registers_bits, 12 + 4 + 1 + 2);
        assert_eq!(max.adder_bits, 6 + 2 + 2);
        assert_eq!(max.comparator_bits, 6);
    }

    #[test]
    fn gate_equiv_basics() {
        let w = WeightSet::default();
        assert_eq!(gate_equiv(&ResourceCount::default(), &w), 0.0);
        let rc = resources(Architecture::PriorMax, 16, 8).unwrap();
        let doubled = w.perturbed([2.0; 7]).unwrap();
        assert_eq!(gate_equiv(&rc, &doubled), 2.0 * gate_equiv(&rc, &w));
        assert!(w.perturbed([1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn proposed_beats_prior_at_n8_m32() {
        let w = WeightSet::default();
        assert!(
            score(Architecture::ProposedMin, 8, 32, &w).unwrap()
                < score(Architecture::PriorMax, 8, 32, &w).unwrap()
        );
    }

    #[test]
    fn grid_ordering_with_defaults() {
        let rows = cost_table(&GRID_N, &GRID_M, &WeightSet::default()).unwrap();
        assert_eq!(rows.len(), 18);
        for r in rows {
            assert!(r.proposed_below_prior(), "{r:?}");
            assert_eq!(r.prior_below_batcher(), Some(true), "{r:?}");
        }
    }

    #[test]
    fn monotone_in_n_and_m() {
        let w = WeightSet::default();
        for arch in Architecture::ALL {
            let ns: Vec<usize> = if arch == Architecture::UnaryBatcher {
                (1..=9).map(|k| 1 << k).collect()
            } else {
                (2..=300).collect()
            };
            for m in 1..=32 {
                let scores: Vec<f64> = ns.iter().map(|&n| score(arch, n, m, &w).unwrap()).collect();
                assert!(scores.windows(2).all(|p| p[0] <= p[1]), "{arch} m={m}");
            }
            for &n in &ns {
                let scores: Vec<f64> = (1..=32).map(|m| score(arch, n, m, &w).unwrap()).collect();
                assert!(scores.windows(2).all(|p| p[0] <= p[1]), "{arch} n={n}");
            }
        }
    }

    #[test]
    fn csv_shape() {
        let rows = cost_table(&[8], &[8], &WeightSet::default()).unwrap();
        let mut buf = Vec::new();
        write_cost_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], COST_CSV_HEADER.join(","));
        assert!(lines[1].starts_with("8,8,"));
        assert!(lines[1].contains(",24,true,true"));
    }

    /// Every corner of the `±spread` box around the default weights. Scores
    /// are linear in the weights, so the corners bound the whole box.
    fn weight_corners(spread: f64) -> impl Iterator<Item = WeightSet> {
        (0..128u32).map(move |c| {
            let f = std::array::from_fn(|i| {
                if c >> i & 1 == 1 {
                    1.0 + spread
                } else {
                    1.0 - spread
                }
            });
            WeightSet::default().perturbed(f).unwrap()
        })
    }

    fn ordered(n: usize, m: u32, w: &WeightSet) -> bool {
        let min = score(Architecture::ProposedMin, n, m, w).unwrap();
        let max = score(Architecture::PriorMax, n, m, w).unwrap();
        let net = score(Architecture::UnaryBatcher, n, m, w).unwrap();
        min < max && max < net
    }

    #[test]
    fn ordering_survives_half_weight_perturbation_from_n16() {
        for w in weight_corners(0.5) {
            for n in GRID_N.into_iter().filter(|&n| n >= 16) {
                for m in GRID_M {
                    assert!(ordered(n, m, &w), "n={n} m={m} {w:?}");
                }
            }
        }
    }

    #[test]
    fn n8_ordering_margin() {
        // At N = 8 the shared Elapsed_Cycle counter and retrieval adder are
        // amortised over few inputs: cheap registers and comparators with
        // expensive adders and OR inputs flip the first pair.
        let w = WeightSet::default()
            .perturbed([0.5, 1.5, 0.5, 1.5, 0.5, 0.5, 0.5])
            .unwrap();
        assert!(!ordered(8, 8, &w));
        for w in weight_corners(0.25) {
            for m in GRID_M {
                assert!(ordered(8, m, &w), "m={m} {w:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn ordering_with_random_weights_from_n16(
            factors in prop::array::uniform7(0.5f64..=1.5),
            n_idx in 1usize..GRID_N.len(),
            m_idx in 0usize..GRID_M.len(),
        ) {
            let w = WeightSet::default().perturbed(factors).unwrap();
            prop_assert!(ordered(GRID_N[n_idx], GRID_M[m_idx], &w));
        }
    }
}
