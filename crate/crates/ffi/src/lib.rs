// SPDX-License-Identifier: Apache-2.0

//! C ABI over the `unisort` simulator.
//!
//! Every function returns a [`UsStatus`]. On failure a description is kept
//! per thread and can be read with [`us_last_error_message`]. Engines are
//! opaque handles created by [`us_engine_new`] and released with
//! [`us_engine_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use unisort::cost::{score, WeightSet};
use unisort::sorter_max::{max_engine_load, MaxEngine};
use unisort::sorter_min::{engine_load, SortEngine};
use unisort::{
    batcher, bitstream, ung, values_from, Architecture, BinaryValue, Error, SorterConfig,
};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    Incomplete = 4,
    Internal = 5,
}

/// Architecture selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UsArch {
    ProposedMin = 0,
    PriorMax = 1,
    UnaryBatcher = 2,
}

impl From<UsArch> for Architecture {
    fn from(a: UsArch) -> Self {
        match a {
            UsArch::ProposedMin => Architecture::ProposedMin,
            UsArch::PriorMax => Architecture::PriorMax,
            UsArch::UnaryBatcher => Architecture::UnaryBatcher,
        }
    }
}

enum Inner {
    Min(SortEngine),
    Max(MaxEngine),
}

/// Opaque cycle-level sorter.
pub struct UsEngine {
    inner: Inner,
}

macro_rules! with_engine {
    ($e:expr, |$x:ident| $body:expr) => {
        match &$e.inner {
            Inner::Min($x) => $body,
            Inner::Max($x) => $body,
        }
    };
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: UsStatus, msg: impl Into<String>) -> UsStatus {
    set_error(msg);
    status
}

fn from_core(err: Error) -> UsStatus {
    let status = match err {
        Error::IncompleteTrace => UsStatus::Incomplete,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) | Error::NoDetection => UsStatus::Internal,
        _ => UsStatus::InvalidArgument,
    };
    fail(status, err.to_string())
}

fn guard(f: impl FnOnce() -> UsStatus) -> UsStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(UsStatus::Internal, "panic in unisort"))
}

unsafe fn input<'a>(values: *const u32, len: usize) -> Result<&'a [u32], UsStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if values.is_null() {
        return Err(fail(UsStatus::NullPointer, "values is null"));
    }
    Ok(slice::from_raw_parts(values, len))
}

fn to_values(raw: &[u32], width: u32) -> Result<Vec<BinaryValue>, UsStatus> {
    let raw: Vec<u64> = raw.iter().map(|&v| v as u64).collect();
    values_from(&raw, width).map_err(from_core)
}

/// Message for the last failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn us_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Create an engine for `ProposedMin` or `PriorMax`. The network has no
/// cycle-level engine and is rejected.
///
/// # Safety
/// `values` must point to `len` readable `u32`s; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn us_engine_new(
    arch: UsArch,
    width: u32,
    values: *const u32,
    len: usize,
    out: *mut *mut UsEngine,
) -> UsStatus {
    guard(|| {
        if out.is_null() {
            return fail(UsStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let values = match input(values, len).and_then(|raw| to_values(raw, width)) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let cfg = match SorterConfig::new(len, width) {
            Ok(c) => c,
            Err(e) => return from_core(e),
        };
        let inner = match arch {
            UsArch::ProposedMin => engine_load(&values, cfg).map(Inner::Min),
            UsArch::PriorMax => max_engine_load(&values, cfg).map(Inner::Max),
            UsArch::UnaryBatcher => {
                return fail(
                    UsStatus::InvalidArgument,
                    "unary-batcher has no cycle engine",
                )
            }
        };
        match inner {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(UsEngine { inner }));
                UsStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Release an engine. Null is ignored.
///
/// # Safety
/// `engine` must come from [`us_engine_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn us_engine_free(engine: *mut UsEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Advance one clock cycle.
///
/// # Safety
/// `engine` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn us_engine_tick(engine: *mut UsEngine) -> UsStatus {
    guard(|| {
        let Some(e) = engine.as_mut() else {
            return fail(UsStatus::NullPointer, "engine is null");
        };
        let r = match &mut e.inner {
            Inner::Min(x) => x.tick(),
            Inner::Max(x) => x.tick(),
        };
        r.map_or_else(from_core, |_| UsStatus::Ok)
    })
}

/// Tick until every output is written.
///
/// # Safety
/// `engine` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn us_engine_run(engine: *mut UsEngine) -> UsStatus {
    guard(|| {
        let Some(e) = engine.as_mut() else {
            return fail(UsStatus::NullPointer, "engine is null");
        };
        loop {
            let done = with_engine!(e, |x| x.is_complete());
            if done {
                return UsStatus::Ok;
            }
            let r = match &mut e.inner {
                Inner::Min(x) => x.tick(),
                Inner::Max(x) => x.tick(),
            };
            if let Err(err) = r {
                return from_core(err);
            }
        }
    })
}

/// Writes 1 to `done` once all outputs are written, else 0.
///
/// # Safety
/// `engine` must be a live handle; `done` must be writable.
#[no_mangle]
pub unsafe extern "C" fn us_engine_is_complete(engine: *const UsEngine, done: *mut u8) -> UsStatus {
    let (Some(e), false) = (engine.as_ref(), done.is_null()) else {
        return fail(UsStatus::NullPointer, "null argument");
    };
    *done = with_engine!(e, |x| x.is_complete()) as u8;
    UsStatus::Ok
}

/// Current value of the elapsed-cycle counter.
///
/// # Safety
/// `engine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn us_engine_elapsed_cycle(
    engine: *const UsEngine,
    out: *mut u64,
) -> UsStatus {
    let (Some(e), false) = (engine.as_ref(), out.is_null()) else {
        return fail(UsStatus::NullPointer, "null argument");
    };
    *out = with_engine!(e, |x| x.elapsed_cycle());
    UsStatus::Ok
}

/// Clock cycles consumed, generation plus writes. Fails with
/// `Incomplete` before the run finishes.
///
/// # Safety
/// `engine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn us_engine_total_cycles(
    engine: *const UsEngine,
    out: *mut u64,
) -> UsStatus {
    let (Some(e), false) = (engine.as_ref(), out.is_null()) else {
        return fail(UsStatus::NullPointer, "null argument");
    };
    match with_engine!(e, |x| x.trace().total_cycles()) {
        Ok(c) => {
            *out = c;
            UsStatus::Ok
        }
        Err(err) => from_core(err),
    }
}

/// Copy the output memory into `out`. Unwritten slots are reported as
/// `Incomplete`.
///
/// # Safety
/// `engine` must be a live handle; `out` must hold `cap` `u32`s.
#[no_mangle]
pub unsafe extern "C" fn us_engine_outputs(
    engine: *const UsEngine,
    out: *mut u32,
    cap: usize,
) -> UsStatus {
    let Some(e) = engine.as_ref() else {
        return fail(UsStatus::NullPointer, "engine is null");
    };
    let outputs = with_engine!(e, |x| x.outputs());
    if cap < outputs.len() {
        return fail(
            UsStatus::BufferTooSmall,
            format!("need {} slots, got {cap}", outputs.len()),
        );
    }
    if out.is_null() {
        return fail(UsStatus::NullPointer, "out is null");
    }
    let Some(vals): Option<Vec<u32>> = outputs.iter().map(|o| o.map(|v| v.value())).collect()
    else {
        return fail(UsStatus::Incomplete, "outputs not yet written");
    };
    slice::from_raw_parts_mut(out, vals.len()).copy_from_slice(&vals);
    UsStatus::Ok
}

/// Sort `len` values in one call. `ProposedMin` and `UnaryBatcher` produce
/// ascending order, `PriorMax` descending. `out` may alias `values`.
///
/// # Safety
/// `values` must hold `len` `u32`s; `out` must hold `len` writable `u32`s.
#[no_mangle]
pub unsafe extern "C" fn us_sort(
    arch: UsArch,
    width: u32,
    values: *const u32,
    len: usize,
    out: *mut u32,
) -> UsStatus {
    guard(|| {
        let values = match input(values, len).and_then(|raw| to_values(raw, width)) {
            Ok(v) => v,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(UsStatus::NullPointer, "out is null");
        }
        match unisort::run_architecture(arch.into(), &values, width) {
            Ok(o) => {
                let dst = slice::from_raw_parts_mut(out, len);
                for (d, v) in dst.iter_mut().zip(&o.sorted) {
                    *d = v.value();
                }
                UsStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Emit the CFUNG stream for `value` at width `width`, one byte per bit in
/// emission order. `cap` must be at least 2^width.
///
/// # Safety
/// `out` must hold `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn us_cfung_generate(
    value: u32,
    width: u32,
    out: *mut u8,
    cap: usize,
) -> UsStatus {
    guard(|| {
        let v = match BinaryValue::new(value as u64, width) {
            Ok(v) => v,
            Err(e) => return from_core(e),
        };
        let need = bitstream::stream_len(width) as usize;
        if cap < need {
            return fail(
                UsStatus::BufferTooSmall,
                format!("need {need} bytes, got {cap}"),
            );
        }
        if out.is_null() {
            return fail(UsStatus::NullPointer, "out is null");
        }
        let dst = slice::from_raw_parts_mut(out, need);
        for (d, &b) in dst.iter_mut().zip(ung::cfung_generate(v).bits()) {
            *d = b as u8;
        }
        UsStatus::Ok
    })
}

/// Number of compare-and-swap blocks in the bitonic network for `n` lanes.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn us_cas_count(n: usize, out: *mut u64) -> UsStatus {
    if out.is_null() {
        return fail(UsStatus::NullPointer, "out is null");
    }
    match batcher::cas_count(n) {
        Ok(c) => {
            *out = c;
            UsStatus::Ok
        }
        Err(e) => from_core(e),
    }
}

/// Gate-equivalent score. `weights` may be null for the defaults, or point
/// to 7 weights in `ResourceCount` field order.
///
/// # Safety
/// `weights` is null or holds 7 `f64`s; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn us_gate_equiv(
    arch: UsArch,
    n: usize,
    width: u32,
    weights: *const f64,
    out: *mut f64,
) -> UsStatus {
    guard(|| {
        if out.is_null() {
            return fail(UsStatus::NullPointer, "out is null");
        }
        let w = if weights.is_null() {
            WeightSet::default()
        } else {
            let mut arr = [0.0; 7];
            arr.copy_from_slice(slice::from_raw_parts(weights, 7));
            match WeightSet::from_array(arr) {
                Ok(w) => w,
                Err(e) => return from_core(e),
            }
        };
        match score(arch.into(), n, width, &w) {
            Ok(s) => {
                *out = s;
                UsStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}
