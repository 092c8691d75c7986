/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UNISORT_H
#define UNISORT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Architecture selector.
 */
typedef enum UsArch {
  US_ARCH_PROPOSED_MIN = 0,
  US_ARCH_PRIOR_MAX = 1,
  US_ARCH_UNARY_BATCHER = 2,
} UsArch;

/**
 * Status codes returned by every entry point.
 */
typedef enum UsStatus {
  US_STATUS_OK = 0,
  US_STATUS_NULL_POINTER = 1,
  US_STATUS_INVALID_ARGUMENT = 2,
  US_STATUS_BUFFER_TOO_SMALL = 3,
  US_STATUS_INCOMPLETE = 4,
  US_STATUS_INTERNAL = 5,
} UsStatus;

/**
 * Opaque cycle-level sorter.
 */
typedef struct UsEngine UsEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *us_last_error_message(void);

/**
 * Create an engine for `ProposedMin` or `PriorMax`. The network has no
 * cycle-level engine and is rejected.
 *
 * # Safety
 * `values` must point to `len` readable `u32`s; `out` must be writable.
 */
enum UsStatus us_engine_new(enum UsArch arch,
                            uint32_t width,
                            const uint32_t *values,
                            uintptr_t len,
                            struct UsEngine **out);

/**
 * Release an engine. Null is ignored.
 *
 * # Safety
 * `engine` must come from [`us_engine_new`] and not be used afterwards.
 */
void us_engine_free(struct UsEngine *engine);

/**
 * Advance one clock cycle.
 *
 * # Safety
 * `engine` must be a live handle.
 */
enum UsStatus us_engine_tick(struct UsEngine *engine);

/**
 * Tick until every output is written.
 *
 * # Safety
 * `engine` must be a live handle.
 */
enum UsStatus us_engine_run(struct UsEngine *engine);

/**
 * Writes 1 to `done` once all outputs are written, else 0.
 *
 * # Safety
 * `engine` must be a live handle; `done` must be writable.
 */
enum UsStatus us_engine_is_complete(const struct UsEngine *engine, uint8_t *done);

/**
 * Current value of the elapsed-cycle counter.
 *
 * # Safety
 * `engine` must be a live handle; `out` must be writable.
 */
enum UsStatus us_engine_elapsed_cycle(const struct UsEngine *engine, uint64_t *out);

/**
 * Clock cycles consumed, generation plus writes. Fails with
 * `Incomplete` before the run finishes.
 *
 * # Safety
 * `engine` must be a live handle; `out` must be writable.
 */
enum UsStatus us_engine_total_cycles(const struct UsEngine *engine, uint64_t *out);

/**
 * Copy the output memory into `out`. Unwritten slots are reported as
 * `Incomplete`.
 *
 * # Safety
 * `engine` must be a live handle; `out` must hold `cap` `u32`s.
 */
enum UsStatus us_engine_outputs(const struct UsEngine *engine, uint32_t *out, uintptr_t cap);

/**
 * Sort `len` values in one call. `ProposedMin` and `UnaryBatcher` produce
 * ascending order, `PriorMax` descending. `out` may alias `values`.
 *
 * # Safety
 * `values` must hold `len` `u32`s; `out` must hold `len` writable `u32`s.
 */
enum UsStatus us_sort(enum UsArch arch,
                      uint32_t width,
                      const uint32_t *values,
                      uintptr_t len,
                      uint32_t *out);

/**
 * Emit the CFUNG stream for `value` at width `width`, one byte per bit in
 * emission order. `cap` must be at least 2^width.
 *
 * # Safety
 * `out` must hold `cap` writable bytes.
 */
enum UsStatus us_cfung_generate(uint32_t value, uint32_t width, uint8_t *out, uintptr_t cap);

/**
 * Number of compare-and-swap blocks in the bitonic network for `n` lanes.
 *
 * # Safety
 * `out` must be writable.
 */
enum UsStatus us_cas_count(uintptr_t n, uint64_t *out);

/**
 * Gate-equivalent score. `weights` may be null for the defaults, or point
 * to 7 weights in `ResourceCount` field order.
 *
 * # Safety
 * `weights` is null or holds 7 `f64`s; `out` must be writable.
 */
enum UsStatus us_gate_equiv(enum UsArch arch,
                            uintptr_t n,
                            uint32_t width,
                            const double *weights,
                            double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNISORT_H */
