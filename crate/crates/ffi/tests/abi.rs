// SPDX-License-Identifier: Apache-2.0

use std::ffi::CStr;
use std::ptr;

use unisort_ffi::*;

fn last_error() -> String {
    let p = us_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn engine_round_trip() {
    let input = [4u32, 6, 4];
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(
            us_engine_new(UsArch::ProposedMin, 3, input.as_ptr(), 3, &mut e),
            UsStatus::Ok
        );
        let mut done = 1u8;
        assert_eq!(us_engine_is_complete(e, &mut done), UsStatus::Ok);
        assert_eq!(done, 0);
        let mut cycles = 0;
        assert_eq!(us_engine_total_cycles(e, &mut cycles), UsStatus::Incomplete);

        for _ in 0..5 {
            assert_eq!(us_engine_tick(e), UsStatus::Ok);
        }
        let mut elapsed = 0;
        us_engine_elapsed_cycle(e, &mut elapsed);
        assert_eq!(elapsed, 5);

        assert_eq!(us_engine_run(e), UsStatus::Ok);
        let mut out = [0u32; 3];
        assert_eq!(us_engine_outputs(e, out.as_mut_ptr(), 3), UsStatus::Ok);
        assert_eq!(out, [4, 4, 6]);
        assert_eq!(us_engine_total_cycles(e, &mut cycles), UsStatus::Ok);
        assert_eq!(cycles, 10);
        us_engine_free(e);
    }
}

#[test]
fn outputs_before_completion() {
    let input = [1u32, 2];
    let mut e = ptr::null_mut();
    unsafe {
        us_engine_new(UsArch::PriorMax, 2, input.as_ptr(), 2, &mut e);
        let mut out = [0u32; 2];
        assert_eq!(
            us_engine_outputs(e, out.as_mut_ptr(), 1),
            UsStatus::BufferTooSmall
        );
        assert_eq!(
            us_engine_outputs(e, out.as_mut_ptr(), 2),
            UsStatus::Incomplete
        );
        us_engine_run(e);
        assert_eq!(us_engine_outputs(e, out.as_mut_ptr(), 2), UsStatus::Ok);
        assert_eq!(out, [2, 1]);
        us_engine_free(e);
    }
}

#[test]
fn sort_all_architectures() {
    let input = [200u32, 3, 77, 3, 255, 0, 128, 9];
    let mut asc = input;
    asc.sort_unstable();
    for arch in [UsArch::ProposedMin, UsArch::PriorMax, UsArch::UnaryBatcher] {
        let mut out = [0u32; 8];
        let st = unsafe { us_sort(arch, 8, input.as_ptr(), 8, out.as_mut_ptr()) };
        assert_eq!(st, UsStatus::Ok);
        if arch == UsArch::PriorMax {
            out.reverse();
        }
        assert_eq!(out, asc, "{arch:?}");
    }
}

#[test]
fn sort_in_place() {
    let mut buf = [5u32, 1, 7, 3];
    let p = buf.as_mut_ptr();
    assert_eq!(
        unsafe { us_sort(UsArch::ProposedMin, 3, p, 4, p) },
        UsStatus::Ok
    );
    assert_eq!(buf, [1, 3, 5, 7]);
}

#[test]
fn invalid_arguments_set_message() {
    let input = [9u32, 1];
    let mut e = ptr::null_mut();
    let st = unsafe { us_engine_new(UsArch::ProposedMin, 3, input.as_ptr(), 2, &mut e) };
    assert_eq!(st, UsStatus::InvalidArgument);
    assert!(e.is_null());
    assert!(last_error().contains("not representable"));

    let st = unsafe { us_engine_new(UsArch::UnaryBatcher, 3, input.as_ptr(), 2, &mut e) };
    assert_eq!(st, UsStatus::InvalidArgument);

    let st = unsafe { us_engine_new(UsArch::ProposedMin, 3, ptr::null(), 2, &mut e) };
    assert_eq!(st, UsStatus::NullPointer);

    let mut out = [0u32; 3];
    let st = unsafe {
        us_sort(
            UsArch::UnaryBatcher,
            3,
            [1u32, 2, 3].as_ptr(),
            3,
            out.as_mut_ptr(),
        )
    };
    assert_eq!(st, UsStatus::InvalidArgument);
    unsafe { us_engine_free(ptr::null_mut()) };
}

#[test]
fn cfung_stream() {
    let mut bits = [9u8; 8];
    assert_eq!(
        unsafe { us_cfung_generate(3, 3, bits.as_mut_ptr(), 8) },
        UsStatus::Ok
    );
    assert_eq!(bits, [1, 1, 1, 0, 0, 0, 0, 0]);
    assert_eq!(
        unsafe { us_cfung_generate(3, 3, bits.as_mut_ptr(), 7) },
        UsStatus::BufferTooSmall
    );
}

#[test]
fn network_and_cost() {
    let mut c = 0;
    assert_eq!(unsafe { us_cas_count(256, &mut c) }, UsStatus::Ok);
    assert_eq!(c, 4608);
    assert_eq!(
        unsafe { us_cas_count(12, &mut c) },
        UsStatus::InvalidArgument
    );

    let (mut min, mut max, mut net) = (0.0, 0.0, 0.0);
    unsafe {
        us_gate_equiv(UsArch::ProposedMin, 64, 16, ptr::null(), &mut min);
        us_gate_equiv(UsArch::PriorMax, 64, 16, ptr::null(), &mut max);
        us_gate_equiv(UsArch::UnaryBatcher, 64, 16, ptr::null(), &mut net);
    }
    assert!(min < max && max < net);

    let ones = [1.0; 7];
    let mut s = 0.0;
    assert_eq!(
        unsafe { us_gate_equiv(UsArch::ProposedMin, 8, 8, ones.as_ptr(), &mut s) },
        UsStatus::Ok
    );
    assert!(s > 0.0);
    let bad = [-1.0; 7];
    assert_eq!(
        unsafe { us_gate_equiv(UsArch::ProposedMin, 8, 8, bad.as_ptr(), &mut s) },
        UsStatus::InvalidArgument
    );
}
