use std::ffi::{c_char, CStr};
use std::ptr;

use whiteman_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { wht_string_free(s) };
    owned
}

fn new_seq(p: u64, q: u64) -> *mut WhtSequence {
    let mut seq = ptr::null_mut();
    let st = unsafe { wht_sequence_new(p, q, 0, true, &mut seq) };
    assert_eq!(st, WhtStatus::Ok);
    seq
}

#[test]
fn handle_lifecycle_and_bits() {
    let seq = new_seq(5, 3);
    unsafe {
        assert_eq!(wht_sequence_period(seq), 15);
        let mut params = WhtParams::default();
        assert_eq!(wht_sequence_params(seq, &mut params), WhtStatus::Ok);
        assert_eq!((params.n, params.g, params.e), (15, 2, 4));

        let mut small = [0u8; 4];
        assert_eq!(
            wht_sequence_bits(seq, small.as_mut_ptr(), small.len()),
            WhtStatus::BufferTooSmall
        );
        let mut buf = [9u8; 15];
        assert_eq!(
            wht_sequence_bits(seq, buf.as_mut_ptr(), buf.len()),
            WhtStatus::Ok
        );
        let s: String = buf.iter().map(|b| char::from(b'0' + b)).collect();
        assert_eq!(s, "000000110111011");
        wht_sequence_free(seq);
    }
}

#[test]
fn invalid_parameters_map_to_codes() {
    let mut seq = ptr::null_mut();
    let st = unsafe { wht_sequence_new(7, 5, 0, true, &mut seq) };
    assert_eq!(st, WhtStatus::CongruenceViolation);
    assert!(seq.is_null());
    let msg = unsafe { CStr::from_ptr(wht_status_message(st)) };
    assert_eq!(msg.to_str().unwrap(), "congruence-violation");

    assert_eq!(
        unsafe { wht_sequence_new(9, 7, 0, false, &mut seq) },
        WhtStatus::NotPrime
    );
    assert_eq!(
        unsafe { wht_sequence_new(5, 3, 0, true, ptr::null_mut()) },
        WhtStatus::NullPointer
    );
    assert_eq!(unsafe { wht_sequence_period(ptr::null()) }, 0);
}

#[test]
fn adic_summary() {
    let seq = new_seq(5, 7);
    let mut out = WhtAdicSummary {
        phi2: 0,
        lower_bound: 0,
        is_maximal: false,
        gcd_is_one: false,
        theorem1: WhtVerdict::Fails,
        theorem2: WhtVerdict::Fails,
    };
    unsafe {
        assert_eq!(wht_two_adic_complexity(seq, &mut out), WhtStatus::Ok);
        wht_sequence_free(seq);
    }
    assert_eq!(out.phi2, 35);
    assert_eq!(out.lower_bound, 22);
    assert!(out.is_maximal && out.gcd_is_one);
    assert_eq!(out.theorem2, WhtVerdict::Holds);
}

#[test]
fn json_reports() {
    let seq = new_seq(5, 3);
    for f in [wht_analyze_json, wht_spectrum_json, wht_det_json] {
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { f(seq, &mut s) }, WhtStatus::Ok);
        let text = take_string(s);
        assert!(text.starts_with('{'), "{text}");
        assert!(text.contains("\"version\""));
    }
    let mut s = ptr::null_mut();
    unsafe { wht_analyze_json(seq, &mut s) };
    assert!(take_string(s).contains("\"phi2\": 15"));
    unsafe { wht_sequence_free(seq) };
}

#[test]
fn table_csv() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wht_table_csv(&mut s) }, WhtStatus::Ok);
    let csv = take_string(s);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("p,q,phi2,lower_bound,maximal,matched_sign")
    );
    assert_eq!(lines.count(), 10);
}

#[test]
fn raa_via_abi() {
    let bits: Vec<u8> = (0..16).map(|i| (i % 2) as u8).collect();
    let (mut m, mut n) = (ptr::null_mut(), ptr::null_mut());
    let st = unsafe { wht_raa_synthesize(bits.as_ptr(), bits.len(), &mut m, &mut n) };
    assert_eq!(st, WhtStatus::Ok);
    // 0101... = 2 / (1 - 4) as a 2-adic integer
    assert_eq!(
        (take_string(m), take_string(n)),
        ("-2".to_owned(), "3".to_owned())
    );

    let st = unsafe { wht_raa_synthesize(bits.as_ptr(), 1, &mut m, &mut n) };
    assert_eq!(st, WhtStatus::PrefixTooShort);
    assert!(m.is_null() && n.is_null());
}
