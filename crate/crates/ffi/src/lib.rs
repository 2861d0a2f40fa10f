//! C ABI over the `whiteman` crate.
//!
//! Sequences live behind an opaque `WhtSequence` handle. Every fallible call
//! returns a `WhtStatus`; strings handed out by the library must be released
//! with [`wht_string_free`], handles with [`wht_sequence_free`].

use std::ffi::{c_char, CString};
use std::ptr;

use whiteman::adic::{self, raa_synthesize, Verdict};
use whiteman::cli;
use whiteman::numtheory::ParamError;
use whiteman::{Error, Instance};

/// Opaque handle: validated parameters, partition and one period.
pub struct WhtSequence {
    inner: Instance,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhtStatus {
    Ok = 0,
    NullPointer = 1,
    BufferTooSmall = 2,
    VerificationFailed = 3,
    NotPrime = 10,
    EqualPrimes = 11,
    EvenPrime = 12,
    GcdNotTwo = 13,
    CongruenceViolation = 14,
    TooLarge = 15,
    NotPrimitiveRoot = 16,
    NoCommonRoot = 17,
    OddE = 18,
    NotCoprime = 19,
    DeterminantCap = 20,
    NotStrict = 21,
    PrefixTooShort = 22,
    BadBit = 23,
    Internal = 99,
}

impl From<&Error> for WhtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Params(p) => match p {
                ParamError::NotPrime(_) => WhtStatus::NotPrime,
                ParamError::EqualPrimes(_) => WhtStatus::EqualPrimes,
                ParamError::EvenPrime => WhtStatus::EvenPrime,
                ParamError::GcdNotTwo(_) => WhtStatus::GcdNotTwo,
                ParamError::CongruenceViolation { .. } => WhtStatus::CongruenceViolation,
                ParamError::TooLarge(_) => WhtStatus::TooLarge,
                ParamError::NotPrimitiveRoot { .. } => WhtStatus::NotPrimitiveRoot,
                ParamError::NoCommonRoot { .. } => WhtStatus::NoCommonRoot,
                ParamError::OddE(_) => WhtStatus::OddE,
                ParamError::NotCoprime { .. } => WhtStatus::NotCoprime,
            },
            Error::OutOfRange { .. } => WhtStatus::Internal,
            Error::DeterminantCap { .. } => WhtStatus::DeterminantCap,
            Error::NotStrict { .. } => WhtStatus::NotStrict,
            Error::PrefixTooShort(_) => WhtStatus::PrefixTooShort,
            Error::BadBit(_) => WhtStatus::BadBit,
        }
    }
}

/// Tri-state result of a gated check.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhtVerdict {
    Holds = 0,
    Fails = 1,
    NotApplicable = 2,
}

impl From<Verdict> for WhtVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Holds => WhtVerdict::Holds,
            Verdict::Fails => WhtVerdict::Fails,
            Verdict::NotApplicable => WhtVerdict::NotApplicable,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct WhtParams {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub g: u64,
    pub x: u64,
    pub e: u64,
    pub strict: bool,
    pub theorem1_applicable: bool,
    pub theorem2_applicable: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WhtAdicSummary {
    pub phi2: u64,
    pub lower_bound: u64,
    pub is_maximal: bool,
    /// `gcd(S(2), 2^N - 1) == 1`
    pub gcd_is_one: bool,
    pub theorem1: WhtVerdict,
    pub theorem2: WhtVerdict,
}

fn into_c_string(s: String) -> *mut c_char {
    // JSON and decimal output never contain interior NULs
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Static description of a status code. Never NULL; do not free.
#[no_mangle]
pub extern "C" fn wht_status_message(status: WhtStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        WhtStatus::Ok => b"ok\0",
        WhtStatus::NullPointer => b"null pointer argument\0",
        WhtStatus::BufferTooSmall => b"output buffer too small\0",
        WhtStatus::VerificationFailed => b"verification failed\0",
        WhtStatus::NotPrime => b"not-prime\0",
        WhtStatus::EqualPrimes => b"equal-primes\0",
        WhtStatus::EvenPrime => b"even-prime\0",
        WhtStatus::GcdNotTwo => b"gcd-not-two\0",
        WhtStatus::CongruenceViolation => b"congruence-violation\0",
        WhtStatus::TooLarge => b"too-large\0",
        WhtStatus::NotPrimitiveRoot => b"not-primitive-root\0",
        WhtStatus::NoCommonRoot => b"no-common-root\0",
        WhtStatus::OddE => b"odd-e\0",
        WhtStatus::NotCoprime => b"not-coprime\0",
        WhtStatus::DeterminantCap => b"determinant-cap\0",
        WhtStatus::NotStrict => b"not-strict\0",
        WhtStatus::PrefixTooShort => b"prefix-too-short\0",
        WhtStatus::BadBit => b"bad-bit\0",
        WhtStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Build the sequence for `(p, q)`. `g = 0` selects the smallest common
/// primitive root.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn wht_sequence_new(
    p: u64,
    q: u64,
    g: u64,
    strict: bool,
    out: *mut *mut WhtSequence,
) -> WhtStatus {
    if out.is_null() {
        return WhtStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let g = (g != 0).then_some(g);
    match Instance::new(p, q, g, strict) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(WhtSequence { inner }));
            WhtStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// # Safety
/// `seq` must be NULL or a handle from [`wht_sequence_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wht_sequence_free(seq: *mut WhtSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Period `N`, or 0 for a NULL handle.
///
/// # Safety
/// `seq` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wht_sequence_period(seq: *const WhtSequence) -> u64 {
    seq.as_ref().map_or(0, |s| s.inner.sequence.period() as u64)
}

/// # Safety
/// `seq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wht_sequence_params(
    seq: *const WhtSequence,
    out: *mut WhtParams,
) -> WhtStatus {
    let (Some(seq), false) = (seq.as_ref(), out.is_null()) else {
        return WhtStatus::NullPointer;
    };
    let pr = seq.inner.params();
    *out = WhtParams {
        p: pr.p,
        q: pr.q,
        n: pr.n,
        g: pr.g,
        x: pr.x,
        e: pr.e,
        strict: pr.strict,
        theorem1_applicable: pr.theorem1_applicable,
        theorem2_applicable: pr.theorem2_applicable,
    };
    WhtStatus::Ok
}

/// Copy one period (one byte per bit, index 0 first) into `buf`.
///
/// # Safety
/// `seq` must be a live handle and `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn wht_sequence_bits(
    seq: *const WhtSequence,
    buf: *mut u8,
    len: usize,
) -> WhtStatus {
    let (Some(seq), false) = (seq.as_ref(), buf.is_null()) else {
        return WhtStatus::NullPointer;
    };
    let bits = seq.inner.sequence.bits();
    if len < bits.len() {
        return WhtStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(bits.as_ptr(), buf, bits.len());
    WhtStatus::Ok
}

/// # Safety
/// `seq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wht_two_adic_complexity(
    seq: *const WhtSequence,
    out: *mut WhtAdicSummary,
) -> WhtStatus {
    let (Some(seq), false) = (seq.as_ref(), out.is_null()) else {
        return WhtStatus::NullPointer;
    };
    let rep = adic::two_adic_complexity(&seq.inner.sequence);
    *out = WhtAdicSummary {
        phi2: rep.phi2,
        lower_bound: rep.lower_bound.unwrap_or(0),
        is_maximal: rep.is_maximal,
        gcd_is_one: rep.gcd == 1u32.into(),
        theorem1: adic::check_theorem1(&rep).into(),
        theorem2: adic::check_theorem2(&rep).into(),
    };
    WhtStatus::Ok
}

unsafe fn json_call(
    seq: *const WhtSequence,
    out: *mut *mut c_char,
    f: fn(&Instance) -> cli::Outcome,
) -> WhtStatus {
    let (Some(seq), false) = (seq.as_ref(), out.is_null()) else {
        return WhtStatus::NullPointer;
    };
    *out = ptr::null_mut();
    let outcome = f(&seq.inner);
    if outcome.status == cli::EXIT_INVALID {
        return match cli_error_status(&outcome) {
            Some(s) => s,
            None => WhtStatus::Internal,
        };
    }
    *out = into_c_string(outcome.output);
    if outcome.status == cli::EXIT_OK {
        WhtStatus::Ok
    } else {
        WhtStatus::VerificationFailed
    }
}

fn cli_error_status(outcome: &cli::Outcome) -> Option<WhtStatus> {
    let msg = outcome.message.as_deref()?;
    msg.contains("determinant-cap")
        .then_some(WhtStatus::DeterminantCap)
}

/// `analyze` report as JSON. On `Ok` or `VerificationFailed`, `*out` holds a
/// string to release with [`wht_string_free`].
///
/// # Safety
/// `seq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wht_analyze_json(
    seq: *const WhtSequence,
    out: *mut *mut c_char,
) -> WhtStatus {
    json_call(seq, out, cli::analyze)
}

/// `spectrum` report as JSON.
///
/// # Safety
/// `seq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wht_spectrum_json(
    seq: *const WhtSequence,
    out: *mut *mut c_char,
) -> WhtStatus {
    json_call(seq, out, cli::spectrum)
}

/// `det` report as JSON (exact determinant, both closed-form branches).
///
/// # Safety
/// `seq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wht_det_json(seq: *const WhtSequence, out: *mut *mut c_char) -> WhtStatus {
    json_call(seq, out, cli::det)
}

/// The built-in results table as CSV.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wht_table_csv(out: *mut *mut c_char) -> WhtStatus {
    if out.is_null() {
        return WhtStatus::NullPointer;
    }
    let outcome = cli::run(&cli::RunConfig::new(cli::Command::Table));
    *out = into_c_string(outcome.output);
    match outcome.status {
        cli::EXIT_OK => WhtStatus::Ok,
        cli::EXIT_VERIFY => WhtStatus::VerificationFailed,
        _ => WhtStatus::Internal,
    }
}

/// Rational approximation of a bit prefix. `m` and `n` come back as decimal
/// strings (`n` positive and odd).
///
/// # Safety
/// `bits` must point to `len` readable bytes; `m_out` and `n_out` writable.
#[no_mangle]
pub unsafe extern "C" fn wht_raa_synthesize(
    bits: *const u8,
    len: usize,
    m_out: *mut *mut c_char,
    n_out: *mut *mut c_char,
) -> WhtStatus {
    if bits.is_null() || m_out.is_null() || n_out.is_null() {
        return WhtStatus::NullPointer;
    }
    *m_out = ptr::null_mut();
    *n_out = ptr::null_mut();
    let prefix: Vec<u8> = std::slice::from_raw_parts(bits, len)
        .iter()
        .map(|&b| (b != 0) as u8)
        .collect();
    match raa_synthesize(&prefix) {
        Ok(f) => {
            *m_out = into_c_string(f.m.to_string());
            *n_out = into_c_string(f.n.to_string());
            WhtStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wht_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
