//! C interface. Knots are opaque `SlKnot` handles; every call returns an
//! `SlStatus` and writes results through out-pointers. After a failure,
//! `sl_last_error_message` returns the message for the calling thread.
//! Strings handed out by this library are released with `sl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sliceness::etacalc::SatelliteKnot;
use sliceness::knotfile::KnotFile;
use sliceness::linkform::{linking_form, metabolizers_bounded};
use sliceness::matrix::Matrix;
use num_rational::Rational64;
use sliceness::obstruct::{obstruct_knot, reproduce_example, Config, Mode};
use sliceness::seifert::{IntegralValue, SeifertMatrix, SeifertSum};
use sliceness::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidMatrix = 4,
    InfiniteCover = 5,
    BoundExceeded = 6,
    NotExact = 7,
    Compute = 8,
    Panic = 9,
}

/// Opaque knot handle.
pub struct SlKnot {
    label: String,
    sum: SeifertSum,
    sat: SatelliteKnot,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SlStatus {
    match e {
        Error::Parse(_) | Error::Io(_) => SlStatus::Parse,
        Error::InvalidSeifert { .. } => SlStatus::InvalidMatrix,
        Error::InfiniteCover(_) => SlStatus::InfiniteCover,
        Error::EnumerationBound(_) | Error::FactorizationBound { .. } => SlStatus::BoundExceeded,
        _ => SlStatus::Compute,
    }
}

enum Fail {
    Status(SlStatus, String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err(Fail::Status(s, m))) => {
            set_error(m);
            s
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            SlStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(SlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(SlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn knot_ref<'a>(k: *const SlKnot) -> Result<&'a SlKnot, Fail> {
    k.as_ref().ok_or_else(|| null("knot"))
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = v;
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn boxed(label: String, sum: SeifertSum, sat: SatelliteKnot) -> *mut SlKnot {
    Box::into_raw(Box::new(SlKnot { label, sum, sat }))
}

/// Message of the last failed call on this thread, or null. Free with
/// `sl_string_free`.
#[no_mangle]
pub extern "C" fn sl_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Knot from a row-major `n×n` Seifert matrix.
///
/// # Safety
/// `entries` must point to `n*n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_knot_from_matrix(entries: *const i64, n: usize, out: *mut *mut SlKnot) -> SlStatus {
    guard(|| {
        if entries.is_null() && n > 0 {
            return Err(null("entries"));
        }
        let flat = if n == 0 { &[][..] } else { std::slice::from_raw_parts(entries, n * n) };
        let rows: Vec<Vec<i64>> = flat.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
        let a = SeifertMatrix::named(Matrix::from_rows(&rows), Some("input"))?;
        let sat = SatelliteKnot::new(sliceness::etacalc::Orbit::plain(a.clone()), Vec::new());
        write(out, boxed("input".into(), SeifertSum::single("input", a), sat), "out")
    })
}

/// Knot by name from the bundled library, or from `json` (a knot file
/// merged over the library) when `json` is not null.
///
/// # Safety
/// `name` must be a nul-terminated string, `json` null or nul-terminated,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_knot_from_library(
    name: *const c_char,
    json: *const c_char,
    out: *mut *mut SlKnot,
) -> SlStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let mut lib = KnotFile::bundled()?;
        if !json.is_null() {
            lib = lib.merge(read_str(json, "json")?)?;
        }
        let k = lib.knot(name)?;
        write(out, boxed(name.into(), k.seifert_sum(name), k.as_satellite()?), "out")
    })
}

/// # Safety
/// `k` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_knot_free(k: *mut SlKnot) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Normalized Alexander polynomial as text. Free with `sl_string_free`.
///
/// # Safety
/// `k` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_alexander(k: *const SlKnot, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let k = knot_ref(k)?;
        write(out, owned(k.sum.alexander().to_string()), "out")
    })
}

/// # Safety
/// `k` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_arf(k: *const SlKnot, out: *mut i32) -> SlStatus {
    guard(|| {
        let k = knot_ref(k)?;
        write(out, if k.sum.arf_zero_solvable() { 0 } else { 1 }, "out")
    })
}

/// Levine–Tristram signature at `e^{2πi p/q}`.
///
/// # Safety
/// `k` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_signature_at(k: *const SlKnot, p: i64, q: i64, out: *mut i64) -> SlStatus {
    guard(|| {
        let k = knot_ref(k)?;
        if q <= 0 {
            return Err(Fail::Status(SlStatus::Compute, "denominator must be positive".into()));
        }
        write(out, k.sum.signature_at_turn(Rational64::new(p, q))?, "out")
    })
}

/// Exact circle integral of the signature as `num/den`; `SL_STATUS_NOT_EXACT`
/// when only an enclosure is available.
///
/// # Safety
/// `k` must be a live handle, `num` and `den` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_signature_integral(k: *const SlKnot, num: *mut i64, den: *mut i64) -> SlStatus {
    guard(|| {
        let k = knot_ref(k)?;
        let v = k.sum.integral()?;
        let IntegralValue::Exact(r) = v else {
            return Err(Fail::Status(SlStatus::NotExact, format!("integral known only as {v}")));
        };
        let conv = |x: &num_bigint::BigInt| {
            i64::try_from(x).map_err(|_| Fail::Status(SlStatus::BoundExceeded, "integral does not fit in i64".into()))
        };
        write(num, conv(r.numer())?, "num")?;
        write(den, conv(r.denom())?, "den")
    })
}

/// `|H_1(L_k)|`.
///
/// # Safety
/// `k` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_cover_order(k: *const SlKnot, level: u32, out: *mut u64) -> SlStatus {
    guard(|| {
        let k = knot_ref(k)?;
        let g = sliceness::covers::cover_group(&k.sum.materialize(), level)?;
        let o = g.order_u64().ok_or(Error::InfiniteCover(level))?;
        write(out, o, "out")
    })
}

/// Number of metabolizers of the linking form on `H_1(L_k)`.
///
/// # Safety
/// `k` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_metabolizer_count(k: *const SlKnot, level: u32, out: *mut usize) -> SlStatus {
    guard(|| {
        let k = knot_ref(k)?;
        let f = linking_form(&k.sum.materialize(), level)?;
        let n = metabolizers_bounded(&f, Config::default().max_group)?.len();
        write(out, n, "out")
    })
}

/// Runs the obstruction pipeline (`mode` is `slice`, `ribbon`, `tensor` or
/// `doubly`) at the default levels and bounds. Writes the JSON report and
/// the exit code (0 none, 2 obstruction certified).
///
/// # Safety
/// `k` must be a live handle, `mode` nul-terminated, outputs writable.
#[no_mangle]
pub unsafe extern "C" fn sl_obstruct_json(
    k: *const SlKnot,
    mode: *const c_char,
    out_json: *mut *mut c_char,
    out_code: *mut i32,
) -> SlStatus {
    guard(|| {
        let k = knot_ref(k)?;
        let mode: Mode = read_str(mode, "mode")?.parse()?;
        let r = obstruct_knot(&k.label, &k.sum, &k.sat, mode, &[], &Config::default())?;
        let json = serde_json::to_string(&r).map_err(|e| Fail::Status(SlStatus::Compute, e.to_string()))?;
        write(out_code, r.exit_code(), "out_code")?;
        write(out_json, owned(json), "out_json")
    })
}

/// Reproduces canned example `n` (1 to 5); `out_passed` is 1 when every
/// comparison passes or matches a recorded discrepancy.
///
/// # Safety
/// Outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_reproduce_json(n: u32, out_json: *mut *mut c_char, out_passed: *mut i32) -> SlStatus {
    guard(|| {
        let r = reproduce_example(n)?;
        let json = serde_json::to_string(&r).map_err(|e| Fail::Status(SlStatus::Compute, e.to_string()))?;
        write(out_passed, r.checks_passed() as i32, "out_passed")?;
        write(out_json, owned(json), "out_json")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn take(s: *mut c_char) -> String {
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        sl_string_free(s);
        out
    }

    #[test]
    fn matrix_round_trip() {
        unsafe {
            let mut k = ptr::null_mut();
            assert_eq!(sl_knot_from_matrix([1, 1, 0, 1].as_ptr(), 2, &mut k), SlStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(sl_alexander(k, &mut s), SlStatus::Ok);
            assert_eq!(take(s), "1 - t + t^2");
            let mut arf = -1;
            assert_eq!(sl_arf(k, &mut arf), SlStatus::Ok);
            assert_eq!(arf, 1);
            let mut sig = 0;
            assert_eq!(sl_signature_at(k, 1, 2, &mut sig), SlStatus::Ok);
            assert_eq!(sig, 2);
            let (mut n, mut d) = (0, 0);
            assert_eq!(sl_signature_integral(k, &mut n, &mut d), SlStatus::Ok);
            assert_eq!((n, d), (4, 3));
            let mut order = 0;
            assert_eq!(sl_cover_order(k, 2, &mut order), SlStatus::Ok);
            assert_eq!(order, 3);
            assert_eq!(sl_cover_order(k, 6, &mut order), SlStatus::InfiniteCover);
            let mut count = 7;
            assert_eq!(sl_metabolizer_count(k, 2, &mut count), SlStatus::Ok);
            assert_eq!(count, 0);
            let mode = CString::new("doubly").unwrap();
            let (mut json, mut code) = (ptr::null_mut(), -1);
            assert_eq!(sl_obstruct_json(k, mode.as_ptr(), &mut json, &mut code), SlStatus::Ok);
            assert_eq!(code, 2);
            let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
            assert_eq!(v["knot"], "input");
            sl_knot_free(k);
        }
    }

    #[test]
    fn errors_and_library() {
        unsafe {
            let mut k = ptr::null_mut();
            assert_eq!(sl_knot_from_matrix([1, 0, 0, 1].as_ptr(), 2, &mut k), SlStatus::InvalidMatrix);
            assert!(take(sl_last_error_message()).contains("det"));
            assert_eq!(sl_arf(ptr::null(), ptr::null_mut()), SlStatus::NullPointer);
            let name = CString::new("B1").unwrap();
            assert_eq!(sl_knot_from_library(name.as_ptr(), ptr::null(), &mut k), SlStatus::Ok);
            let mut sig = 5;
            assert_eq!(sl_signature_at(k, 1, 6, &mut sig), SlStatus::Ok);
            assert_eq!(sig, -1);
            sl_knot_free(k);
            let missing = CString::new("nope").unwrap();
            assert_eq!(sl_knot_from_library(missing.as_ptr(), ptr::null(), &mut k), SlStatus::Parse);
            let (mut json, mut passed) = (ptr::null_mut(), 0);
            assert_eq!(sl_reproduce_json(1, &mut json, &mut passed), SlStatus::Ok);
            assert_eq!(passed, 1);
            sl_string_free(json);
        }
    }
}
