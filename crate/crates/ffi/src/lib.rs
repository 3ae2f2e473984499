//! C ABI over `sinr-diagram`. Objects are opaque handles freed by their
//! `_free` function. Every fallible call returns a `SinrStatus`; on failure
//! `sinr_last_error_message` describes the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sinr_diagram::pointloc::{qds_build, CellTag, Qds, Scheme};
use sinr_diagram::sinr::{heard_station, is_heard, sinr, ReceptionTag};
use sinr_diagram::{Error, Network};

/// Opaque network handle.
pub struct SinrNetwork(Network);

/// Opaque point-location structure handle.
pub struct SinrQds(Qds);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    AtStation = 4,
    Unsupported = 5,
    Io = 6,
    Format = 7,
    Panic = 8,
}

/// Cell tags as returned by `sinr_qds_query`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinrTag {
    Minus = 0,
    Plus = 1,
    Question = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SinrStatus {
    match e {
        Error::Json(_) | Error::InvalidNetwork(_) => SinrStatus::Parse,
        Error::AtStation(_) => SinrStatus::AtStation,
        Error::UnsupportedAlpha(_) | Error::Unbounded(_) | Error::GridTooLarge { .. } => SinrStatus::Unsupported,
        Error::Io(_) => SinrStatus::Io,
        Error::Format(_) => SinrStatus::Format,
        _ => SinrStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SinrStatus, String)>) -> SinrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SinrStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SinrStatus::Panic
        }
    }
}

fn fail(e: Error) -> (SinrStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SinrStatus, String) {
    (SinrStatus::NullPointer, format!("{what} is null"))
}

unsafe fn point<'a>(p: *const f64, dim: usize) -> Result<&'a [f64], (SinrStatus, String)> {
    if p.is_null() {
        return Err(null("point"));
    }
    Ok(std::slice::from_raw_parts(p, dim))
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sinr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sinr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a network from NUL-terminated JSON.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sinr_network_from_json(json: *const c_char, out: *mut *mut SinrNetwork) -> SinrStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| (SinrStatus::Parse, "json is not UTF-8".into()))?;
        let net = Network::from_json(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(SinrNetwork(net)));
        Ok(())
    })
}

/// # Safety
/// `net` must come from `sinr_network_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sinr_network_free(net: *mut SinrNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinr_network_station_count(net: *const SinrNetwork, out: *mut usize) -> SinrStatus {
    guard(|| {
        let net = net.as_ref().ok_or_else(|| null("net"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = net.0.n();
        Ok(())
    })
}

/// SINR of station `station` at the `dim`-dimensional point.
///
/// # Safety
/// `point` must hold `dim` doubles; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinr_eval(
    net: *const SinrNetwork,
    station: usize,
    point_ptr: *const f64,
    dim: usize,
    out: *mut f64,
) -> SinrStatus {
    guard(|| {
        let net = &net.as_ref().ok_or_else(|| null("net"))?.0;
        let p = point(point_ptr, dim)?;
        net.check_station(station).map_err(fail)?;
        net.check_point(p).map_err(fail)?;
        *out.as_mut().ok_or_else(|| null("out"))? = sinr(net, station, p).map_err(fail)?;
        Ok(())
    })
}

/// # Safety
/// As for `sinr_eval`.
#[no_mangle]
pub unsafe extern "C" fn sinr_is_heard(
    net: *const SinrNetwork,
    station: usize,
    point_ptr: *const f64,
    dim: usize,
    out: *mut bool,
) -> SinrStatus {
    guard(|| {
        let net = &net.as_ref().ok_or_else(|| null("net"))?.0;
        let p = point(point_ptr, dim)?;
        net.check_station(station).map_err(fail)?;
        net.check_point(p).map_err(fail)?;
        *out.as_mut().ok_or_else(|| null("out"))? = is_heard(net, station, p);
        Ok(())
    })
}

/// Index of the station heard at the point, or -1 when none is.
///
/// # Safety
/// As for `sinr_eval`.
#[no_mangle]
pub unsafe extern "C" fn sinr_heard_station(
    net: *const SinrNetwork,
    point_ptr: *const f64,
    dim: usize,
    out: *mut i64,
) -> SinrStatus {
    guard(|| {
        let net = &net.as_ref().ok_or_else(|| null("net"))?.0;
        let p = point(point_ptr, dim)?;
        net.check_point(p).map_err(fail)?;
        *out.as_mut().ok_or_else(|| null("out"))? = match heard_station(net, p).tag {
            ReceptionTag::Heard(k) => k as i64,
            ReceptionTag::Silent => -1,
        };
        Ok(())
    })
}

/// Builds a QDS for `station`. `scheme` is 0 = A, 1 = B, 2 = C,
/// 3 = colinear. `extent` <= 0 means derive it from the noise.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinr_qds_build(
    net: *const SinrNetwork,
    station: usize,
    scheme: u8,
    epsilon: f64,
    extent: f64,
    out: *mut *mut SinrQds,
) -> SinrStatus {
    guard(|| {
        let net = &net.as_ref().ok_or_else(|| null("net"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let scheme = Scheme::from_code(scheme)
            .ok_or_else(|| (SinrStatus::InvalidArgument, format!("unknown scheme code {scheme}")))?;
        let extent = (extent > 0.0).then_some(extent);
        let q = qds_build(net, station, scheme, epsilon, extent).map_err(fail)?;
        *out = Box::into_raw(Box::new(SinrQds(q)));
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinr_qds_query(qds: *const SinrQds, x: f64, y: f64, out: *mut SinrTag) -> SinrStatus {
    guard(|| {
        let q = &qds.as_ref().ok_or_else(|| null("qds"))?.0;
        *out.as_mut().ok_or_else(|| null("out"))? = match q.query(&[x, y]) {
            CellTag::Minus => SinrTag::Minus,
            CellTag::Plus => SinrTag::Plus,
            CellTag::Question => SinrTag::Question,
        };
        Ok(())
    })
}

/// Serialises to a new buffer released with `sinr_buffer_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinr_qds_serialize(qds: *const SinrQds, buf: *mut *mut u8, len: *mut usize) -> SinrStatus {
    guard(|| {
        let q = &qds.as_ref().ok_or_else(|| null("qds"))?.0;
        if buf.is_null() || len.is_null() {
            return Err(null("output"));
        }
        let bytes = q.to_bytes().into_boxed_slice();
        *len = bytes.len();
        *buf = Box::into_raw(bytes) as *mut u8;
        Ok(())
    })
}

/// # Safety
/// `buf` and `len` must come from one `sinr_qds_serialize` call.
#[no_mangle]
pub unsafe extern "C" fn sinr_buffer_free(buf: *mut u8, len: usize) {
    if !buf.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(buf, len)));
    }
}

/// # Safety
/// `buf` must hold `len` bytes; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinr_qds_deserialize(buf: *const u8, len: usize, out: *mut *mut SinrQds) -> SinrStatus {
    guard(|| {
        if buf.is_null() {
            return Err(null("buf"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let q = Qds::from_bytes(std::slice::from_raw_parts(buf, len)).map_err(fail)?;
        *out = Box::into_raw(Box::new(SinrQds(q)));
        Ok(())
    })
}

/// # Safety
/// `qds` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sinr_qds_free(qds: *mut SinrQds) {
    if !qds.is_null() {
        drop(Box::from_raw(qds));
    }
}
