//! C interface: opaque cube and map handles, status codes, and a per-thread
//! last-error message.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use thermowave::datacube::{read_cube, write_cube, DataCube};
use thermowave::detector::{detect, DetectorConfig};
use thermowave::phantom::{generate_phantom, PhantomConfig};
use thermowave::{Error, Grid};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidString = 2,
    Format = 3,
    Truncation = 4,
    Data = 5,
    Io = 6,
    Bounds = 7,
    Config = 8,
    Catalog = 9,
    Level = 10,
    Degenerate = 11,
    Selection = 12,
    Shape = 13,
    Panic = 14,
}

impl From<&Error> for TwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Format(_) => TwStatus::Format,
            Error::Truncation { .. } => TwStatus::Truncation,
            Error::Data(_) => TwStatus::Data,
            Error::Io(_) => TwStatus::Io,
            Error::Bounds(_) => TwStatus::Bounds,
            Error::Config(_) => TwStatus::Config,
            Error::Catalog(_) => TwStatus::Catalog,
            Error::Level(_) => TwStatus::Level,
            Error::Degenerate(_) => TwStatus::Degenerate,
            Error::Selection(_) => TwStatus::Selection,
            Error::Shape(_) => TwStatus::Shape,
        }
    }
}

/// Thermal image sequence.
pub struct TwCube(DataCube);

/// Single 2D map of doubles, row-major.
pub struct TwMap(Grid);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TwStatus, msg: impl Into<String>) -> TwStatus {
    set_error(msg.into());
    status
}

fn guard(f: impl FnOnce() -> Result<(), TwStatus>) -> TwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(TwStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: thermowave::Result<T>) -> Result<T, TwStatus> {
    r.map_err(|e| fail(TwStatus::from(&e), e.to_string()))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, TwStatus> {
    if p.is_null() {
        return Err(fail(TwStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(TwStatus::InvalidString, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, TwStatus> {
    p.as_ref().ok_or_else(|| fail(TwStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, TwStatus> {
    p.as_mut().ok_or_else(|| fail(TwStatus::NullPointer, format!("{what} is null")))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn tw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Reads a TIC1 file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tw_cube_read(path: *const c_char, out: *mut *mut TwCube) -> TwStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let cube = lib(read_cube(text(path, "path")?))?;
        *out = Box::into_raw(Box::new(TwCube(cube)));
        Ok(())
    })
}

/// Writes a TIC1 file.
///
/// # Safety
/// `cube` must come from this library and `path` be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tw_cube_write(cube: *const TwCube, path: *const c_char) -> TwStatus {
    guard(|| {
        let cube = handle(cube, "cube")?;
        lib(write_cube(&cube.0, text(path, "path")?))
    })
}

/// Builds a cube from `nx*ny*nt` frame-major floats.
///
/// # Safety
/// `data` must point to `nx*ny*nt` readable floats; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tw_cube_from_data(
    nx: usize,
    ny: usize,
    nt: usize,
    te_s: f64,
    data: *const f32,
    out: *mut *mut TwCube,
) -> TwStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        if data.is_null() {
            return Err(fail(TwStatus::NullPointer, "data is null"));
        }
        let len = nx
            .checked_mul(ny)
            .and_then(|v| v.checked_mul(nt))
            .ok_or_else(|| fail(TwStatus::Config, "dimensions overflow"))?;
        let values = std::slice::from_raw_parts(data, len).to_vec();
        let cube = lib(DataCube::new(nx, ny, te_s, values, false))?;
        *out = Box::into_raw(Box::new(TwCube(cube)));
        Ok(())
    })
}

/// # Safety
/// `cube` must come from this library or be NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn tw_cube_free(cube: *mut TwCube) {
    if !cube.is_null() {
        drop(Box::from_raw(cube));
    }
}

/// # Safety
/// `cube` must come from this library; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tw_cube_dims(cube: *const TwCube, nx: *mut usize, ny: *mut usize, nt: *mut usize) -> TwStatus {
    guard(|| {
        let cube = handle(cube, "cube")?;
        *out_ptr(nx, "nx")? = cube.0.nx();
        *out_ptr(ny, "ny")? = cube.0.ny();
        *out_ptr(nt, "nt")? = cube.0.nt();
        Ok(())
    })
}

/// Standard synthetic panel with the given pulse length, seed and noise.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tw_phantom(te_s: f64, seed: u64, noise_sigma: f64, out: *mut *mut TwCube) -> TwStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let cfg = PhantomConfig { te_s, seed, noise_sigma, ..PhantomConfig::default() };
        let p = lib(generate_phantom(&cfg))?;
        *out = Box::into_raw(Box::new(TwCube(p.cube)));
        Ok(())
    })
}

/// Detection map from detail levels `band_lo..=band_hi` of a `levels`-deep
/// decomposition.
///
/// # Safety
/// `cube` must come from this library, `basis` be NUL-terminated and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tw_detect(
    cube: *const TwCube,
    basis: *const c_char,
    levels: usize,
    band_lo: usize,
    band_hi: usize,
    out: *mut *mut TwMap,
) -> TwStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let cube = handle(cube, "cube")?;
        let cfg = lib(DetectorConfig::new(text(basis, "basis")?, levels, (band_lo, band_hi)))?;
        let det = lib(detect(&cube.0, &cfg))?;
        *out = Box::into_raw(Box::new(TwMap(det.values)));
        Ok(())
    })
}

/// # Safety
/// `map` must come from this library; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tw_map_dims(map: *const TwMap, rows: *mut usize, cols: *mut usize) -> TwStatus {
    guard(|| {
        let map = handle(map, "map")?;
        *out_ptr(rows, "rows")? = map.0.rows();
        *out_ptr(cols, "cols")? = map.0.cols();
        Ok(())
    })
}

/// Row-major values, valid while `map` lives; NULL for a NULL map.
///
/// # Safety
/// `map` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn tw_map_data(map: *const TwMap) -> *const f64 {
    map.as_ref().map_or(ptr::null(), |m| m.0.as_slice().as_ptr())
}

/// # Safety
/// `map` must come from this library or be NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn tw_map_free(map: *mut TwMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_keep_distinct_codes() {
        let cases = [
            (Error::Config(String::new()), TwStatus::Config),
            (Error::Catalog(String::new()), TwStatus::Catalog),
            (Error::Level(String::new()), TwStatus::Level),
            (Error::Truncation { expected: 4, found: 0 }, TwStatus::Truncation),
        ];
        for (e, s) in cases {
            assert_eq!(TwStatus::from(&e), s);
        }
    }

    #[test]
    fn interior_nul_in_message_is_replaced() {
        set_error("a\0b".into());
        let msg = unsafe { CStr::from_ptr(tw_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "a b");
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), TwStatus::Panic);
        assert_eq!(unsafe { CStr::from_ptr(tw_last_error_message()) }.to_str().unwrap(), "internal panic");
    }
}
