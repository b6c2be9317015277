use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use thermowave_ffi::*;

fn last_error() -> String {
    let p = tw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn phantom_detect_round_trip() {
    unsafe {
        let mut cube: *mut TwCube = ptr::null_mut();
        assert_eq!(tw_phantom(10.0, 42, 0.12, &mut cube), TwStatus::Ok);
        let (mut nx, mut ny, mut nt) = (0, 0, 0);
        assert_eq!(tw_cube_dims(cube, &mut nx, &mut ny, &mut nt), TwStatus::Ok);
        assert_eq!((nx, ny, nt), (160, 200, 128));

        let basis = CString::new("rbio6.8").unwrap();
        let mut map: *mut TwMap = ptr::null_mut();
        assert_eq!(tw_detect(cube, basis.as_ptr(), 6, 3, 6, &mut map), TwStatus::Ok);
        assert!(tw_last_error_message().is_null());
        let (mut rows, mut cols) = (0, 0);
        assert_eq!(tw_map_dims(map, &mut rows, &mut cols), TwStatus::Ok);
        assert_eq!((rows, cols), (160, 200));
        let values = std::slice::from_raw_parts(tw_map_data(map), rows * cols);
        assert!(values.iter().all(|v| v.is_finite()));
        assert!(values.iter().any(|&v| v != 0.0));

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("c.tic").to_str().unwrap()).unwrap();
        assert_eq!(tw_cube_write(cube, path.as_ptr()), TwStatus::Ok);
        let mut back: *mut TwCube = ptr::null_mut();
        assert_eq!(tw_cube_read(path.as_ptr(), &mut back), TwStatus::Ok);
        let mut again: *mut TwMap = ptr::null_mut();
        assert_eq!(tw_detect(back, basis.as_ptr(), 6, 3, 6, &mut again), TwStatus::Ok);
        assert_eq!(std::slice::from_raw_parts(tw_map_data(again), rows * cols), values);

        tw_map_free(again);
        tw_map_free(map);
        tw_cube_free(back);
        tw_cube_free(cube);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let data = vec![0.5f32; 48 * 48 * 2];
        let mut cube: *mut TwCube = ptr::null_mut();
        assert_eq!(tw_cube_from_data(48, 48, 2, 1.0, data.as_ptr(), &mut cube), TwStatus::Ok);

        let mut map: *mut TwMap = ptr::null_mut();
        let bad = CString::new("db99").unwrap();
        assert_eq!(tw_detect(cube, bad.as_ptr(), 2, 1, 2, &mut map), TwStatus::Catalog);
        assert!(map.is_null());
        assert!(last_error().contains("db99"));

        let haar = CString::new("haar").unwrap();
        assert_eq!(tw_detect(cube, haar.as_ptr(), 3, 0, 3, &mut map), TwStatus::Level);
        assert_eq!(tw_detect(cube, haar.as_ptr(), 3, 1, 3, &mut map), TwStatus::Ok);
        assert!(tw_last_error_message().is_null());
        tw_map_free(map);

        assert_eq!(tw_detect(ptr::null(), haar.as_ptr(), 3, 1, 3, &mut map), TwStatus::NullPointer);
        assert_eq!(tw_detect(cube, ptr::null(), 3, 1, 3, &mut map), TwStatus::NullPointer);
        let invalid = [0xffu8, 0];
        assert_eq!(tw_detect(cube, invalid.as_ptr().cast(), 3, 1, 3, &mut map), TwStatus::InvalidString);

        let missing = CString::new("/nonexistent/dir/x.tic").unwrap();
        let mut other: *mut TwCube = ptr::null_mut();
        assert_eq!(tw_cube_read(missing.as_ptr(), &mut other), TwStatus::Io);
        assert!(other.is_null());
        assert_eq!(tw_phantom(3.0, 1, 0.1, &mut other), TwStatus::Config);
        assert_eq!(tw_cube_from_data(0, 4, 1, 1.0, data.as_ptr(), &mut other), TwStatus::Config);
        assert_eq!(tw_cube_from_data(4, 4, 1, 1.0, ptr::null(), &mut other), TwStatus::NullPointer);

        assert!(tw_map_data(ptr::null()).is_null());
        tw_map_free(ptr::null_mut());
        tw_cube_free(ptr::null_mut());
        tw_cube_free(cube);
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut cube: *mut TwCube = ptr::null_mut();
        assert_eq!(tw_phantom(3.0, 1, 0.1, &mut cube), TwStatus::Config);
    }
    std::thread::spawn(|| assert!(tw_last_error_message().is_null())).join().unwrap();
    assert!(!last_error().is_empty());
}

#[test]
fn header_declares_the_interface() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/thermowave.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "tw_cube_read",
        "tw_cube_write",
        "tw_cube_from_data",
        "tw_cube_free",
        "tw_cube_dims",
        "tw_phantom",
        "tw_detect",
        "tw_map_dims",
        "tw_map_data",
        "tw_map_free",
        "tw_last_error_message",
        "TW_STATUS_OK = 0",
        "typedef struct TwCube TwCube",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    if let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).status()
    {
        assert!(status.success(), "header does not compile as C");
    }
}
