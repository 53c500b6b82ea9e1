use std::ffi::{c_char, CStr, CString};
use std::ptr;

use colored_betti_ffi::*;

const SQUARE: &str = "m 4\nfacet 1 2\nfacet 2 3\nfacet 3 4\nfacet 1 4\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    cb_string_free(p);
    s
}

unsafe fn square() -> *mut CbComplex {
    let mut k = ptr::null_mut();
    assert_eq!(cb_complex_parse(c(SQUARE).as_ptr(), &mut k), CbStatus::Ok);
    k
}

#[test]
fn complex_handles() {
    unsafe {
        let k = square();
        assert_eq!(cb_complex_vertex_count(k), 4);
        assert_eq!(cb_complex_dimension(k), 1);
        let mut beta = 0u64;
        let omega = [1usize, 2, 3, 4];
        assert_eq!(
            cb_betti_number(k, 2, omega.as_ptr(), 4, ptr::null(), &mut beta),
            CbStatus::Ok
        );
        assert_eq!(beta, 1);
        let mut json = ptr::null_mut();
        assert_eq!(
            cb_betti_table_json(k, c("f2").as_ptr(), &mut json),
            CbStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        cb_complex_free(k);
    }
}

#[test]
fn partitions_and_reports() {
    unsafe {
        let k = square();
        let mut p = ptr::null_mut();
        assert_eq!(cb_partition_minimum(k, &mut p), CbStatus::Ok);
        assert_eq!(cb_partition_block_count(p), 2);
        let mut ok = false;
        assert_eq!(cb_partition_is_nondegenerate(k, p, &mut ok), CbStatus::Ok);
        assert!(ok);

        let mut json = ptr::null_mut();
        let mut pass = false;
        assert_eq!(
            cb_verify_json(k, p, c("q").as_ptr(), 0, &mut json, &mut pass),
            CbStatus::Ok
        );
        assert!(pass);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["pass"], true);

        assert_eq!(cb_tor_json(k, p, ptr::null(), 4, &mut json), CbStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["entries"].as_array().unwrap().len(), 4);
        cb_partition_free(p);

        assert_eq!(cb_partition_greedy(k, &mut p), CbStatus::Ok);
        cb_partition_free(p);
        cb_complex_free(k);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(
            cb_complex_parse(c("m 3\nfacet 1 2\n").as_ptr(), &mut k),
            CbStatus::IsolatedVertexMissing
        );
        let msg = CStr::from_ptr(cb_last_error_message()).to_str().unwrap();
        assert!(msg.starts_with("IsolatedVertexMissing"), "{msg}");
        assert_eq!(
            cb_complex_parse(c("m 2\nfacet 1 5\n").as_ptr(), &mut k),
            CbStatus::VertexOutOfRange
        );
        assert_eq!(
            cb_complex_parse(c("bogus").as_ptr(), &mut k),
            CbStatus::ParseError
        );
        assert_eq!(cb_complex_parse(ptr::null(), &mut k), CbStatus::NullPointer);

        let k = square();
        assert!(cb_last_error_message().is_null());
        let mut p = ptr::null_mut();
        assert_eq!(
            cb_partition_parse(k, c("1 2 | 3 4").as_ptr(), &mut p),
            CbStatus::Ok
        );
        let mut json = ptr::null_mut();
        let mut pass = false;
        assert_eq!(
            cb_verify_json(k, p, ptr::null(), 0, &mut json, &mut pass),
            CbStatus::DegeneratePartition
        );
        assert!(json.is_null());
        let mut beta = 0u64;
        assert_eq!(
            cb_betti_number(k, 0, ptr::null(), 0, c("fp:4").as_ptr(), &mut beta),
            CbStatus::InvalidField
        );
        let bad = [9usize];
        assert_eq!(
            cb_betti_number(k, 0, bad.as_ptr(), 1, ptr::null(), &mut beta),
            CbStatus::VertexOutOfRange
        );
        assert_eq!(
            cb_betti_number(ptr::null(), 0, ptr::null(), 0, ptr::null(), &mut beta),
            CbStatus::NullPointer
        );
        cb_partition_free(p);
        cb_complex_free(k);
        cb_complex_free(ptr::null_mut());
        cb_string_free(ptr::null_mut());
        assert_eq!(cb_complex_vertex_count(ptr::null()), 0);
        assert_eq!(cb_complex_dimension(ptr::null()), -1);
    }
}
