use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use ncsphere_ffi::*;

#[test]
fn a_u_handle_round_trip() {
    let (p, q) = ([1i64, 1, 1], [3i64, 4, 6]);
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(ncs_a_u_new(p.as_ptr(), q.as_ptr(), 4, &mut h), NcsStatus::Ok);
        let mut d = 0usize;
        assert_eq!(ncs_presentation_graded_dimension(h, 3, &mut d), NcsStatus::Ok);
        assert_eq!(d, 20);
        let mut ok = 0;
        assert_eq!(ncs_presentation_relations_reduce(h, &mut ok), NcsStatus::Ok);
        assert_eq!(ok, 1);
        ncs_presentation_free(h);
    }
}

#[test]
fn degenerate_point_reports_error() {
    // cos(φ₁) = 0
    let (p, q) = ([1i64, 1, 1], [2i64, 4, 6]);
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(ncs_a_u_new(p.as_ptr(), q.as_ptr(), 4, &mut h), NcsStatus::Degenerate);
        assert!(h.is_null());
        let msg = CStr::from_ptr(ncs_last_error()).to_str().unwrap();
        assert!(!msg.is_empty());
        assert_eq!(ncs_a_u_new(ptr::null(), q.as_ptr(), 4, &mut h), NcsStatus::NullPointer);
    }
}

#[test]
fn verify_report() {
    let suite = CString::new("chern").unwrap();
    let u = CString::new("1/3,1/4,1/5").unwrap();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(ncs_verify(suite.as_ptr(), u.as_ptr(), 0, &mut r), NcsStatus::Ok);
        assert_eq!(ncs_report_passed(r), 1);
        let json = CStr::from_ptr(ncs_report_json(r)).to_str().unwrap();
        assert!(json.contains("\"task\": \"verify:chern\""));
        ncs_report_free(r);
        let bad = CString::new("nope").unwrap();
        assert_eq!(ncs_verify(bad.as_ptr(), ptr::null(), 0, &mut r), NcsStatus::InvalidArgument);
    }
}

#[test]
fn flow_and_classify() {
    let phi = [1.0f64, 0.8, 0.6];
    let (mut end, mut j) = ([0.0f64; 3], [0.0f64; 3]);
    let mut label = ptr::null();
    unsafe {
        assert_eq!(ncs_flow(phi.as_ptr(), 2.0, 1e-3, end.as_mut_ptr(), j.as_mut_ptr()), NcsStatus::Ok);
        let j0 = ncsphere::moduli::j_of(&phi).unwrap().as_array();
        assert!((0..3).all(|i| (j[i] - j0[i]).abs() < 1e-8));
        assert_eq!(ncs_flow(phi.as_ptr(), 1.0, 0.0, end.as_mut_ptr(), j.as_mut_ptr()), NcsStatus::InvalidArgument);
        let p = [std::f64::consts::FRAC_PI_2; 3];
        assert_eq!(ncs_classify(p.as_ptr(), 1e-9, &mut label), NcsStatus::Ok);
        assert_eq!(CStr::from_ptr(label).to_str().unwrap(), "P_ORBIT");
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/ncsphere.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["ncs_a_u_new", "ncs_verify", "ncs_report_free", "ncs_flow", "ncs_classify", "NCS_STATUS_OK"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    match Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() {
        Ok(st) => assert!(st.success()),
        Err(_) => eprintln!("no C compiler; skipped syntax check"),
    }
}
