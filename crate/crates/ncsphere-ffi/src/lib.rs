//! C ABI over the core crate. Objects are opaque handles created by `*_new`
//! functions and released with the matching `*_free`. Every fallible call
//! returns an [`NcsStatus`]; details of the last failure on the calling
//! thread are available from [`ncs_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncsphere::cli::{self, Report, RunConfig, Suite};
use ncsphere::moduli::{self, ModuliPoint};
use ncsphere::rewrite::{make_a_u_deg, Presentation};
use ncsphere::scalar::Angle;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    ComputationFailed = 4,
    Panic = 5,
}

/// Opaque finitely presented algebra.
pub struct NcsPresentation(Presentation);

/// Opaque verification report.
pub struct NcsReport {
    report: Report,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).unwrap_or_default());
}

fn guard(f: impl FnOnce() -> Result<(), (NcsStatus, String)>) -> NcsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NcsStatus::Ok,
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            NcsStatus::Panic
        }
    }
}

fn null() -> (NcsStatus, String) {
    (NcsStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (NcsStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| (NcsStatus::InvalidArgument, "string is not UTF-8".into()))
}

/// Message for the last failing call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ncs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds 𝒜_u for u_i = π p[i]/q[i], completed through `degree`.
///
/// # Safety
/// `p` and `q` must point to 3 readable values each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ncs_a_u_new(
    p: *const i64,
    q: *const i64,
    degree: usize,
    out: *mut *mut NcsPresentation,
) -> NcsStatus {
    guard(|| {
        if p.is_null() || q.is_null() || out.is_null() {
            return Err(null());
        }
        let (p, q) = (std::slice::from_raw_parts(p, 3), std::slice::from_raw_parts(q, 3));
        if q.iter().any(|&x| x <= 0) {
            return Err((NcsStatus::InvalidArgument, "denominators must be positive".into()));
        }
        let u = [0, 1, 2].map(|i| Angle::new(p[i], q[i]));
        let pres = make_a_u_deg(&u, degree).map_err(|e| (NcsStatus::Degenerate, e.to_string()))?;
        *out = Box::into_raw(Box::new(NcsPresentation(pres)));
        Ok(())
    })
}

/// # Safety
/// `h` must come from `ncs_a_u_new` and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ncs_presentation_free(h: *mut NcsPresentation) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of normal words of degree `d`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncs_presentation_graded_dimension(h: *const NcsPresentation, d: usize, out: *mut usize) -> NcsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        *out = h.0.graded_dimension(d);
        Ok(())
    })
}

/// Writes 1 if every defining relation reduces to 0, else 0.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncs_presentation_relations_reduce(h: *const NcsPresentation, out: *mut i32) -> NcsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let ok = h.0.relations_reduce_to_zero().map_err(|e| (NcsStatus::ComputationFailed, e.to_string()))?;
        *out = ok as i32;
        Ok(())
    })
}

/// Runs a verification suite. `u` is `"p/q,p/q,p/q"`, or null for the default.
///
/// # Safety
/// `suite` must be a NUL-terminated string, `u` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncs_verify(suite: *const c_char, u: *const c_char, seed: u64, out: *mut *mut NcsReport) -> NcsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let suite: Suite = read_str(suite)?.parse().map_err(|e| (NcsStatus::InvalidArgument, e))?;
        let mut cfg = RunConfig { suite, seed, ..Default::default() };
        if !u.is_null() {
            cfg.u = cli::parse_angles(read_str(u)?).map_err(|e| (NcsStatus::InvalidArgument, e))?;
        }
        let report = cli::run(&cfg);
        let json = CString::new(report.to_json()).map_err(|_| (NcsStatus::ComputationFailed, "report contains NUL".into()))?;
        *out = Box::into_raw(Box::new(NcsReport { report, json }));
        Ok(())
    })
}

/// 1 if every check passed.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn ncs_report_passed(r: *const NcsReport) -> i32 {
    r.as_ref().map(|r| r.report.passed as i32).unwrap_or(0)
}

/// JSON text of the report, owned by the handle.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn ncs_report_json(r: *const NcsReport) -> *const c_char {
    r.as_ref().map(|r| r.json.as_ptr()).unwrap_or(ptr::null())
}

/// # Safety
/// `r` must come from `ncs_verify` and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ncs_report_free(r: *mut NcsReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Flows `phi` (radians) for time `t` with RK4 step `dt`; writes the endpoint
/// (reduced mod π) to `phi_out` and (J₁₂, J₂₃, J₃₁) there to `j_out`.
///
/// # Safety
/// `phi` must point to 3 readable doubles, `phi_out` and `j_out` to 3 writable ones.
#[no_mangle]
pub unsafe extern "C" fn ncs_flow(phi: *const f64, t: f64, dt: f64, phi_out: *mut f64, j_out: *mut f64) -> NcsStatus {
    guard(|| {
        if phi.is_null() || phi_out.is_null() || j_out.is_null() {
            return Err(null());
        }
        if !(dt > 0.0) || !(t >= 0.0) {
            return Err((NcsStatus::InvalidArgument, "need t >= 0 and dt > 0".into()));
        }
        let u = [*phi, *phi.add(1), *phi.add(2)];
        let (_, end) = *moduli::flow_trajectory_shifted(&u, t, dt, usize::MAX).last().expect("nonempty");
        let j = end.j().map_err(|e| (NcsStatus::Degenerate, e.to_string()))?;
        let reduced = ModuliPoint::from_array(end.phi());
        for i in 0..3 {
            *phi_out.add(i) = reduced.phi[i];
            *j_out.add(i) = j.as_array()[i];
        }
        Ok(())
    })
}

/// Case label of `phi` (radians) as a static NUL-terminated string.
///
/// # Safety
/// `phi` must point to 3 readable doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn ncs_classify(phi: *const f64, tol: f64, out: *mut *const c_char) -> NcsStatus {
    guard(|| {
        if phi.is_null() || out.is_null() {
            return Err(null());
        }
        let p = ModuliPoint::new(*phi, *phi.add(1), *phi.add(2));
        let label = moduli::classify(&p, tol).map_err(|e| (NcsStatus::ComputationFailed, e.to_string()))?;
        *out = label_cstr(label.as_str());
        Ok(())
    })
}

fn label_cstr(s: &str) -> *const c_char {
    const LABELS: [&CStr; 11] = [
        c"GENERIC",
        c"P_ORBIT",
        c"P_PRIME_ORBIT",
        c"O_ORBIT",
        c"C_PLUS",
        c"C_MINUS",
        c"F1",
        c"F2",
        c"L",
        c"L_PRIME",
        c"D_SET",
    ];
    LABELS.iter().find(|c| c.to_bytes() == s.as_bytes()).map(|c| c.as_ptr()).unwrap_or(ptr::null())
}
