//! C ABI over the lcpkit solvers.
//!
//! The surface follows the usual opaque-handle pattern: constructors hand
//! out pointers to boxed Rust values, every fallible call returns an
//! [`LcpkitCode`], and results are read back through typed getters. All
//! pointers must be released with the matching `*_free` function exactly
//! once. The generated header lives in `include/lcpkit.h` and is kept in
//! sync via `cargo build --features generate-header`.
//!
//! Thread safety: handles are immutable after construction and may be
//! shared across threads; the `*_free` calls must not race with other
//! uses of the same handle.

// Handle arguments are null-checked before use, but like any C API the
// functions cannot defend against dangling pointers; the safety contract
// lives in the header documentation rather than in `unsafe fn` signatures.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use lcpkit::certify::{certify, CertifyLimits};
use lcpkit::error::Error;
use lcpkit::problem::{gen_example1, gen_example2, LcpProblem};
use lcpkit::solver::{solve, SolveReport, SolveStatus, SolverConfig, StartVector};
use lcpkit::sparse::DiagonalMatrix;
use lcpkit::splitting::{build_spec, SplittingSpec, Variant};

/// Status of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcpkitCode {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    ZeroDiagonal = 4,
    Singular = 5,
    NotLowerTriangular = 6,
    ParseError = 7,
    IoError = 8,
    TooLarge = 9,
    NoSolution = 10,
    Internal = 11,
}

fn code_of(err: &Error) -> LcpkitCode {
    match err {
        Error::DimensionMismatch { .. } | Error::NotSquare { .. } => LcpkitCode::DimensionMismatch,
        Error::InvalidStructure(_) | Error::InvalidParameter(_) => LcpkitCode::InvalidArgument,
        Error::ZeroDiagonal(_) => LcpkitCode::ZeroDiagonal,
        Error::NotLowerTriangular { .. } => LcpkitCode::NotLowerTriangular,
        Error::Singular { .. } => LcpkitCode::Singular,
        Error::Parse { .. } => LcpkitCode::ParseError,
        Error::Io(_) => LcpkitCode::IoError,
        Error::TooLarge { .. } => LcpkitCode::TooLarge,
        Error::NoSolution | Error::MultipleSolutions => LcpkitCode::NoSolution,
    }
}

/// Solve outcome mirrored into the C enum.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcpkitStatus {
    Converged = 0,
    MaxIters = 1,
    Diverged = 2,
}

/// Method selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcpkitMethod {
    NamModulus = 0,
    NamModified = 1,
    NamJacobi = 2,
    Namgs = 3,
    Namsor = 4,
    Namaor = 5,
    Mgs = 6,
    Msor = 7,
    Maor = 8,
}

impl LcpkitMethod {
    fn variant(self) -> Variant {
        match self {
            LcpkitMethod::NamModulus => Variant::NamModulus,
            LcpkitMethod::NamModified => Variant::NamModified,
            LcpkitMethod::NamJacobi => Variant::NamJacobi,
            LcpkitMethod::Namgs => Variant::Namgs,
            LcpkitMethod::Namsor => Variant::Namsor,
            LcpkitMethod::Namaor => Variant::Namaor,
            LcpkitMethod::Mgs => Variant::Mgs,
            LcpkitMethod::Msor => Variant::Msor,
            LcpkitMethod::Maor => Variant::Maor,
        }
    }
}

/// Relaxation diagonal policy. `Scalar` reads the accompanying value
/// argument; the modulus forms ignore the policy entirely.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcpkitOmega {
    DiagOfA = 0,
    Identity = 1,
    Scalar = 2,
}

/// Opaque problem handle.
pub struct LcpkitProblem(LcpProblem);
/// Opaque splitting handle.
pub struct LcpkitSpec(SplittingSpec);
/// Opaque solve-report handle.
pub struct LcpkitReport(SolveReport);

/// Parameters accepted by [`lcpkit_solve`]. `s0` may be null for the
/// default alternating start `(1, 0, 1, 0, ...)`; otherwise it must point
/// at `n` doubles. `record_history` != 0 retains the residual trajectory.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LcpkitSolveOptions {
    pub epsilon: f64,
    pub max_iters: usize,
    pub record_history: i32,
    pub s0: *const f64,
}

impl Default for LcpkitSolveOptions {
    fn default() -> Self {
        Self {
            epsilon: 1e-5,
            max_iters: 10_000,
            record_history: 0,
            s0: std::ptr::null(),
        }
    }
}

fn guard<F: FnOnce() -> LcpkitCode>(f: F) -> LcpkitCode {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => LcpkitCode::Internal,
    }
}

unsafe fn path_from(ptr: *const c_char) -> Option<PathBuf> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok().map(PathBuf::from)
}

fn box_out<T>(value: T, out: *mut *mut T) -> LcpkitCode {
    if out.is_null() {
        return LcpkitCode::NullPointer;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    LcpkitCode::Ok
}

/// Build the first benchmark family (`n = m * m`).
#[no_mangle]
pub extern "C" fn lcpkit_problem_example1(
    m: usize,
    delta: f64,
    out: *mut *mut LcpkitProblem,
) -> LcpkitCode {
    guard(|| match gen_example1(m, delta) {
        Ok(p) => box_out(LcpkitProblem(p), out),
        Err(e) => code_of(&e),
    })
}

/// Build the second benchmark family (`n = m * m`).
#[no_mangle]
pub extern "C" fn lcpkit_problem_example2(
    m: usize,
    delta: f64,
    out: *mut *mut LcpkitProblem,
) -> LcpkitCode {
    guard(|| match gen_example2(m, delta) {
        Ok(p) => box_out(LcpkitProblem(p), out),
        Err(e) => code_of(&e),
    })
}

/// Load a problem from Matrix Market files (`a_path` matrix, `q_path`
/// vector).
#[no_mangle]
pub extern "C" fn lcpkit_problem_from_files(
    a_path: *const c_char,
    q_path: *const c_char,
    out: *mut *mut LcpkitProblem,
) -> LcpkitCode {
    guard(|| {
        let (a, q) = unsafe { (path_from(a_path), path_from(q_path)) };
        let (Some(a), Some(q)) = (a, q) else {
            return LcpkitCode::NullPointer;
        };
        match LcpProblem::load(a, q) {
            Ok(p) => box_out(LcpkitProblem(p), out),
            Err(e) => code_of(&e),
        }
    })
}

/// # Safety
/// `problem` must come from a `lcpkit_problem_*` constructor and not have
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn lcpkit_problem_free(problem: *mut LcpkitProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Problem dimension, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn lcpkit_problem_dim(problem: *const LcpkitProblem) -> usize {
    if problem.is_null() {
        return 0;
    }
    unsafe { &*problem }.0.n()
}

/// Natural residual `||min(z, A z + q)||_2` of a candidate `z` of length
/// `len`.
#[no_mangle]
pub extern "C" fn lcpkit_problem_residual(
    problem: *const LcpkitProblem,
    z: *const f64,
    len: usize,
    out: *mut f64,
) -> LcpkitCode {
    guard(|| {
        if problem.is_null() || z.is_null() || out.is_null() {
            return LcpkitCode::NullPointer;
        }
        let problem = unsafe { &*problem };
        let z = unsafe { std::slice::from_raw_parts(z, len) };
        match problem.0.residual(z) {
            Ok(res) => {
                unsafe { *out = res };
                LcpkitCode::Ok
            }
            Err(e) => code_of(&e),
        }
    })
}

/// Build a splitting for `method` on the problem's matrix.
///
/// `alpha`/`beta` are read only for the methods that need them; pass any
/// value otherwise. `omega_scalar` is read only when `omega` is `Scalar`.
#[no_mangle]
pub extern "C" fn lcpkit_spec_create(
    problem: *const LcpkitProblem,
    method: LcpkitMethod,
    alpha: f64,
    beta: f64,
    omega: LcpkitOmega,
    omega_scalar: f64,
    out: *mut *mut LcpkitSpec,
) -> LcpkitCode {
    guard(|| {
        if problem.is_null() {
            return LcpkitCode::NullPointer;
        }
        let problem = unsafe { &*problem };
        let variant = method.variant();
        let n = problem.0.n();
        let om = match omega {
            LcpkitOmega::DiagOfA => DiagonalMatrix::new(problem.0.a().diagonal()),
            LcpkitOmega::Identity => DiagonalMatrix::identity(n),
            LcpkitOmega::Scalar => DiagonalMatrix::scalar(n, omega_scalar),
        };
        let alpha = variant.needs_alpha().then_some(alpha);
        let beta = variant.needs_beta().then_some(beta);
        match build_spec(problem.0.a(), variant, &om, alpha, beta) {
            Ok(spec) => box_out(LcpkitSpec(spec), out),
            Err(e) => code_of(&e),
        }
    })
}

/// # Safety
/// `spec` must come from [`lcpkit_spec_create`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lcpkit_spec_free(spec: *mut LcpkitSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Run the iteration; on `Ok` the caller owns `*out_report`.
#[no_mangle]
pub extern "C" fn lcpkit_solve(
    problem: *const LcpkitProblem,
    spec: *const LcpkitSpec,
    options: *const LcpkitSolveOptions,
    out_report: *mut *mut LcpkitReport,
) -> LcpkitCode {
    guard(|| {
        if problem.is_null() || spec.is_null() {
            return LcpkitCode::NullPointer;
        }
        let problem = unsafe { &*problem };
        let spec = unsafe { &*spec };
        let opts = if options.is_null() {
            LcpkitSolveOptions::default()
        } else {
            unsafe { *options }
        };
        let start = if opts.s0.is_null() {
            StartVector::Alternating
        } else {
            let s0 = unsafe { std::slice::from_raw_parts(opts.s0, problem.0.n()) };
            StartVector::Custom(s0.to_vec())
        };
        let cfg = SolverConfig {
            epsilon: opts.epsilon,
            max_iters: opts.max_iters,
            start,
            record_history: opts.record_history != 0,
        };
        match solve(&problem.0, &spec.0, &cfg) {
            Ok(report) => box_out(LcpkitReport(report), out_report),
            Err(e) => code_of(&e),
        }
    })
}

/// # Safety
/// `report` must come from [`lcpkit_solve`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lcpkit_report_free(report: *mut LcpkitReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

#[no_mangle]
pub extern "C" fn lcpkit_report_status(report: *const LcpkitReport) -> LcpkitStatus {
    if report.is_null() {
        return LcpkitStatus::Diverged;
    }
    match unsafe { &*report }.0.status {
        SolveStatus::Converged => LcpkitStatus::Converged,
        SolveStatus::MaxIters => LcpkitStatus::MaxIters,
        SolveStatus::Diverged => LcpkitStatus::Diverged,
    }
}

#[no_mangle]
pub extern "C" fn lcpkit_report_iterations(report: *const LcpkitReport) -> usize {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.0.iterations
}

#[no_mangle]
pub extern "C" fn lcpkit_report_final_residual(report: *const LcpkitReport) -> f64 {
    if report.is_null() {
        return f64::NAN;
    }
    unsafe { &*report }.0.final_residual
}

#[no_mangle]
pub extern "C" fn lcpkit_report_wall_seconds(report: *const LcpkitReport) -> f64 {
    if report.is_null() {
        return f64::NAN;
    }
    unsafe { &*report }.0.wall_time.as_secs_f64()
}

#[no_mangle]
pub extern "C" fn lcpkit_report_dim(report: *const LcpkitReport) -> usize {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.0.z.len()
}

/// Copy the solution `z` into `buf` (capacity `len >= dim`).
#[no_mangle]
pub extern "C" fn lcpkit_report_copy_z(
    report: *const LcpkitReport,
    buf: *mut f64,
    len: usize,
) -> LcpkitCode {
    copy_vector(report, buf, len, |r| &r.z)
}

/// Copy the auxiliary vector `s` into `buf` (capacity `len >= dim`).
#[no_mangle]
pub extern "C" fn lcpkit_report_copy_s(
    report: *const LcpkitReport,
    buf: *mut f64,
    len: usize,
) -> LcpkitCode {
    copy_vector(report, buf, len, |r| &r.s)
}

/// Number of recorded residuals (0 unless the solve recorded history).
#[no_mangle]
pub extern "C" fn lcpkit_report_history_len(report: *const LcpkitReport) -> usize {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }
        .0
        .residual_history
        .as_ref()
        .map_or(0, Vec::len)
}

/// Copy the residual trajectory into `buf` (capacity `len`).
#[no_mangle]
pub extern "C" fn lcpkit_report_copy_history(
    report: *const LcpkitReport,
    buf: *mut f64,
    len: usize,
) -> LcpkitCode {
    guard(|| {
        if report.is_null() || buf.is_null() {
            return LcpkitCode::NullPointer;
        }
        let report = unsafe { &*report };
        let Some(history) = report.0.residual_history.as_ref() else {
            return LcpkitCode::InvalidArgument;
        };
        if len < history.len() {
            return LcpkitCode::DimensionMismatch;
        }
        unsafe { std::ptr::copy_nonoverlapping(history.as_ptr(), buf, history.len()) };
        LcpkitCode::Ok
    })
}

fn copy_vector(
    report: *const LcpkitReport,
    buf: *mut f64,
    len: usize,
    pick: impl Fn(&SolveReport) -> &Vec<f64>,
) -> LcpkitCode {
    guard(|| {
        if report.is_null() || buf.is_null() {
            return LcpkitCode::NullPointer;
        }
        let v = pick(&unsafe { &*report }.0);
        if len < v.len() {
            return LcpkitCode::DimensionMismatch;
        }
        unsafe { std::ptr::copy_nonoverlapping(v.as_ptr(), buf, v.len()) };
        LcpkitCode::Ok
    })
}

/// Solve report as a JSON document; free with [`lcpkit_string_free`].
#[no_mangle]
pub extern "C" fn lcpkit_report_to_json(report: *const LcpkitReport) -> *mut c_char {
    if report.is_null() {
        return std::ptr::null_mut();
    }
    let json = unsafe { &*report }.0.to_json();
    CString::new(json).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Certification report as a JSON document; `*out_certified` is set to 1
/// when convergence is certified. Free the string with
/// [`lcpkit_string_free`].
#[no_mangle]
pub extern "C" fn lcpkit_certify_json(
    spec: *const LcpkitSpec,
    out_certified: *mut i32,
    out_json: *mut *mut c_char,
) -> LcpkitCode {
    guard(|| {
        if spec.is_null() || out_json.is_null() {
            return LcpkitCode::NullPointer;
        }
        let spec = unsafe { &*spec };
        match certify(&spec.0, &CertifyLimits::default()) {
            Ok(report) => {
                if !out_certified.is_null() {
                    unsafe { *out_certified = report.certified as i32 };
                }
                match CString::new(report.to_json()) {
                    Ok(s) => {
                        unsafe { *out_json = s.into_raw() };
                        LcpkitCode::Ok
                    }
                    Err(_) => LcpkitCode::Internal,
                }
            }
            Err(e) => code_of(&e),
        }
    })
}

/// # Safety
/// `s` must be a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lcpkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lcpkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
