//! C ABI over `nu-stability`.
//!
//! Every function returns an [`NuStatus`]; on failure a message is kept per
//! thread and read with [`nu_last_error`]. Strings handed out by the library
//! are NUL-terminated UTF-8 and must be released with [`nu_string_free`].

use nu_stability::catalog::{Catalog, CatalogError};
use nu_stability::classifier::{mu_fns_ratio, row_verdict, ClassifyError};
use nu_stability::lie_algebra::{build_root_system, casimir, LieError, LieType, Weight};
use nu_stability::rational::{to_i64_pair, Rational};
use nu_stability::verification::{parse_suites, run_suites, VerifyOptions};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    UnknownSpace = 3,
    /// Out-of-range parameters, sphere rows, invalid weights and the like.
    DomainError = 4,
    CatalogLoad = 5,
    UnknownSuite = 6,
    /// The suite ran and at least one check failed; the report is still written.
    VerificationFailed = 7,
    /// A rational does not fit in 64-bit numerator and denominator.
    Overflow = 8,
    Panic = 9,
}

/// Opaque catalog handle.
pub struct NuCatalog {
    inner: Catalog,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).expect("NULs removed"));
}

struct Fail(NuStatus, String);

impl From<CatalogError> for Fail {
    fn from(e: CatalogError) -> Self {
        let status = match e {
            CatalogError::UnknownSpace { .. } | CatalogError::UnknownFamily(_) => {
                NuStatus::UnknownSpace
            }
            CatalogError::Load { .. } => NuStatus::CatalogLoad,
            _ => NuStatus::DomainError,
        };
        Fail(status, e.to_string())
    }
}

impl From<ClassifyError> for Fail {
    fn from(e: ClassifyError) -> Self {
        Fail(NuStatus::DomainError, e.to_string())
    }
}

impl From<LieError> for Fail {
    fn from(e: LieError) -> Self {
        Fail(NuStatus::DomainError, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<NuStatus, Fail>) -> NuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == NuStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            NuStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(NuStatus::NullArgument, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(NuStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn null_out(what: &str) -> Fail {
    Fail(NuStatus::NullArgument, format!("{what} is NULL"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null_out("output pointer"));
    }
    let c = CString::new(s).map_err(|e| Fail(NuStatus::DomainError, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_rational(r: &Rational, num: *mut i64, den: *mut i64) -> Result<(), Fail> {
    if num.is_null() || den.is_null() {
        return Err(null_out("numerator or denominator pointer"));
    }
    let (n, d) =
        to_i64_pair(r).ok_or_else(|| Fail(NuStatus::Overflow, format!("{r} exceeds 64 bits")))?;
    *num = n;
    *den = d;
    Ok(())
}

unsafe fn catalog_ref<'a>(c: *const NuCatalog) -> Result<&'a Catalog, Fail> {
    c.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| null_out("catalog"))
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn nu_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn nu_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// A handle on the built-in families. Free with [`nu_catalog_free`].
#[no_mangle]
pub extern "C" fn nu_catalog_builtin() -> *mut NuCatalog {
    Box::into_raw(Box::new(NuCatalog {
        inner: Catalog::builtin(),
    }))
}

/// Built-in families plus the records in a JSON file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nu_catalog_load(
    path: *const c_char,
    out: *mut *mut NuCatalog,
) -> NuStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("output pointer"));
        }
        *out = ptr::null_mut();
        let path = str_arg(path, "path")?;
        let inner = Catalog::load(std::path::Path::new(path))?;
        *out = Box::into_raw(Box::new(NuCatalog { inner }));
        Ok(NuStatus::Ok)
    })
}

/// # Safety
/// `catalog` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn nu_catalog_free(catalog: *mut NuCatalog) {
    if !catalog.is_null() {
        drop(Box::from_raw(catalog));
    }
}

/// # Safety
/// `s` must come from this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn nu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Verdict for a named space as JSON, the same document `classify` prints.
///
/// # Safety
/// `catalog` is a live handle, `name` NUL-terminated, `json_out` valid.
#[no_mangle]
pub unsafe extern "C" fn nu_classify(
    catalog: *const NuCatalog,
    name: *const c_char,
    json_out: *mut *mut c_char,
) -> NuStatus {
    guard(|| {
        if !json_out.is_null() {
            *json_out = ptr::null_mut();
        }
        let cat = catalog_ref(catalog)?;
        let rec = cat.lookup(str_arg(name, "name")?)?;
        let v = row_verdict(&rec)?;
        write_string(
            json_out,
            serde_json::to_string(&v).expect("verdict serializes"),
        )?;
        Ok(NuStatus::Ok)
    })
}

/// `-μ_fns/λ` for a named space as a reduced fraction.
///
/// # Safety
/// `catalog` is a live handle, `name` NUL-terminated, `num` and `den` valid.
#[no_mangle]
pub unsafe extern "C" fn nu_mu_fns(
    catalog: *const NuCatalog,
    name: *const c_char,
    num: *mut i64,
    den: *mut i64,
) -> NuStatus {
    guard(|| {
        let cat = catalog_ref(catalog)?;
        let rec = cat.lookup(str_arg(name, "name")?)?;
        write_rational(&mu_fns_ratio(&rec)?, num, den)?;
        Ok(NuStatus::Ok)
    })
}

/// Normalized Casimir eigenvalue `c(Λ)` of the weight with `len` fundamental
/// coefficients. `lie_type` is `A`..`D`, `E6`..`E8`, `F4` or `G2`.
///
/// # Safety
/// `lie_type` NUL-terminated; `coeffs` points to `len` values; `num`, `den` valid.
#[no_mangle]
pub unsafe extern "C" fn nu_casimir(
    lie_type: *const c_char,
    coeffs: *const u32,
    len: usize,
    num: *mut i64,
    den: *mut i64,
) -> NuStatus {
    guard(|| {
        if coeffs.is_null() && len > 0 {
            return Err(null_out("coeffs"));
        }
        let ty = LieType::parse(str_arg(lie_type, "lie_type")?, Some(len))?;
        let c: Vec<i64> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(coeffs, len)
                .iter()
                .map(|&x| x as i64)
                .collect()
        };
        let rs = build_root_system(ty, len)?;
        write_rational(&casimir(&rs, &Weight(c))?, num, den)?;
        Ok(NuStatus::Ok)
    })
}

/// Runs a suite (`lemma33`, ..., or `all`) and writes its JSON report. A NaN
/// `tol` keeps each suite's default; `points` 0 means the default.
///
/// # Safety
/// `suite` NUL-terminated, `json_out` valid.
#[no_mangle]
pub unsafe extern "C" fn nu_verify(
    suite: *const c_char,
    seed: u64,
    points: usize,
    tol: f64,
    json_out: *mut *mut c_char,
) -> NuStatus {
    guard(|| {
        if !json_out.is_null() {
            *json_out = ptr::null_mut();
        }
        let suites = parse_suites(str_arg(suite, "suite")?)
            .map_err(|e| Fail(NuStatus::UnknownSuite, e.to_string()))?;
        if !tol.is_nan() && !(tol.is_finite() && tol >= 0.0) {
            return Err(Fail(
                NuStatus::DomainError,
                format!("invalid tolerance {tol}"),
            ));
        }
        let defaults = VerifyOptions::default();
        let opts = VerifyOptions {
            seed,
            points: if points == 0 { defaults.points } else { points },
            tol: (!tol.is_nan()).then_some(tol),
        };
        let reports = run_suites(&suites, &opts);
        let json = if reports.len() == 1 {
            serde_json::to_string(&reports[0])
        } else {
            serde_json::to_string(&reports)
        }
        .expect("reports serialize");
        write_string(json_out, json)?;
        if reports.iter().all(|r| r.passed) {
            Ok(NuStatus::Ok)
        } else {
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.suite.as_str())
                .collect();
            set_error(format!("failed suites: {}", failed.join(", ")));
            Ok(NuStatus::VerificationFailed)
        }
    })
}
