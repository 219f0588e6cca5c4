//! C interface to `glueco`.
//!
//! Algebras and modules are opaque handles created by `gl_*` constructors
//! and released with the matching `*_free`. Every fallible call returns a
//! [`GlStatus`]; on anything but `GL_STATUS_OK` a message is available from
//! [`gl_last_error`] on the same thread. Strings handed out by the library
//! are released with [`gl_string_free`].
//!
//! # Safety
//!
//! Pointer arguments must be null or point to live objects of the stated
//! type. Handles may be shared between threads for reading; a handle must
//! not be freed while another call is using it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use glueco::builtin;
use glueco::error::Error;
use glueco::example::paper_example;
use glueco::homap::ext_dim;
use glueco::io::{standard_module, AlgebraFile, ModuleFile};
use glueco::modrep::{decompose, enumerate_indecomposables, hom_dim};
use glueco::quivalg::Algebra;
use glueco::recol::{total_algebra, Mode};
use glueco::tilt::check_n_tilting;
use glueco::{Field, Limits, Representation, Verdict};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    /// The call ran; the mathematical check it performed failed.
    CheckFailed = 1,
    /// Malformed or inconsistent input.
    InputError = 2,
    /// A search guard was exceeded.
    ResourceExceeded = 3,
    NullPointer = 4,
    /// An internal error; the message says where.
    Panic = 5,
}

/// An algebra given by a quiver with relations over a prime field.
pub struct GlAlgebra {
    inner: Arc<Algebra>,
}

/// A finite-dimensional module, i.e. a representation of the bound quiver.
pub struct GlModule {
    inner: Representation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Fail {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn run(f: impl FnOnce() -> Result<GlStatus, Fail>) -> GlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            GlStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            let code = match e {
                Error::Resource { .. } => GlStatus::ResourceExceeded,
                _ => GlStatus::InputError,
            };
            set_error(e.to_string());
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            GlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::input(format!("{what} is not valid UTF-8"))))
}

unsafe fn obj<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(v);
    Ok(())
}

fn field(p: u64) -> Result<Field, Fail> {
    Ok(Field::new(p)?)
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next `gl_*` call on the same thread.
#[no_mangle]
pub extern "C" fn gl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Built-in algebra by name: `A2`, `k`, `lambda` (lower triangular matrices
/// over A2) or `A2-zero`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_builtin(name: *const c_char, prime: u64, out: *mut *mut GlAlgebra) -> GlStatus {
    run(|| {
        let name = str_arg(name, "name")?;
        let k = field(prime)?;
        let alg = builtin::by_name(name, k, &Limits::default())
            .ok_or_else(|| Error::input(format!("unknown built-in algebra `{name}`")))??;
        put(out, Box::into_raw(Box::new(GlAlgebra { inner: alg })), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// Algebra from its JSON presentation (vertices, arrows, relations).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_from_json(json: *const c_char, prime: u64, out: *mut *mut GlAlgebra) -> GlStatus {
    run(|| {
        let text = str_arg(json, "json")?;
        let file: AlgebraFile = serde_json_from_str(text)?;
        let alg = file.build("algebra", field(prime)?, &Limits::default())?;
        put(out, Box::into_raw(Box::new(GlAlgebra { inner: alg })), "out")?;
        Ok(GlStatus::Ok)
    })
}

fn serde_json_from_str<T: for<'de> serde::Deserialize<'de>>(text: &str) -> Result<T, Fail> {
    serde_json::from_str(text).map_err(|e| Fail::Lib(Error::input(format!("json: {e}"))))
}

/// The triangular matrix algebra over `base`; `mode` is `regular` or `zero`.
///
/// # Safety
/// `base` must be a live handle, `mode` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_triangular(
    base: *const GlAlgebra,
    mode: *const c_char,
    out: *mut *mut GlAlgebra,
) -> GlStatus {
    run(|| {
        let base = obj(base, "base")?;
        let mode = Mode::parse(str_arg(mode, "mode")?)?;
        let alg = total_algebra(&base.inner, mode, &Limits::default())?;
        put(out, Box::into_raw(Box::new(GlAlgebra { inner: alg })), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_free(a: *mut GlAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_dimension(a: *const GlAlgebra, out: *mut usize) -> GlStatus {
    run(|| {
        put(out, obj(a, "algebra")?.inner.dimension(), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_vertex_count(a: *const GlAlgebra, out: *mut usize) -> GlStatus {
    run(|| {
        put(out, obj(a, "algebra")?.inner.vertex_count(), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// Number of indecomposables with every vertex dimension at most `dim_bound`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_enumerate_count(a: *const GlAlgebra, dim_bound: usize, out: *mut usize) -> GlStatus {
    run(|| {
        let a = obj(a, "algebra")?;
        let e = enumerate_indecomposables(&a.inner, dim_bound, &Limits::default())?;
        put(out, e.modules.len(), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// Standard module by name: `R`, `DR`, `0`, `P(v)`, `S(v)`, `I(v)`.
///
/// # Safety
/// `a` must be a live handle, `name` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_module_standard(a: *const GlAlgebra, name: *const c_char, out: *mut *mut GlModule) -> GlStatus {
    run(|| {
        let a = obj(a, "algebra")?;
        let name = str_arg(name, "name")?;
        let m = standard_module(&a.inner, name).ok_or_else(|| Error::input(format!("unknown standard module `{name}`")))?;
        put(out, Box::into_raw(Box::new(GlModule { inner: m })), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// Module from JSON `{"dims": {..}, "maps": {..}}` over `a`; the `algebra`
/// field, if present, is ignored.
///
/// # Safety
/// `a` must be a live handle, `json` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_module_from_json(a: *const GlAlgebra, json: *const c_char, out: *mut *mut GlModule) -> GlStatus {
    run(|| {
        let a = obj(a, "algebra")?;
        let text = str_arg(json, "json")?;
        let mut value: serde_json::Value = serde_json_from_str(text)?;
        if let Some(map) = value.as_object_mut() {
            map.insert("algebra".into(), a.inner.name().into());
        }
        let file: ModuleFile = serde_json::from_value(value).map_err(|e| Error::input(format!("json: {e}")))?;
        let m = file.build(&a.inner)?;
        put(out, Box::into_raw(Box::new(GlModule { inner: m })), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gl_module_free(m: *mut GlModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Total dimension over the ground field.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_module_dimension(m: *const GlModule, out: *mut usize) -> GlStatus {
    run(|| {
        put(out, obj(m, "module")?.inner.total_dim(), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// Number of indecomposable summands, counted with multiplicity.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_module_summand_count(m: *const GlModule, out: *mut usize) -> GlStatus {
    run(|| {
        let d = decompose(&obj(m, "module")?.inner, &Limits::default())?;
        put(out, d.len(), "out")?;
        Ok(GlStatus::Ok)
    })
}

/// # Safety
/// `m`, `n` must be live handles over the same algebra and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_hom_dim(m: *const GlModule, n: *const GlModule, out: *mut usize) -> GlStatus {
    run(|| {
        let d = hom_dim(&obj(m, "m")?.inner, &obj(n, "n")?.inner)?;
        put(out, d, "out")?;
        Ok(GlStatus::Ok)
    })
}

/// `dim Ext^degree(m, n)`; degree 0 is Hom.
///
/// # Safety
/// `m`, `n` must be live handles over the same algebra and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_ext_dim(m: *const GlModule, n: *const GlModule, degree: usize, out: *mut usize) -> GlStatus {
    run(|| {
        let d = ext_dim(&obj(m, "m")?.inner, &obj(n, "n")?.inner, degree)?;
        put(out, d, "out")?;
        Ok(GlStatus::Ok)
    })
}

/// Checks the n-tilting conditions. Returns `GL_STATUS_CHECK_FAILED` when
/// they fail; the JSON report is written to `report` either way (pass null
/// to skip it).
///
/// # Safety
/// `m` must be a live handle; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gl_tilting_check(m: *const GlModule, n: usize, report: *mut *mut c_char) -> GlStatus {
    run(|| {
        let r = check_n_tilting(&obj(m, "module")?.inner, n, &Limits::default())?;
        if !report.is_null() {
            report.write(c_string(r.to_json()));
        }
        Ok(match r.verdict {
            Verdict::Pass => GlStatus::Ok,
            Verdict::Fail => GlStatus::CheckFailed,
            Verdict::Inconclusive => GlStatus::ResourceExceeded,
        })
    })
}

/// Runs the built-in worked example over `F_prime` and writes its JSON
/// report to `out`. `GL_STATUS_CHECK_FAILED` means some stage did not behave
/// as expected.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_paper_example_json(prime: u64, out: *mut *mut c_char) -> GlStatus {
    run(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let r = paper_example(prime, &Limits::default())?;
        out.write(c_string(r.to_json()));
        Ok(if r.exit_code() == 0 {
            GlStatus::Ok
        } else {
            set_error(format!("stage failed: {}", r.first_unexpected().map_or("", |s| s.name.as_str())));
            GlStatus::CheckFailed
        })
    })
}
