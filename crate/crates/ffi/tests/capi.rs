use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use glueco_ffi::*;

fn alg(name: &str, p: u64) -> *mut GlAlgebra {
    let n = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gl_algebra_builtin(n.as_ptr(), p, &mut out) }, GlStatus::Ok);
    assert!(!out.is_null());
    out
}

fn module(a: *const GlAlgebra, name: &str) -> *mut GlModule {
    let n = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gl_module_standard(a, n.as_ptr(), &mut out) }, GlStatus::Ok, "{name}");
    out
}

fn last_error() -> String {
    let p = gl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn dimensions_and_counts() {
    for (name, dim, count) in [("A2", 3, 3), ("lambda", 9, 11), ("A2-zero", 6, 6)] {
        let a = alg(name, 2);
        let (mut d, mut c) = (0usize, 0usize);
        unsafe {
            assert_eq!(gl_algebra_dimension(a, &mut d), GlStatus::Ok);
            assert_eq!(gl_enumerate_count(a, 1, &mut c), GlStatus::Ok);
            gl_algebra_free(a);
        }
        assert_eq!((d, c), (dim, count), "{name}");
    }
}

#[test]
fn hom_and_ext() {
    let a = alg("A2", 3);
    let (s1, s2, p1) = (module(a, "S(1)"), module(a, "S(2)"), module(a, "P(1)"));
    let mut d = 99usize;
    unsafe {
        assert_eq!(gl_ext_dim(s1, s2, 1, &mut d), GlStatus::Ok);
        assert_eq!(d, 1);
        assert_eq!(gl_ext_dim(s2, s1, 1, &mut d), GlStatus::Ok);
        assert_eq!(d, 0);
        assert_eq!(gl_hom_dim(p1, s1, &mut d), GlStatus::Ok);
        assert_eq!(d, 1);
        assert_eq!(gl_ext_dim(p1, s2, 1, &mut d), GlStatus::Ok);
        assert_eq!(d, 0);
        for m in [s1, s2, p1] {
            gl_module_free(m);
        }
        gl_algebra_free(a);
    }
}

#[test]
fn triangular_algebra_and_json_modules() {
    let a2 = alg("A2", 2);
    let mode = CString::new("regular").unwrap();
    let mut lam = ptr::null_mut();
    let mut d = 0usize;
    unsafe {
        assert_eq!(gl_algebra_triangular(a2, mode.as_ptr(), &mut lam), GlStatus::Ok);
        assert_eq!(gl_algebra_dimension(lam, &mut d), GlStatus::Ok);
        assert_eq!(d, 9);
        // (P1, S1) with the projection P1 -> S1
        let json = CString::new(r#"{"dims":{"X1":1,"X2":1,"Y1":1},"maps":{"Xb":[[1]],"c1":[[1]]}}"#).unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(gl_module_from_json(lam, json.as_ptr(), &mut m), GlStatus::Ok);
        assert_eq!(gl_module_summand_count(m, &mut d), GlStatus::Ok);
        assert_eq!(d, 1);
        let s = module(lam, "S(Y2)");
        assert_eq!(gl_ext_dim(m, s, 1, &mut d), GlStatus::Ok);
        assert_eq!(d, 1);
        // violates the commutativity relation
        let bad = CString::new(r#"{"dims":{"X1":1,"X2":1,"Y2":1},"maps":{"Xb":[[1]],"c2":[[1]]}}"#).unwrap();
        let mut m2 = ptr::null_mut();
        assert_eq!(gl_module_from_json(lam, bad.as_ptr(), &mut m2), GlStatus::InputError);
        assert!(m2.is_null());
        assert!(last_error().contains("violates"), "{}", last_error());
        gl_module_free(s);
        gl_module_free(m);
        gl_algebra_free(lam);
        gl_algebra_free(a2);
    }
}

#[test]
fn tilting_reports() {
    let a = alg("A2", 2);
    let (r, s1) = (module(a, "R"), module(a, "S(1)"));
    let mut rep = ptr::null_mut();
    unsafe {
        assert_eq!(gl_tilting_check(r, 0, &mut rep), GlStatus::Ok);
        let text = CStr::from_ptr(rep).to_str().unwrap().to_string();
        gl_string_free(rep);
        assert!(text.contains("\"verdict\": \"pass\""));
        assert_eq!(gl_tilting_check(s1, 0, ptr::null_mut()), GlStatus::CheckFailed);
        gl_module_free(r);
        gl_module_free(s1);
        gl_algebra_free(a);
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let n = CString::new("nope").unwrap();
    unsafe {
        assert_eq!(gl_algebra_builtin(n.as_ptr(), 2, &mut out), GlStatus::InputError);
        assert!(last_error().contains("nope"));
        let a2 = CString::new("A2").unwrap();
        assert_eq!(gl_algebra_builtin(a2.as_ptr(), 6, &mut out), GlStatus::InputError);
        assert_eq!(gl_algebra_builtin(ptr::null(), 2, &mut out), GlStatus::NullPointer);
        assert_eq!(gl_algebra_builtin(a2.as_ptr(), 2, ptr::null_mut()), GlStatus::NullPointer);
        let mut d = 0usize;
        assert_eq!(gl_algebra_dimension(ptr::null(), &mut d), GlStatus::NullPointer);
        let a = alg("A2", 2);
        let l = alg("lambda", 2);
        let (m, n) = (module(a, "R"), module(l, "R"));
        assert_eq!(gl_hom_dim(m, n, &mut d), GlStatus::InputError);
        assert_eq!(gl_algebra_dimension(a, &mut d), GlStatus::Ok);
        assert!(gl_last_error().is_null(), "success clears the message");
        gl_module_free(m);
        gl_module_free(n);
        gl_algebra_free(a);
        gl_algebra_free(l);
        gl_algebra_free(ptr::null_mut());
        gl_string_free(ptr::null_mut());
    }
}

#[test]
fn worked_example_json() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(gl_paper_example_json(2, &mut out), GlStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_string();
        gl_string_free(out);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["stages"].as_array().unwrap().len(), 14);
        assert_eq!(v["verdict"], "pass");
    }
    assert!(unsafe { CStr::from_ptr(gl_version()) }.to_str().unwrap().starts_with("0."));
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/capi-xxxx
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

/// Compiles a C program against the generated header and the static
/// library, then runs it.
#[test]
fn c_program_links_against_the_header() {
    let header_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(header_dir.join("glueco.h").is_file());
    let lib = target_dir().join("libglueco_ffi.a");
    assert!(lib.is_file(), "static library at {}", lib.display());
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "glueco.h"
int main(void) {
    GlAlgebra *a = NULL;
    if (gl_algebra_builtin("lambda", 2, &a) != GL_STATUS_OK) return 10;
    size_t n = 0;
    if (gl_enumerate_count(a, 1, &n) != GL_STATUS_OK) return 11;
    GlModule *p = NULL, *s = NULL;
    gl_module_standard(a, "P(X1)", &p);
    gl_module_standard(a, "S(X1)", &s);
    size_t h = 0;
    if (gl_hom_dim(p, s, &h) != GL_STATUS_OK) return 12;
    if (gl_algebra_builtin("nope", 2, &a) != GL_STATUS_INPUT_ERROR) return 13;
    printf("%zu %zu %s\n", n, h, gl_last_error() ? "err" : "none");
    gl_module_free(p);
    gl_module_free(s);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = tmp.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{:?}", out);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "11 1 err");
}
