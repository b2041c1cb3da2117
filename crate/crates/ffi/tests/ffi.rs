use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use pvf_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pvf_string_free(s) };
    out
}

fn parse(text: &str) -> *mut PvfPolynomial {
    let text = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pvf_polynomial_parse(text.as_ptr(), &mut p) }, PvfStatus::Ok);
    p
}

#[test]
fn classify_z2_plus_1() {
    let p = parse("coeffs: 1, 0, 1");
    assert_eq!(unsafe { pvf_polynomial_degree(p) }, 2);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { pvf_classify(p, &mut g) }, PvfStatus::Ok);
    assert_eq!(take_string(unsafe { pvf_metric_graph_class(g) }), "(0 1)");
    assert_eq!(unsafe { pvf_metric_graph_tau_count(g) }, 1);
    assert_eq!(unsafe { pvf_metric_graph_alpha_count(g) }, 0);
    let mut tau = 0.0;
    assert_eq!(unsafe { pvf_metric_graph_tau(g, 0, &mut tau) }, PvfStatus::Ok);
    assert!((tau - std::f64::consts::PI).abs() < 1e-6);
    assert_eq!(unsafe { pvf_metric_graph_tau(g, 1, &mut tau) }, PvfStatus::IndexOutOfRange);
    unsafe {
        pvf_metric_graph_free(g);
        pvf_polynomial_free(p);
    }
}

#[test]
fn realize_round_trip() {
    let re = [-1.0, 0.0, 1.0];
    let im = [0.0; 3];
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pvf_polynomial_from_coeffs(re.as_ptr(), im.as_ptr(), 3, &mut p) }, PvfStatus::Ok);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { pvf_classify(p, &mut g) }, PvfStatus::Ok);
    let mut a = (0.0, 0.0);
    assert_eq!(unsafe { pvf_metric_graph_alpha(g, 0, &mut a.0, &mut a.1) }, PvfStatus::Ok);
    assert!(a.0.abs() < 1e-6 && (a.1 - std::f64::consts::PI).abs() < 1e-6);

    let text = CString::new(take_string(unsafe { pvf_metric_graph_to_text(g) })).unwrap();
    let mut g2 = ptr::null_mut();
    assert_eq!(unsafe { pvf_metric_graph_parse(text.as_ptr(), &mut g2) }, PvfStatus::Ok);
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { pvf_realize(g2, 7, &mut q) }, PvfStatus::Ok);
    let mut c = (0.0, 0.0);
    assert_eq!(unsafe { pvf_polynomial_coeff(q, 0, &mut c.0, &mut c.1) }, PvfStatus::Ok);
    assert!((c.0 + 1.0).abs() < 1e-6 && c.1.abs() < 1e-6);
    unsafe {
        pvf_polynomial_free(q);
        pvf_metric_graph_free(g2);
        pvf_metric_graph_free(g);
        pvf_polynomial_free(p);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("coeffs: 1, 2, 3").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pvf_polynomial_parse(bad.as_ptr(), &mut p) }, PvfStatus::InvalidInput);
    assert!(p.is_null());
    assert!(!take_string(pvf_last_error_message()).is_empty());

    assert_eq!(unsafe { pvf_polynomial_parse(ptr::null(), &mut p) }, PvfStatus::NullPointer);
    assert_eq!(unsafe { pvf_classify(ptr::null(), ptr::null_mut()) }, PvfStatus::NullPointer);

    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { pvf_polynomial_parse(invalid.as_ptr().cast(), &mut p) }, PvfStatus::InvalidUtf8);

    let graph = CString::new("class: (0 1)\ntaus: [-1]\nalphas: []\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { pvf_metric_graph_parse(graph.as_ptr(), &mut g) }, PvfStatus::InvalidInput);
    unsafe {
        pvf_polynomial_free(ptr::null_mut());
        pvf_metric_graph_free(ptr::null_mut());
        pvf_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(pvf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    let Some(target) = manifest.parent().and_then(|p| p.parent()).map(|root| root.join("target")) else {
        return;
    };
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib_dir = std::env::var_os("CARGO_TARGET_DIR").map(PathBuf::from).unwrap_or(target).join(profile);
    if !lib_dir.join("libpvf_ffi.a").exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "pvf.h"
int main(void) {
    PvfPolynomial *p = NULL;
    PvfMetricGraph *g = NULL;
    if (pvf_polynomial_parse("coeffs: 1, 0, 1", &p) != PVF_STATUS_OK) return 1;
    if (pvf_classify(p, &g) != PVF_STATUS_OK) return 2;
    char *cls = pvf_metric_graph_class(g);
    int ok = strcmp(cls, "(0 1)") == 0;
    printf("%s\n", cls);
    pvf_string_free(cls);
    pvf_metric_graph_free(g);
    pvf_polynomial_free(p);
    return ok ? 0 : 3;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(lib_dir.join("libpvf_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(0 1)");
}
