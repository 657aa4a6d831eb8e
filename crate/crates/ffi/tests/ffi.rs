use std::ffi::{c_char, c_int, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use witt_theta_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn field(name: &str) -> *mut WtField {
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { wt_field_parse(c(name).as_ptr(), &mut f) },
        WtStatus::Ok
    );
    f
}

#[test]
fn classify_through_handles() {
    let f = field("p3");
    let mut cl = ptr::null_mut();
    let diag = [1i64, -1, 3];
    let kind = c("symmetric");
    assert_eq!(
        unsafe { wt_class_from_diag(f, kind.as_ptr(), 0, diag.as_ptr(), 3, &mut cl) },
        WtStatus::Ok
    );
    let (mut dim, mut rank, mut aniso) = (0i64, 0i64, 7 as c_int);
    unsafe {
        assert_eq!(wt_class_dim(cl, &mut dim), WtStatus::Ok);
        assert_eq!(wt_class_split_rank(cl, &mut rank), WtStatus::Ok);
        assert_eq!(wt_class_is_anisotropic(cl, &mut aniso), WtStatus::Ok);
    }
    assert_eq!((dim, rank, aniso), (3, 1, 0));
    let mut json: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { wt_class_to_json(cl, &mut json) }, WtStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    assert!(text.contains("\"dim\":3"), "{text}");
    unsafe {
        wt_string_free(json);
        wt_class_free(cl);
        wt_field_free(f);
    }
}

#[test]
fn arithmetic_entry_points() {
    let f = field("Q_3");
    let (mut h, mut d, mut n, mut deg, mut triv) = (0 as c_int, 0i64, 0i64, 0i64, 0i64);
    unsafe {
        assert_eq!(wt_hilbert(f, 3, 3, &mut h), WtStatus::Ok);
        assert_eq!(h, -1);
        assert_eq!(
            wt_d_max(c("quat_skew_hermitian").as_ptr(), &mut d),
            WtStatus::Ok
        );
        assert_eq!(d, 3);
        let sp = c("symplectic");
        assert_eq!(
            wt_conserve_predict(f, sp.as_ptr(), 0, 2, 3, &mut n, &mut deg),
            WtStatus::Ok
        );
        assert_eq!((n, deg), (5, 3));
        assert_eq!(
            wt_trivial_bound(f, sp.as_ptr(), 0, 2, &mut triv),
            WtStatus::Ok
        );
        assert_eq!(triv, 8);
        wt_field_free(f);
    }
}

#[test]
fn errors_are_reported() {
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { wt_field_parse(c("p4").as_ptr(), &mut f) },
        WtStatus::InvalidField
    );
    assert!(f.is_null());
    let msg = unsafe { CStr::from_ptr(wt_last_error()) }
        .to_str()
        .unwrap()
        .to_owned();
    assert!(msg.contains('4'), "{msg}");
    assert_eq!(
        unsafe { wt_field_parse(ptr::null(), &mut f) },
        WtStatus::NullPointer
    );
    let q = field("p5");
    let mut cl = ptr::null_mut();
    let diag = [1i64, 0];
    assert_eq!(
        unsafe { wt_class_from_diag(q, c("symmetric").as_ptr(), 0, diag.as_ptr(), 2, &mut cl) },
        WtStatus::InvalidForm
    );
    let mut n = 0i64;
    assert_eq!(
        unsafe {
            wt_conserve_predict(
                q,
                c("symplectic").as_ptr(),
                0,
                2,
                9,
                &mut n,
                ptr::null_mut(),
            )
        },
        WtStatus::Inconsistent
    );
    assert_eq!(
        unsafe { wt_d_max(c("bogus").as_ptr(), &mut n) },
        WtStatus::Parse
    );
    unsafe { wt_field_free(q) };
}

#[test]
fn cli_through_ffi() {
    let args = [
        c("conserve"),
        c("--utype"),
        c("symplectic"),
        c("--dimU"),
        c("2"),
        c("--known"),
        c("3"),
    ];
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out: *mut c_char = ptr::null_mut();
    let mut code: c_int = -1;
    assert_eq!(
        unsafe { wt_cli_run(ptrs.as_ptr(), ptrs.len(), &mut out, &mut code) },
        WtStatus::Ok
    );
    assert_eq!(code, 0);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    assert!(text.contains("\"predicted_n\":5"), "{text}");
    unsafe { wt_string_free(out) };
}

/// Compiles and runs a C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("witt_theta.h").exists());
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libwitt_theta_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let work = std::env::temp_dir().join(format!("wt-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "witt_theta.h"
int main(void) {
    WtField *f = NULL;
    if (wt_field_parse("p3", &f) != WT_STATUS_OK) return 10;
    int64_t diag[3] = {1, -1, 3};
    WtClass *c = NULL;
    if (wt_class_from_diag(f, "symmetric", 0, diag, 3, &c) != WT_STATUS_OK) return 11;
    int64_t rank = -1;
    wt_class_split_rank(c, &rank);
    int64_t n = 0;
    if (wt_conserve_predict(f, "symplectic", 0, 2, 3, &n, NULL) != WT_STATUS_OK) return 12;
    if (wt_field_parse("p9", &f) == WT_STATUS_OK || wt_last_error() == NULL) return 13;
    printf("%lld %lld\n", (long long)rank, (long long)n);
    wt_class_free(c);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = work.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 5");
    std::fs::remove_dir_all(&work).unwrap();
}
