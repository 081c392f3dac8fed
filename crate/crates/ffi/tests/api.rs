use std::f64::consts::PI;
use std::ffi::{CStr, CString};
use std::ptr;

use harmonic_bounds_ffi::*;

fn function(json: &str) -> *mut HbFunction {
    let json = CString::new(json).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { hb_function_from_json(json.as_ptr(), &mut f) },
        HbStatus::Ok
    );
    f
}

fn last_error() -> String {
    let p = hb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn evaluate_and_sample() {
    let f = function(r#"{"kind":"trig_poly","a0":2.0,"cos":[1.0]}"#);
    let mut y = 0.0;
    unsafe {
        assert_eq!(hb_function_evaluate(f, 0.0, &mut y), HbStatus::Ok);
        assert!((y - 2.0).abs() < 1e-15);
        let mut buf = [0.0; 8];
        assert_eq!(hb_sample_uniform(f, 8, buf.as_mut_ptr(), 8), HbStatus::Ok);
        assert!((buf[4] - 0.0).abs() < 1e-15);
        assert_eq!(
            hb_sample_uniform(f, 8, buf.as_mut_ptr(), 4),
            HbStatus::BufferTooSmall
        );
        let mut periodic = false;
        assert_eq!(hb_function_is_periodic(f, &mut periodic), HbStatus::Ok);
        assert!(periodic);
        hb_function_free(f);
    }
}

#[test]
fn json_round_trip() {
    let f = function(r#"{"kind":"poly_cheb","coeffs":[0.5,0.25]}"#);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(hb_function_to_json(f, &mut s), HbStatus::Ok);
        let g = function(CStr::from_ptr(s).to_str().unwrap());
        let (mut a, mut b) = (0.0, 0.0);
        hb_function_evaluate(f, 0.3, &mut a);
        hb_function_evaluate(g, 0.3, &mut b);
        assert_eq!(a, b);
        hb_string_free(s);
        hb_function_free(f);
        hb_function_free(g);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let mut f = ptr::null_mut();
    let bad = CString::new("{not json").unwrap();
    unsafe {
        assert_eq!(hb_function_from_json(bad.as_ptr(), &mut f), HbStatus::Parse);
        assert!(f.is_null());
        assert!(last_error().contains("parse error"));
        assert_eq!(
            hb_function_from_json(ptr::null(), &mut f),
            HbStatus::NullPointer
        );

        let cheb = function(r#"{"kind":"poly_cheb","coeffs":[1.0]}"#);
        let mut y = 0.0;
        assert_eq!(hb_function_evaluate(cheb, 1.5, &mut y), HbStatus::Domain);
        assert_eq!(hb_function_evaluate(cheb, 0.5, &mut y), HbStatus::Ok);
        assert!(hb_last_error().is_null());
        assert_eq!(
            hb_function_evaluate(cheb, 0.5, ptr::null_mut()),
            HbStatus::NullPointer
        );
        hb_function_free(cheb);
    }
}

#[test]
fn spectrum_and_variation() {
    let f = function(r#"{"kind":"trig_poly","a0":0.0,"cos":[0,0,1.0]}"#);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(hb_spectrum_new(f, 4, 0, &mut s), HbStatus::Ok);
        let mut a3 = 0.0;
        hb_spectrum_cos(s, 3, &mut a3);
        assert!((a3 - 1.0).abs() < 1e-12);
        assert_eq!(hb_spectrum_cos(s, 5, &mut a3), HbStatus::OutOfRange);
        assert_eq!(hb_spectrum_new(f, 16, 64, &mut s), HbStatus::AntiAliasing);
        hb_spectrum_free(s);

        let mut v = ptr::null_mut();
        assert_eq!(hb_variation_new(f, 4096, 0.0, &mut v), HbStatus::Ok);
        let (mut total, mut n, mut deltas) = (0.0, 0, 0);
        hb_variation_total(v, &mut total);
        hb_variation_extrema_count(v, &mut n);
        hb_variation_delta_count(v, &mut deltas);
        assert!((total - 12.0).abs() < 1e-4);
        assert_eq!((n, deltas), (6, 6));
        let mut sum = 0.0;
        for k in 0..deltas {
            let mut d = 0.0;
            hb_variation_delta(v, k, &mut d);
            sum += d;
        }
        assert_eq!(sum, total);
        let mut e = HbExtremum::default();
        assert_eq!(hb_variation_extremum(v, 0, &mut e), HbStatus::Ok);
        assert!(e.is_max && e.x == 0.0);
        hb_variation_free(v);
        hb_function_free(f);
    }
}

#[test]
fn bound_report_rows() {
    let f = function(r#"{"kind":"poly_cheb","coeffs":[0,0,0,0,0,1.0]}"#);
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(
            hb_bound_report_new(f, 10, 0, 1e-8, 1e-6, &mut r),
            HbStatus::Ok
        );
        let (mut rows, mut ok) = (0, false);
        hb_bound_report_row_count(r, &mut rows);
        hb_bound_report_all_satisfied(r, &mut ok);
        assert_eq!(rows, 10);
        assert!(ok);
        let mut row = HbBoundRow::default();
        hb_bound_report_row(r, 4, &mut row);
        assert_eq!(row.j, 5);
        assert!(row.actual_abs_b.is_nan());
        assert!((row.bound_variation - 4.0 / PI).abs() < 1e-4);
        let mut g = 0.0;
        assert_eq!(hb_generic_bound(10.0, PI / 2.0, 5, &mut g), HbStatus::Ok);
        assert_eq!(g, 2.0 * 10.0 / (PI * 5.0));
        assert_eq!(hb_generic_bound(10.0, 0.0, 5, &mut g), HbStatus::Invariant);
        hb_bound_report_free(r);
        hb_function_free(f);
    }
}

#[test]
fn band_workflow() {
    let f = function(r#"{"kind":"trig_poly","a0":4.0,"cos":[0,0,0.5]}"#);
    let request = HbDesignRequest {
        j: 3,
        q: 2.0,
        a_j0: 0.5,
        n_extrema: 0,
        center: HbCenterKind::Minimal,
    };
    unsafe {
        let mut budget = 0.0;
        hb_variation_budget(&request, &mut budget);
        assert!((budget - 0.75 * PI).abs() < 1e-12);
        let mut w = std::mem::MaybeUninit::<HbBandWidths>::uninit();
        assert_eq!(hb_design_width(&request, w.as_mut_ptr()), HbStatus::Ok);
        let w = w.assume_init();
        assert!(w.delta_eq11.is_nan());
        assert_eq!(w.provenance, HbProvenance::Eq12);

        let mut center = ptr::null_mut();
        assert_eq!(
            hb_make_center(f, 3, HbCenterKind::Minimal, 0, &mut center),
            HbStatus::Ok
        );
        let mut band = ptr::null_mut();
        assert_eq!(
            hb_band_new(center, w.delta_recommended, &request, &mut band),
            HbStatus::Ok
        );

        let mut out = HbVerification::default();
        assert_eq!(hb_band_verify(f, band, 4096, 1e-8, &mut out), HbStatus::Ok);
        assert!(!out.certified && !out.containment);

        let mut clamped = ptr::null_mut();
        assert_eq!(
            hb_clamp_candidate(f, band, 4096, &mut clamped),
            HbStatus::Ok
        );
        assert_eq!(
            hb_band_verify(clamped, band, 4096, 1e-8, &mut out),
            HbStatus::Ok
        );
        assert!(out.certified && out.containment && out.budget_ok);
        assert!(out.achieved_amplitude <= 0.25 + 1e-8);

        // a center that still carries the harmonic is rejected
        let mut bad = ptr::null_mut();
        assert_eq!(hb_band_new(f, 0.1, &request, &mut bad), HbStatus::Ok);
        assert_eq!(
            hb_band_verify(clamped, bad, 4096, 1e-8, &mut out),
            HbStatus::CenterNotZeroed
        );
        assert!(last_error().contains("a_3"));

        let zero = HbDesignRequest { q: 0.5, ..request };
        assert_eq!(hb_design_width(&zero, ptr::null_mut()), HbStatus::Request);

        for b in [band, bad] {
            hb_band_free(b);
        }
        for g in [f, center, clamped] {
            hb_function_free(g);
        }
    }
}

#[test]
fn band_file_parses() {
    let json = CString::new(
        r#"{"center":{"kind":"trig_poly","a0":4.0},"delta":0.39,"j":3,"q":2.0,"a_j0":0.5,"extra":1}"#,
    )
    .unwrap();
    let mut band = ptr::null_mut();
    let mut delta = 0.0;
    unsafe {
        assert_eq!(hb_band_from_json(json.as_ptr(), &mut band), HbStatus::Ok);
        hb_band_delta(band, &mut delta);
        hb_band_free(band);
    }
    assert_eq!(delta, 0.39);
}

#[test]
fn free_accepts_null() {
    unsafe {
        hb_function_free(ptr::null_mut());
        hb_spectrum_free(ptr::null_mut());
        hb_variation_free(ptr::null_mut());
        hb_bound_report_free(ptr::null_mut());
        hb_band_free(ptr::null_mut());
        hb_string_free(ptr::null_mut());
    }
}
