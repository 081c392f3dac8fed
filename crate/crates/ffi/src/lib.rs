//! C ABI over `harmonic_bounds`.
//!
//! Every entry point returns an [`HbStatus`]; results come back through out
//! pointers. Objects are opaque handles owned by the caller and released with
//! the matching `*_free` function. On failure the message is kept per thread
//! and can be read with [`hb_last_error`].
//!
//! Optional numbers (a missing sine column, an absent width) are reported as NaN.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use harmonic_bounds::band::{self, BandSpec, CenterKind, DesignRequest, WidthProvenance};
use harmonic_bounds::bounds::{self, GenericBasisParams, Tolerance};
use harmonic_bounds::spectral::{self, default_grid, SpectrumTable};
use harmonic_bounds::variation::{self, ExtremumKind, VariationReport};
use harmonic_bounds::{BoundReport, Error, FunctionSpec};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invariant = 4,
    Size = 5,
    Domain = 6,
    KindMismatch = 7,
    AntiAliasing = 8,
    BasisMismatch = 9,
    CenterNotZeroed = 10,
    Request = 11,
    OutOfRange = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbCenterKind {
    Trivial = 0,
    Minimal = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbProvenance {
    Eq11 = 0,
    Eq12 = 1,
    MaxOfBoth = 2,
    Explicit = 3,
}

/// Opaque function spec.
pub struct HbFunction(FunctionSpec);
/// Opaque coefficient table.
pub struct HbSpectrum(SpectrumTable);
/// Opaque variation report.
pub struct HbVariation(VariationReport);
/// Opaque bound report.
pub struct HbBoundReport(BoundReport);
/// Opaque proximity band.
pub struct HbBand(BandSpec);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HbExtremum {
    pub x: f64,
    pub y: f64,
    pub is_max: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HbBoundRow {
    pub j: usize,
    pub actual_abs_a: f64,
    /// NaN in the Chebyshev basis.
    pub actual_abs_b: f64,
    pub bound_variation: f64,
    pub bound_extrema: f64,
    pub bound_range: f64,
    /// NaN when the variation is zero.
    pub ratio_tightness: f64,
    pub satisfied: bool,
}

/// Band design request. `n_extrema == 0` means no assumed extrema count.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HbDesignRequest {
    pub j: usize,
    pub q: f64,
    pub a_j0: f64,
    pub n_extrema: usize,
    pub center: HbCenterKind,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HbBandWidths {
    /// NaN without an assumed extrema count.
    pub delta_eq11: f64,
    pub delta_eq12: f64,
    pub delta_recommended: f64,
    pub provenance: HbProvenance,
    pub already_attained: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HbVerification {
    pub containment: bool,
    pub max_deviation: f64,
    pub delta_variation: f64,
    pub delta_extrema: usize,
    pub variation_budget: f64,
    pub budget_ok: bool,
    pub chain_ok: bool,
    pub achieved_amplitude: f64,
    pub target_amplitude: f64,
    pub certified: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => HbStatus::Parse,
            Error::Invariant { .. } => HbStatus::Invariant,
            Error::Size { .. } => HbStatus::Size,
            Error::Domain { .. } => HbStatus::Domain,
            Error::KindMismatch { .. } => HbStatus::KindMismatch,
            Error::AntiAliasing { .. } => HbStatus::AntiAliasing,
            Error::BasisMismatch { .. } => HbStatus::BasisMismatch,
            Error::CenterNotZeroed { .. } => HbStatus::CenterNotZeroed,
            Error::Request(_) => HbStatus::Request,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(body: impl FnOnce() -> Outcome) -> HbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            HbStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HbStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref()
        .ok_or_else(|| Failure(HbStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(Failure(
            HbStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn text<'a>(ptr: *const c_char) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure(HbStatus::NullPointer, "string is null".into()));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure(HbStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

unsafe fn free<T>(ptr: *mut T) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

fn out_of_range(what: &str, index: usize, len: usize) -> Failure {
    Failure(
        HbStatus::OutOfRange,
        format!("{what} index {index} out of range (have {len})"),
    )
}

fn or_nan(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

fn request_of(r: &HbDesignRequest) -> DesignRequest {
    DesignRequest {
        j: r.j,
        q: r.q,
        a_j0: r.a_j0,
        b_j0: None,
        n_extrema: (r.n_extrema > 0).then_some(r.n_extrema),
        center: match r.center {
            HbCenterKind::Trivial => CenterKind::Trivial,
            HbCenterKind::Minimal => CenterKind::Minimal,
        },
    }
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a JSON function spec.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_function_from_json(
    json: *const c_char,
    out: *mut *mut HbFunction,
) -> HbStatus {
    guard(|| {
        let spec = harmonic_bounds::parse_spec(text(json)?)?;
        put(out, boxed(HbFunction(spec)))
    })
}

/// Serialize a function spec to JSON; free the result with [`hb_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_function_to_json(
    f: *const HbFunction,
    out: *mut *mut c_char,
) -> HbStatus {
    guard(|| {
        let json = get(f, "function")?.0.to_json();
        let s = CString::new(json).map_err(|e| Failure(HbStatus::Invariant, e.to_string()))?;
        put(out, s.into_raw())
    })
}

/// # Safety
/// `f` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hb_function_free(f: *mut HbFunction) {
    free(f)
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_function_is_periodic(f: *const HbFunction, out: *mut bool) -> HbStatus {
    guard(|| put(out, get(f, "function")?.0.is_periodic()))
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_function_evaluate(
    f: *const HbFunction,
    x: f64,
    out: *mut f64,
) -> HbStatus {
    guard(|| put(out, get(f, "function")?.0.evaluate(x)?))
}

/// Write `n` samples at `x_i = 2πi/n` into `out`, which holds `len` doubles.
///
/// # Safety
/// `f` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hb_sample_uniform(
    f: *const HbFunction,
    n: usize,
    out: *mut f64,
    len: usize,
) -> HbStatus {
    guard(|| {
        let values = harmonic_bounds::sample_uniform(&get(f, "function")?.0, n)?;
        if out.is_null() {
            return Err(Failure(
                HbStatus::NullPointer,
                "output buffer is null".into(),
            ));
        }
        if len < n {
            return Err(Failure(
                HbStatus::BufferTooSmall,
                format!("buffer holds {len} values, need {n}"),
            ));
        }
        std::slice::from_raw_parts_mut(out, n).copy_from_slice(&values);
        Ok(())
    })
}

/// Coefficients up to `order` in the basis of the function's domain;
/// `grid == 0` picks the default grid.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_spectrum_new(
    f: *const HbFunction,
    order: usize,
    grid: usize,
    out: *mut *mut HbSpectrum,
) -> HbStatus {
    guard(|| {
        let grid = if grid == 0 { default_grid(order) } else { grid };
        let table = spectral::spectrum(&get(f, "function")?.0, order, grid)?;
        put(out, boxed(HbSpectrum(table)))
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hb_spectrum_free(s: *mut HbSpectrum) {
    free(s)
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_spectrum_order(s: *const HbSpectrum, out: *mut usize) -> HbStatus {
    guard(|| put(out, get(s, "spectrum")?.0.order))
}

/// `a_j`; `j == 0` gives `a_0`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_spectrum_cos(
    s: *const HbSpectrum,
    j: usize,
    out: *mut f64,
) -> HbStatus {
    guard(|| {
        let t = &get(s, "spectrum")?.0;
        if j > t.order {
            return Err(out_of_range("coefficient", j, t.order + 1));
        }
        put(out, t.cos(j))
    })
}

/// `b_j`; zero for `j == 0` and in the Chebyshev basis.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_spectrum_sin(
    s: *const HbSpectrum,
    j: usize,
    out: *mut f64,
) -> HbStatus {
    guard(|| {
        let t = &get(s, "spectrum")?.0;
        if j > t.order {
            return Err(out_of_range("coefficient", j, t.order + 1));
        }
        put(out, t.sin(j))
    })
}

/// Discrete variation on an `n`-point grid, cyclic for periodic functions and
/// over `[-1, 1]` otherwise.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_new(
    f: *const HbFunction,
    n: usize,
    eta: f64,
    out: *mut *mut HbVariation,
) -> HbStatus {
    guard(|| {
        let spec = &get(f, "function")?.0;
        let report = if spec.is_periodic() {
            variation::variation_periodic(spec, n, eta)?
        } else {
            variation::variation_chebyshev(spec, n, eta)?
        };
        put(out, boxed(HbVariation(report)))
    })
}

/// # Safety
/// `v` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_free(v: *mut HbVariation) {
    free(v)
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_total(v: *const HbVariation, out: *mut f64) -> HbStatus {
    guard(|| put(out, get(v, "variation")?.0.total_variation))
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_range(v: *const HbVariation, out: *mut f64) -> HbStatus {
    guard(|| put(out, get(v, "variation")?.0.range))
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_extrema_count(
    v: *const HbVariation,
    out: *mut usize,
) -> HbStatus {
    guard(|| put(out, get(v, "variation")?.0.extrema_count))
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_extremum(
    v: *const HbVariation,
    k: usize,
    out: *mut HbExtremum,
) -> HbStatus {
    guard(|| {
        let r = &get(v, "variation")?.0;
        let e = r
            .extrema
            .get(k)
            .ok_or_else(|| out_of_range("extremum", k, r.extrema.len()))?;
        put(
            out,
            HbExtremum {
                x: e.x,
                y: e.y,
                is_max: e.kind == ExtremumKind::Max,
            },
        )
    })
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_delta_count(
    v: *const HbVariation,
    out: *mut usize,
) -> HbStatus {
    guard(|| put(out, get(v, "variation")?.0.deltas.len()))
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_delta(
    v: *const HbVariation,
    k: usize,
    out: *mut f64,
) -> HbStatus {
    guard(|| {
        let d = &get(v, "variation")?.0.deltas;
        put(
            out,
            *d.get(k).ok_or_else(|| out_of_range("delta", k, d.len()))?,
        )
    })
}

/// Bound report for `j = 1..=order`; `grid == 0` picks the default grid.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_bound_report_new(
    f: *const HbFunction,
    order: usize,
    grid: usize,
    abs_tol: f64,
    rel_tol: f64,
    out: *mut *mut HbBoundReport,
) -> HbStatus {
    guard(|| {
        let grid = if grid == 0 { default_grid(order) } else { grid };
        let tol = Tolerance {
            abs: abs_tol,
            rel: rel_tol,
        };
        let report = bounds::bound_report(&get(f, "function")?.0, order, grid, tol)?;
        put(out, boxed(HbBoundReport(report)))
    })
}

/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hb_bound_report_free(r: *mut HbBoundReport) {
    free(r)
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_bound_report_row_count(
    r: *const HbBoundReport,
    out: *mut usize,
) -> HbStatus {
    guard(|| put(out, get(r, "bound report")?.0.rows.len()))
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_bound_report_all_satisfied(
    r: *const HbBoundReport,
    out: *mut bool,
) -> HbStatus {
    guard(|| put(out, get(r, "bound report")?.0.all_satisfied()))
}

/// Row `k` of the report, for `j = k + 1`.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_bound_report_row(
    r: *const HbBoundReport,
    k: usize,
    out: *mut HbBoundRow,
) -> HbStatus {
    guard(|| {
        let rows = &get(r, "bound report")?.0.rows;
        let row = rows
            .get(k)
            .ok_or_else(|| out_of_range("row", k, rows.len()))?;
        put(
            out,
            HbBoundRow {
                j: row.j,
                actual_abs_a: row.actual_abs_a,
                actual_abs_b: or_nan(row.actual_abs_b),
                bound_variation: row.bound_variation,
                bound_extrema: row.bound_extrema,
                bound_range: row.bound_range,
                ratio_tightness: or_nan(row.ratio_tightness),
                satisfied: row.satisfied.all(),
            },
        )
    })
}

/// `variation / (j·norm_squared)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_generic_bound(
    variation: f64,
    norm_squared: f64,
    j: usize,
    out: *mut f64,
) -> HbStatus {
    guard(|| {
        let params = GenericBasisParams::new(variation, norm_squared)?;
        put(out, bounds::generic_bound(&params, j)?)
    })
}

/// # Safety
/// `request` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_variation_budget(
    request: *const HbDesignRequest,
    out: *mut f64,
) -> HbStatus {
    guard(|| {
        let req = request_of(get(request, "request")?);
        req.validate()?;
        put(out, band::variation_budget(&req))
    })
}

/// # Safety
/// `request` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_design_width(
    request: *const HbDesignRequest,
    out: *mut HbBandWidths,
) -> HbStatus {
    guard(|| {
        let w = band::design_width(&request_of(get(request, "request")?))?;
        put(
            out,
            HbBandWidths {
                delta_eq11: or_nan(w.delta_eq11),
                delta_eq12: w.delta_eq12,
                delta_recommended: w.delta_recommended,
                provenance: match w.provenance {
                    WidthProvenance::Eq11 => HbProvenance::Eq11,
                    WidthProvenance::Eq12 => HbProvenance::Eq12,
                    WidthProvenance::MaxOfBoth => HbProvenance::MaxOfBoth,
                    WidthProvenance::Explicit => HbProvenance::Explicit,
                },
                already_attained: w.already_attained,
            },
        )
    })
}

/// A copy of `f` whose `j`-th harmonic is removed.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_make_center(
    f: *const HbFunction,
    j: usize,
    kind: HbCenterKind,
    grid: usize,
    out: *mut *mut HbFunction,
) -> HbStatus {
    guard(|| {
        let kind = match kind {
            HbCenterKind::Trivial => CenterKind::Trivial,
            HbCenterKind::Minimal => CenterKind::Minimal,
        };
        let grid = if grid == 0 { default_grid(j) } else { grid };
        let center = band::make_center(&get(f, "function")?.0, j, kind, grid)?;
        put(out, boxed(HbFunction(center)))
    })
}

/// A band of width `delta` around a copy of `center`.
///
/// # Safety
/// `center` and `request` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_band_new(
    center: *const HbFunction,
    delta: f64,
    request: *const HbDesignRequest,
    out: *mut *mut HbBand,
) -> HbStatus {
    guard(|| {
        let center = get(center, "center")?.0.clone();
        let req = request_of(get(request, "request")?);
        let band = BandSpec::new(center, delta, WidthProvenance::Explicit, req)?;
        put(out, boxed(HbBand(band)))
    })
}

/// Parse a band file as written by `band-design`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_band_from_json(json: *const c_char, out: *mut *mut HbBand) -> HbStatus {
    guard(|| {
        let band = band::parse_band(text(json)?)?;
        put(out, boxed(HbBand(band)))
    })
}

/// # Safety
/// `b` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hb_band_free(b: *mut HbBand) {
    free(b)
}

/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_band_delta(b: *const HbBand, out: *mut f64) -> HbStatus {
    guard(|| put(out, get(b, "band")?.0.delta()))
}

/// Clamp `f` into the band on a `grid`-point grid, giving a sampled function.
///
/// # Safety
/// `f` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_clamp_candidate(
    f: *const HbFunction,
    b: *const HbBand,
    grid: usize,
    out: *mut *mut HbFunction,
) -> HbStatus {
    guard(|| {
        let clamped = band::clamp_candidate(&get(f, "function")?.0, &get(b, "band")?.0, grid)?;
        put(out, boxed(HbFunction(clamped)))
    })
}

/// Verify `candidate` against the band with its stored request.
///
/// # Safety
/// `candidate` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_band_verify(
    candidate: *const HbFunction,
    b: *const HbBand,
    grid: usize,
    tol: f64,
    out: *mut HbVerification,
) -> HbStatus {
    guard(|| {
        let band = &get(b, "band")?.0;
        let r = band::verify_candidate(
            &get(candidate, "candidate")?.0,
            band,
            band.request(),
            grid,
            tol,
        )?;
        put(
            out,
            HbVerification {
                containment: r.containment,
                max_deviation: r.max_deviation,
                delta_variation: r.delta_function.total_variation,
                delta_extrema: r.delta_function.extrema_count,
                variation_budget: r.variation_budget,
                budget_ok: r.budget_ok,
                chain_ok: r.chain_ok,
                achieved_amplitude: r.achieved.amplitude,
                target_amplitude: r.target_amplitude,
                certified: r.certified,
            },
        )
    })
}
