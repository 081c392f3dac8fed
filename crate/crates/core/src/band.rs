//! Proximity bands that guarantee a `q`-fold reduction of one harmonic.
//!
//! Start from a center function whose `j`-th coefficient vanishes. Any
//! distorted function `f̃` with `V(f̃ − center) ≤ |a_j⁰|·π·j/q` has
//! `|a_j(f̃)| ≤ |a_j⁰|/q`. A band of constant width `δ` around the center
//! gives two sufficient widths: `|a_j⁰|·π·j/(q·N)` when the difference has
//! `N` extrema, and `|a_j⁰|·π/(2q)` from the range bound.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func_model::{grid_point, sample_uniform, FunctionSpec};
use crate::spectral::{trig_spectrum, trig_spectrum_of_samples};
use crate::variation::{variation_of_periodic_samples, VariationReport, MIN_GRID};

/// Largest `|a_j|` a band center may carry before verification is refused.
pub const CENTER_ZERO_LIMIT: f64 = 1e-8;

/// Default slack for the verifier's comparisons.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterKind {
    /// The mean of `f`.
    Trivial,
    /// `f` with its `j`-th harmonic (cosine and sine parts) removed.
    Minimal,
}

impl std::str::FromStr for CenterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(CenterKind::Trivial),
            "minimal" => Ok(CenterKind::Minimal),
            other => Err(Error::invariant(
                "center",
                format!("expected `trivial` or `minimal`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignRequest {
    pub j: usize,
    pub q: f64,
    /// Initial `a_j`, signed.
    pub a_j0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_j0: Option<f64>,
    /// Assumed extrema count of the distortion, used by the extrema-count width.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_extrema: Option<usize>,
    pub center: CenterKind,
}

impl DesignRequest {
    pub fn validate(&self) -> Result<()> {
        if self.j < 1 {
            return Err(Error::Request("harmonic j must be at least 1".into()));
        }
        if !(self.q.is_finite() && self.q > 1.0) {
            return Err(Error::Request(format!(
                "reduction factor q must be finite and > 1, got {}",
                self.q
            )));
        }
        if !self.a_j0.is_finite() || self.b_j0.is_some_and(|b| !b.is_finite()) {
            return Err(Error::Request("initial amplitude must be finite".into()));
        }
        if self.n_extrema == Some(0) {
            return Err(Error::Request("extrema count N must be at least 1".into()));
        }
        Ok(())
    }

    /// `|a_j⁰|/q`, the amplitude the design must reach.
    pub fn target_amplitude(&self) -> f64 {
        self.a_j0.abs() / self.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthProvenance {
    /// From the assumed extrema count, `|a_j⁰|·π·j/(q·N)`.
    Eq11,
    /// From the range, `|a_j⁰|·π/(2q)`.
    Eq12,
    MaxOfBoth,
    /// Supplied by the caller rather than derived.
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandWidths {
    /// Extrema-count width, present when the request carries `N`.
    pub delta_eq11: Option<f64>,
    /// Range-based width.
    pub delta_eq12: f64,
    pub delta_recommended: f64,
    pub provenance: WidthProvenance,
    /// Set when `a_j⁰ = 0`: the reduction holds without distortion.
    pub already_attained: bool,
}

/// A band `center ∓ δ/2` together with the request it was designed for.
#[derive(Debug, Clone, PartialEq)]
pub struct BandSpec {
    center: FunctionSpec,
    delta: f64,
    provenance: WidthProvenance,
    request: DesignRequest,
}

impl BandSpec {
    pub fn new(
        center: FunctionSpec,
        delta: f64,
        provenance: WidthProvenance,
        request: DesignRequest,
    ) -> Result<Self> {
        if !center.is_periodic() {
            return Err(Error::KindMismatch {
                operation: "band",
                expected: "periodic",
                found: center.kind_name(),
            });
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::invariant(
                "delta",
                "band width must be finite and > 0",
            ));
        }
        request.validate()?;
        Ok(BandSpec {
            center,
            delta,
            provenance,
            request,
        })
    }

    pub fn center(&self) -> &FunctionSpec {
        &self.center
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.delta
    }

    pub fn provenance(&self) -> WidthProvenance {
        self.provenance
    }

    pub fn request(&self) -> &DesignRequest {
        &self.request
    }

    pub fn lower(&self, x: f64) -> Result<f64> {
        Ok(self.center.evaluate(x)? - self.half_width())
    }

    pub fn upper(&self, x: f64) -> Result<f64> {
        Ok(self.center.evaluate(x)? + self.half_width())
    }

    pub fn to_file(&self) -> BandFile {
        BandFile {
            center: self.center.clone(),
            delta: self.delta,
            j: self.request.j,
            q: self.request.q,
            a_j0: self.request.a_j0,
        }
    }
}

/// The band-spec JSON layout: `{"center", "delta", "j", "q", "a_j0"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandFile {
    pub center: FunctionSpec,
    pub delta: f64,
    pub j: usize,
    pub q: f64,
    pub a_j0: f64,
}

impl BandFile {
    pub fn into_band(self) -> Result<BandSpec> {
        self.center.validate()?;
        let request = DesignRequest {
            j: self.j,
            q: self.q,
            a_j0: self.a_j0,
            b_j0: None,
            n_extrema: None,
            center: CenterKind::Minimal,
        };
        BandSpec::new(self.center, self.delta, WidthProvenance::Explicit, request)
    }
}

/// Parse a band-spec JSON document. Fields beyond the five required ones are ignored,
/// so a design report can be fed back as a band file.
pub fn parse_band(text: &str) -> Result<BandSpec> {
    let file: BandFile = serde_json::from_str(text)?;
    file.into_band()
}

/// A function whose `j`-th trigonometric coefficients vanish.
///
/// Trig polynomials keep their closed form. Other kinds become samples on the
/// `grid`-point uniform grid, where the removal is exact for the rectangle rule.
pub fn make_center(
    spec: &FunctionSpec,
    j: usize,
    kind: CenterKind,
    grid: usize,
) -> Result<FunctionSpec> {
    if j < 1 {
        return Err(Error::invariant("j", "must be at least 1"));
    }
    let table = trig_spectrum(spec, j, grid)?;
    match kind {
        CenterKind::Trivial => Ok(FunctionSpec::constant(0.5 * table.a0)),
        CenterKind::Minimal => {
            let (a, b) = (table.cos(j), table.sin(j));
            if let FunctionSpec::TrigPoly {
                a0,
                cos_coeffs,
                sin_coeffs,
            } = spec
            {
                let mut cos_coeffs = cos_coeffs.clone();
                let mut sin_coeffs = sin_coeffs.clone();
                for c in [&mut cos_coeffs, &mut sin_coeffs] {
                    if c.len() < j {
                        c.resize(j, 0.0);
                    }
                }
                cos_coeffs[j - 1] -= a;
                sin_coeffs[j - 1] -= b;
                return Ok(FunctionSpec::trig_poly(*a0, cos_coeffs, sin_coeffs));
            }
            let values = sample_uniform(spec, grid)?
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    let (s, c) = (j as f64 * grid_point(i, grid)).sin_cos();
                    v - a * c - b * s
                })
                .collect();
            Ok(FunctionSpec::samples(values))
        }
    }
}

/// `|a_j⁰|·π·j/q`, the largest variation of the distortion that still guarantees the reduction.
pub fn variation_budget(request: &DesignRequest) -> f64 {
    request.a_j0.abs() * PI * request.j as f64 / request.q
}

/// Sufficient band widths for the request.
pub fn design_width(request: &DesignRequest) -> Result<BandWidths> {
    request.validate()?;
    let amp = request.a_j0.abs();
    let delta_eq11 = request
        .n_extrema
        .map(|n| amp * PI * request.j as f64 / (request.q * n as f64));
    let delta_eq12 = amp * PI / (2.0 * request.q);
    let (delta_recommended, provenance) = match delta_eq11 {
        Some(d11) if d11 > delta_eq12 => (d11, WidthProvenance::Eq11),
        Some(d11) if d11 == delta_eq12 => (d11, WidthProvenance::MaxOfBoth),
        _ => (delta_eq12, WidthProvenance::Eq12),
    };
    Ok(BandWidths {
        delta_eq11,
        delta_eq12,
        delta_recommended,
        provenance,
        already_attained: amp == 0.0,
    })
}

/// Clamp `spec` into the band on the `grid`-point uniform grid.
pub fn clamp_candidate(spec: &FunctionSpec, band: &BandSpec, grid: usize) -> Result<FunctionSpec> {
    let values = sample_uniform(spec, grid)?;
    let centers = sample_uniform(band.center(), grid)?;
    let h = band.half_width();
    let clamped = values
        .iter()
        .zip(&centers)
        .map(|(&v, &c)| {
            let (lo, hi) = band_limits(c, h);
            v.clamp(lo, hi)
        })
        .collect();
    Ok(FunctionSpec::samples(clamped))
}

/// `(c − h, c + h)` rounded inward so that both differences from `c` stay within `h`.
fn band_limits(c: f64, h: f64) -> (f64, f64) {
    let mut lo = c - h;
    while c - lo > h {
        lo = lo.next_up();
    }
    let mut hi = c + h;
    while hi - c > h {
        hi = hi.next_down();
    }
    (lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Achieved {
    /// `|a_j(f̃)|`.
    pub amplitude: f64,
    /// `|b_j(f̃)|`, reported for information.
    pub sine_amplitude: f64,
    /// `|a_j⁰| / |a_j(f̃)|`; absent when the achieved amplitude is exactly zero.
    pub reduction_factor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub containment: bool,
    pub max_deviation: f64,
    pub delta_function: VariationReport,
    pub variation_budget: f64,
    pub budget_ok: bool,
    /// `V(f_Δ) ≤ N·δ` with `N` measured on `f_Δ`; informational.
    pub chain_ok: bool,
    pub achieved: Achieved,
    pub target_amplitude: f64,
    pub certified: bool,
    pub tolerance: f64,
    pub grid: usize,
}

/// Check a candidate against the band and certify the reduction from its actual amplitude.
pub fn verify_candidate(
    candidate: &FunctionSpec,
    band: &BandSpec,
    request: &DesignRequest,
    grid: usize,
    tol: f64,
) -> Result<VerificationResult> {
    request.validate()?;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::invariant("tolerance", "must be finite and >= 0"));
    }
    if grid < MIN_GRID {
        return Err(Error::Size {
            what: "verification grid",
            min: MIN_GRID,
            got: grid,
        });
    }
    let j = request.j;
    let center_values = sample_uniform(band.center(), grid)?;
    let center_table = trig_spectrum(band.center(), j, grid)?;
    let center_amp = center_table.cos(j).abs();
    if center_amp > CENTER_ZERO_LIMIT {
        return Err(Error::CenterNotZeroed {
            j,
            amplitude: center_amp,
            limit: CENTER_ZERO_LIMIT,
        });
    }

    let candidate_values = sample_uniform(candidate, grid)?;
    let diff: Vec<f64> = candidate_values
        .iter()
        .zip(&center_values)
        .map(|(f, c)| f - c)
        .collect();
    let max_deviation = diff.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    let delta_function = variation_of_periodic_samples(&diff, 0.0);

    let budget = variation_budget(request);
    let v = delta_function.total_variation;
    let budget_ok = v <= budget + tol;
    let chain_ok = v <= delta_function.extrema_count as f64 * band.delta() + tol;

    let table = trig_spectrum_of_samples(&candidate_values, j);
    let amplitude = table.cos(j).abs();
    let achieved = Achieved {
        amplitude,
        sine_amplitude: table.sin(j).abs(),
        reduction_factor: (amplitude > 0.0).then(|| request.a_j0.abs() / amplitude),
    };
    let target_amplitude = request.target_amplitude();

    Ok(VerificationResult {
        containment: max_deviation <= band.half_width() + tol,
        max_deviation,
        delta_function,
        variation_budget: budget,
        budget_ok,
        chain_ok,
        achieved,
        target_amplitude,
        certified: amplitude <= target_amplitude + tol,
        tolerance: tol,
        grid,
    })
}
