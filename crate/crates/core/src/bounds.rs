//! Coefficient-magnitude bounds from total variation and range.
//!
//! For the trigonometric basis on `[0, 2π]` every harmonic satisfies
//!
//! ```text
//! |a_j|, |b_j| ≤ V / (π j) = (Σ Δ_k) / (π j)      and      |a_j|, |b_j| ≤ (2/π) Δ
//! ```
//!
//! and for Chebyshev polynomials on `[-1, 1]`, `|a_j| ≤ 2V / (π j)`. Both are
//! instances of `|c_j| ≤ V / (j ‖N‖²)` with `‖N‖²` the squared norm of the
//! basis: π for `cos jx`/`sin jx`, π/2 for `T_j`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func_model::FunctionSpec;
use crate::spectral::{cheb_spectrum, trig_spectrum, Basis, SpectrumTable};
use crate::variation::{variation_chebyshev, variation_periodic, VariationReport};

/// Absolute part of the default tolerance.
pub const DEFAULT_ABS_TOL: f64 = 1e-8;
/// Relative part of the default tolerance, scaled by the bound.
pub const DEFAULT_REL_TOL: f64 = 1e-6;

/// `abs + rel·bound`, the slack allowed for discretization error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: DEFAULT_ABS_TOL,
            rel: DEFAULT_REL_TOL,
        }
    }
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }

    pub fn slack(&self, bound: f64) -> f64 {
        self.abs + self.rel * bound
    }

    pub fn admits(&self, actual: f64, bound: f64) -> bool {
        actual <= bound + self.slack(bound)
    }

    fn validate(&self) -> Result<()> {
        if self.abs.is_finite() && self.rel.is_finite() && self.abs >= 0.0 && self.rel >= 0.0 {
            Ok(())
        } else {
            Err(Error::invariant("tolerance", "must be finite and >= 0"))
        }
    }
}

/// Parameters of the basis-independent bound `V / (j ‖N‖²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenericBasisParams {
    pub variation: f64,
    pub norm_squared: f64,
}

impl GenericBasisParams {
    pub fn new(variation: f64, norm_squared: f64) -> Result<Self> {
        if !(variation.is_finite() && variation >= 0.0) {
            return Err(Error::invariant("variation", "must be finite and >= 0"));
        }
        if !(norm_squared.is_finite() && norm_squared > 0.0) {
            return Err(Error::invariant("norm_squared", "must be finite and > 0"));
        }
        Ok(GenericBasisParams {
            variation,
            norm_squared,
        })
    }

    pub fn for_basis(variation: f64, basis: Basis) -> Result<Self> {
        Self::new(variation, basis.norm_squared())
    }
}

/// `V / (j · ‖N‖²)`.
pub fn generic_bound(params: &GenericBasisParams, j: usize) -> Result<f64> {
    if j < 1 {
        return Err(Error::invariant("j", "must be at least 1"));
    }
    Ok(params.variation / (j as f64 * params.norm_squared))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowVerdict {
    pub variation: bool,
    pub extrema: bool,
    pub range: bool,
}

impl RowVerdict {
    pub fn all(&self) -> bool {
        self.variation && self.extrema && self.range
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub j: usize,
    pub actual_abs_a: f64,
    /// `|b_j|`; absent for the Chebyshev basis.
    pub actual_abs_b: Option<f64>,
    pub bound_variation: f64,
    pub bound_extrema: f64,
    pub bound_range: f64,
    /// `max(actual) / bound_variation`; absent when the bound is zero.
    pub ratio_tightness: Option<f64>,
    pub satisfied: RowVerdict,
}

impl BoundRow {
    pub fn max_actual(&self) -> f64 {
        self.actual_abs_a.max(self.actual_abs_b.unwrap_or(0.0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub basis: Basis,
    pub rows: Vec<BoundRow>,
    pub tolerance: Tolerance,
    pub spectrum: SpectrumTable,
    pub variation: VariationReport,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.rows.iter().all(|r| r.satisfied.all())
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| !r.satisfied.all())
    }
}

/// Check `|a_j|` and `|b_j|` for `j = 1..=order` against the variation,
/// extrema-sum and range bounds.
pub fn bound_report_trig(
    spec: &FunctionSpec,
    order: usize,
    grid: usize,
    tol: Tolerance,
) -> Result<BoundReport> {
    tol.validate()?;
    let spectrum = trig_spectrum(spec, order, grid)?;
    let variation = variation_periodic(spec, grid, 0.0)?;
    Ok(assemble(Basis::Trig, spectrum, variation, tol))
}

/// Chebyshev counterpart of [`bound_report_trig`]; rows carry `|a_j|` only.
pub fn bound_report_cheb(
    spec: &FunctionSpec,
    order: usize,
    grid: usize,
    tol: Tolerance,
) -> Result<BoundReport> {
    tol.validate()?;
    let spectrum = cheb_spectrum(spec, order, grid)?;
    let variation = variation_chebyshev(spec, grid, 0.0)?;
    Ok(assemble(Basis::Chebyshev, spectrum, variation, tol))
}

/// Report in the basis matching the spec's domain.
pub fn bound_report(
    spec: &FunctionSpec,
    order: usize,
    grid: usize,
    tol: Tolerance,
) -> Result<BoundReport> {
    if spec.is_periodic() {
        bound_report_trig(spec, order, grid, tol)
    } else {
        bound_report_cheb(spec, order, grid, tol)
    }
}

fn assemble(
    basis: Basis,
    spectrum: SpectrumTable,
    variation: VariationReport,
    tol: Tolerance,
) -> BoundReport {
    let norm_squared = basis.norm_squared();
    let by_variation = GenericBasisParams {
        variation: variation.total_variation,
        norm_squared,
    };
    let by_extrema = GenericBasisParams {
        variation: variation.delta_sum(),
        norm_squared,
    };
    // the range bound has the same constant 2/π in both bases
    let bound_range = 2.0 / PI * variation.range;

    let rows = (1..=spectrum.order)
        .map(|j| {
            let bound_variation = generic_bound(&by_variation, j).expect("j >= 1");
            let bound_extrema = generic_bound(&by_extrema, j).expect("j >= 1");
            let actual_abs_a = spectrum.cos(j).abs();
            let actual_abs_b = match basis {
                Basis::Trig => Some(spectrum.sin(j).abs()),
                Basis::Chebyshev => None,
            };
            let actual = actual_abs_a.max(actual_abs_b.unwrap_or(0.0));
            let ratio_tightness = (bound_variation > 0.0).then(|| actual / bound_variation);
            BoundRow {
                j,
                actual_abs_a,
                actual_abs_b,
                bound_variation,
                bound_extrema,
                bound_range,
                ratio_tightness,
                satisfied: RowVerdict {
                    variation: tol.admits(actual, bound_variation),
                    extrema: tol.admits(actual, bound_extrema),
                    range: tol.admits(actual, bound_range),
                },
            }
        })
        .collect();
    BoundReport {
        basis,
        rows,
        tolerance: tol,
        spectrum,
        variation,
    }
}
