//! Trigonometric and Chebyshev expansion coefficients by fixed-grid quadrature.
//!
//! Normalization matches the classical Fourier series:
//! `a_j = (1/π)∫₀^{2π} f(x) cos(jx) dx` for the trigonometric basis and
//! `a_j = (2/π)∫₀^π f(cos θ) cos(jθ) dθ` for Chebyshev polynomials, so that
//! `f = a0/2 + Σ …` in both cases.
//!
//! The trigonometric rule is the rectangle rule on `x_i = 2πi/n`, exact for
//! trigonometric polynomials of degree below `n/2`. The Chebyshev rule uses
//! midpoint angles `θ_k = π(k+½)/n`, so the `1/√(1−x²)` weight never has to be
//! evaluated at the interval ends.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func_model::{grid_point, sample_uniform, FunctionSpec};

/// Required ratio between grid size and expansion order.
pub const ALIAS_MARGIN: usize = 8;

/// Grid used when the caller does not pick one.
pub const DEFAULT_GRID: usize = 4096;

/// `max(4096, 8·order)`.
pub fn default_grid(order: usize) -> usize {
    DEFAULT_GRID.max(ALIAS_MARGIN * order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Trig,
    Chebyshev,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Trig => "trig",
            Basis::Chebyshev => "chebyshev",
        }
    }

    /// Squared norm of the basis elements with `j ≥ 1` under the expansion's inner product.
    pub fn norm_squared(self) -> f64 {
        match self {
            Basis::Trig => PI,
            Basis::Chebyshev => PI / 2.0,
        }
    }
}

/// Expansion coefficients up to a fixed order.
///
/// `cos_coeffs[j-1]` holds `a_j`; `sin_coeffs[j-1]` holds `b_j` and is empty
/// for the Chebyshev basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub basis: Basis,
    pub a0: f64,
    #[serde(rename = "cos")]
    pub cos_coeffs: Vec<f64>,
    #[serde(rename = "sin")]
    pub sin_coeffs: Vec<f64>,
    pub order: usize,
    pub grid: usize,
}

impl SpectrumTable {
    /// `a_j` for `j ≥ 1`, or `a0` for `j = 0`.
    pub fn cos(&self, j: usize) -> f64 {
        if j == 0 {
            self.a0
        } else {
            self.cos_coeffs.get(j - 1).copied().unwrap_or(0.0)
        }
    }

    /// `b_j`; zero for `j = 0`, out-of-range `j`, and the Chebyshev basis.
    pub fn sin(&self, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            self.sin_coeffs.get(j - 1).copied().unwrap_or(0.0)
        }
    }
}

fn check_grid(order: usize, grid: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::invariant("order", "must be at least 1"));
    }
    let required = ALIAS_MARGIN * order;
    if grid < required {
        return Err(Error::AntiAliasing {
            order,
            grid,
            required,
        });
    }
    Ok(())
}

/// Trigonometric coefficients `a0, a_j, b_j` for `j = 1..=order` from samples of `spec`.
pub fn trig_spectrum(spec: &FunctionSpec, order: usize, grid: usize) -> Result<SpectrumTable> {
    if !spec.is_periodic() {
        return Err(Error::KindMismatch {
            operation: "trig_spectrum",
            expected: "periodic",
            found: spec.kind_name(),
        });
    }
    check_grid(order, grid)?;
    let values = sample_uniform(spec, grid)?;
    Ok(trig_spectrum_of_samples(&values, order))
}

/// Rectangle-rule coefficients of uniform samples `values[i] = f(2πi/n)`.
///
/// The caller is responsible for the anti-aliasing margin.
pub(crate) fn trig_spectrum_of_samples(values: &[f64], order: usize) -> SpectrumTable {
    let n = values.len();
    // cos/sin of 2πm/n; the product j·i is reduced mod n so every angle is exact
    let (cos_table, sin_table): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|m| {
            let (s, c) = grid_point(m, n).sin_cos();
            (c, s)
        })
        .unzip();
    let scale = 2.0 / n as f64;

    let a0 = scale * values.iter().sum::<f64>();
    let mut cos_coeffs = Vec::with_capacity(order);
    let mut sin_coeffs = Vec::with_capacity(order);
    for j in 1..=order {
        let (mut a, mut b) = (0.0, 0.0);
        let mut m = 0usize;
        let step = j % n;
        for &v in values {
            a += v * cos_table[m];
            b += v * sin_table[m];
            m += step;
            if m >= n {
                m -= n;
            }
        }
        cos_coeffs.push(scale * a);
        sin_coeffs.push(scale * b);
    }
    SpectrumTable {
        basis: Basis::Trig,
        a0,
        cos_coeffs,
        sin_coeffs,
        order,
        grid: n,
    }
}

/// Chebyshev first-kind coefficients `a0, a_j` for `j = 1..=order`.
pub fn cheb_spectrum(spec: &FunctionSpec, order: usize, grid: usize) -> Result<SpectrumTable> {
    if spec.is_periodic() {
        return Err(Error::KindMismatch {
            operation: "cheb_spectrum",
            expected: "Chebyshev-domain",
            found: spec.kind_name(),
        });
    }
    check_grid(order, grid)?;
    let values = (0..grid)
        .map(|k| spec.evaluate(crate::func_model::cheb_node(k, grid).0))
        .collect::<Result<Vec<_>>>()?;

    // cos(πm/(2n)) for m in 0..4n; cos(jθ_k) = cos(π·j(2k+1)/(2n))
    let period = 4 * grid;
    let cos_table: Vec<f64> = (0..period)
        .map(|m| (TAU * m as f64 / period as f64).cos())
        .collect();
    let scale = 2.0 / grid as f64;

    let a0 = scale * values.iter().sum::<f64>();
    let cos_coeffs = (1..=order)
        .map(|j| {
            let acc: f64 = values
                .iter()
                .enumerate()
                .map(|(k, v)| v * cos_table[(j * (2 * k + 1)) % period])
                .sum();
            scale * acc
        })
        .collect();
    Ok(SpectrumTable {
        basis: Basis::Chebyshev,
        a0,
        cos_coeffs,
        sin_coeffs: Vec::new(),
        order,
        grid,
    })
}

/// Coefficients in whichever basis matches the spec's domain.
pub fn spectrum(spec: &FunctionSpec, order: usize, grid: usize) -> Result<SpectrumTable> {
    if spec.is_periodic() {
        trig_spectrum(spec, order, grid)
    } else {
        cheb_spectrum(spec, order, grid)
    }
}

/// Partial-sum reconstruction `a0/2 + Σ_{j≤M}(a_j cos jx + b_j sin jx)`.
pub fn synthesize(table: &SpectrumTable) -> Result<FunctionSpec> {
    if table.basis != Basis::Trig {
        return Err(Error::BasisMismatch {
            operation: "synthesize",
            basis: table.basis.name(),
        });
    }
    Ok(FunctionSpec::trig_poly(
        table.a0,
        table.cos_coeffs.clone(),
        table.sin_coeffs.clone(),
    ))
}
