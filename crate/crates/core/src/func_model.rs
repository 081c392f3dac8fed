//! Function representations shared by every analysis routine.
//!
//! A [`FunctionSpec`] is either a 2π-periodic function on `[0, 2π)` or a
//! function on the Chebyshev interval `[-1, 1]`. The JSON layout is the
//! `serde` representation of the enum, tagged by `kind`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of uniform samples for periodic sampled functions.
pub const MIN_SAMPLES: usize = 4;

/// Minimum number of node values for a `samples_cheb` function.
pub const MIN_CHEB_SAMPLES: usize = 2;

/// Relative distance (in grid units) under which an abscissa is treated as a node.
const NODE_SNAP: f64 = 1e-9;

/// A knot `(x, y)` of a periodic piecewise-linear function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot(pub f64, pub f64);

impl Knot {
    pub fn x(&self) -> f64 {
        self.0
    }

    pub fn y(&self) -> f64 {
        self.1
    }
}

/// One Gaussian dip of a wake profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Deficit {
    pub center: f64,
    pub depth: f64,
    pub width: f64,
}

/// Which domain a function lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// 2π-periodic on `[0, 2π)`.
    Periodic,
    /// Defined on `[-1, 1]`.
    Chebyshev,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// `a0/2 + Σ a_j cos(jx) + b_j sin(jx)`.
    TrigPoly {
        #[serde(default)]
        a0: f64,
        #[serde(default, rename = "cos")]
        cos_coeffs: Vec<f64>,
        #[serde(default, rename = "sin")]
        sin_coeffs: Vec<f64>,
    },
    /// Values at `x_i = 2πi/n`, linearly interpolated and periodically closed.
    Samples { values: Vec<f64> },
    /// Linear interpolation between knots; the last knot connects to the first shifted by 2π.
    PiecewiseLinear { knots: Vec<Knot> },
    /// Trapezoidal square wave: `+A` on `(ε, π−ε)`, `−A` on `(π+ε, 2π−ε)`, linear ramps between.
    SmoothedSquare {
        amplitude: f64,
        ramp_half_width: f64,
    },
    /// `mean` minus periodically wrapped Gaussian dips.
    WakeProfile {
        mean: f64,
        #[serde(default)]
        deficits: Vec<Deficit>,
    },
    /// `Σ c_m T_m(x)` on `[-1, 1]`.
    PolyCheb { coeffs: Vec<f64> },
    /// Values at the first-kind Chebyshev nodes `cos(π(k+½)/n)`, interpolated barycentrically.
    SamplesCheb { values: Vec<f64> },
}

/// The `i`-th point of the uniform periodic grid with `n` points.
pub fn grid_point(i: usize, n: usize) -> f64 {
    TAU * i as f64 / n as f64
}

/// Reduce `x` into `[0, 2π)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl FunctionSpec {
    pub fn trig_poly(a0: f64, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Self {
        FunctionSpec::TrigPoly {
            a0,
            cos_coeffs,
            sin_coeffs,
        }
    }

    /// The constant function `value` (stored as a trig polynomial with `a0 = 2·value`).
    pub fn constant(value: f64) -> Self {
        Self::trig_poly(2.0 * value, Vec::new(), Vec::new())
    }

    pub fn samples(values: Vec<f64>) -> Self {
        FunctionSpec::Samples { values }
    }

    pub fn poly_cheb(coeffs: Vec<f64>) -> Self {
        FunctionSpec::PolyCheb { coeffs }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            FunctionSpec::TrigPoly { .. } => "trig_poly",
            FunctionSpec::Samples { .. } => "samples",
            FunctionSpec::PiecewiseLinear { .. } => "piecewise_linear",
            FunctionSpec::SmoothedSquare { .. } => "smoothed_square",
            FunctionSpec::WakeProfile { .. } => "wake_profile",
            FunctionSpec::PolyCheb { .. } => "poly_cheb",
            FunctionSpec::SamplesCheb { .. } => "samples_cheb",
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            FunctionSpec::PolyCheb { .. } | FunctionSpec::SamplesCheb { .. } => Domain::Chebyshev,
            _ => Domain::Periodic,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.domain() == Domain::Periodic
    }

    /// Check every structural invariant of the spec.
    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionSpec::TrigPoly {
                a0,
                cos_coeffs,
                sin_coeffs,
            } => {
                finite("a0", std::slice::from_ref(a0))?;
                finite("cos", cos_coeffs)?;
                finite("sin", sin_coeffs)
            }
            FunctionSpec::Samples { values } => {
                if values.len() < MIN_SAMPLES {
                    return Err(Error::Size {
                        what: "samples",
                        min: MIN_SAMPLES,
                        got: values.len(),
                    });
                }
                finite("values", values)
            }
            FunctionSpec::PiecewiseLinear { knots } => {
                if knots.is_empty() {
                    return Err(Error::Size {
                        what: "piecewise_linear knots",
                        min: 1,
                        got: 0,
                    });
                }
                for (i, k) in knots.iter().enumerate() {
                    if !k.0.is_finite() || !k.1.is_finite() {
                        return Err(Error::invariant("knots", format!("knot {i} is not finite")));
                    }
                    if !(0.0..TAU).contains(&k.0) {
                        return Err(Error::invariant(
                            "knots",
                            format!("knot {i} has x = {} outside [0, 2π)", k.0),
                        ));
                    }
                }
                if let Some(i) = knots.windows(2).position(|w| w[1].0 <= w[0].0) {
                    return Err(Error::invariant(
                        "knots",
                        format!(
                            "x not strictly increasing at knot {}: {} follows {}",
                            i + 1,
                            knots[i + 1].0,
                            knots[i].0
                        ),
                    ));
                }
                Ok(())
            }
            FunctionSpec::SmoothedSquare {
                amplitude,
                ramp_half_width,
            } => {
                if !(amplitude.is_finite() && *amplitude > 0.0) {
                    return Err(Error::invariant("amplitude", "must be finite and > 0"));
                }
                if !(*ramp_half_width > 0.0 && *ramp_half_width < PI / 2.0) {
                    return Err(Error::invariant("ramp_half_width", "must lie in (0, π/2)"));
                }
                Ok(())
            }
            FunctionSpec::WakeProfile { mean, deficits } => {
                finite("mean", std::slice::from_ref(mean))?;
                for (i, d) in deficits.iter().enumerate() {
                    if !(0.0..TAU).contains(&d.center) {
                        return Err(Error::invariant(
                            "deficits",
                            format!("deficit {i} center {} outside [0, 2π)", d.center),
                        ));
                    }
                    if !(d.depth.is_finite() && d.depth >= 0.0) {
                        return Err(Error::invariant(
                            "deficits",
                            format!("deficit {i} depth must be finite and >= 0"),
                        ));
                    }
                    if !(d.width.is_finite() && d.width > 0.0) {
                        return Err(Error::invariant(
                            "deficits",
                            format!("deficit {i} width must be finite and > 0"),
                        ));
                    }
                }
                Ok(())
            }
            FunctionSpec::PolyCheb { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::Size {
                        what: "poly_cheb coeffs",
                        min: 1,
                        got: 0,
                    });
                }
                finite("coeffs", coeffs)
            }
            FunctionSpec::SamplesCheb { values } => {
                if values.len() < MIN_CHEB_SAMPLES {
                    return Err(Error::Size {
                        what: "samples_cheb",
                        min: MIN_CHEB_SAMPLES,
                        got: values.len(),
                    });
                }
                finite("values", values)
            }
        }
    }

    /// Evaluate the function at `x`. Periodic kinds reduce `x` modulo 2π first.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::invariant("x", "must be finite"));
        }
        match self {
            FunctionSpec::TrigPoly {
                a0,
                cos_coeffs,
                sin_coeffs,
            } => Ok(eval_trig(*a0, cos_coeffs, sin_coeffs, reduce_angle(x))),
            FunctionSpec::Samples { values } => {
                if values.len() < MIN_SAMPLES {
                    return Err(Error::Size {
                        what: "samples",
                        min: MIN_SAMPLES,
                        got: values.len(),
                    });
                }
                Ok(eval_periodic_samples(values, reduce_angle(x)))
            }
            FunctionSpec::PiecewiseLinear { knots } => {
                if knots.is_empty() {
                    return Err(Error::Size {
                        what: "piecewise_linear knots",
                        min: 1,
                        got: 0,
                    });
                }
                Ok(eval_piecewise(knots, reduce_angle(x)))
            }
            FunctionSpec::SmoothedSquare {
                amplitude,
                ramp_half_width,
            } => Ok(eval_smoothed_square(
                *amplitude,
                *ramp_half_width,
                reduce_angle(x),
            )),
            FunctionSpec::WakeProfile { mean, deficits } => {
                Ok(eval_wake(*mean, deficits, reduce_angle(x)))
            }
            FunctionSpec::PolyCheb { coeffs } => {
                check_cheb_domain(x)?;
                Ok(clenshaw(coeffs, x))
            }
            FunctionSpec::SamplesCheb { values } => {
                check_cheb_domain(x)?;
                if values.len() < MIN_CHEB_SAMPLES {
                    return Err(Error::Size {
                        what: "samples_cheb",
                        min: MIN_CHEB_SAMPLES,
                        got: values.len(),
                    });
                }
                Ok(eval_cheb_samples(values, x))
            }
        }
    }

    /// Serialize to the JSON function-spec format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function specs always serialize")
    }
}

/// Values at `x_i = 2πi/n`, `i = 0..n−1`.
pub fn sample_uniform(spec: &FunctionSpec, n: usize) -> Result<Vec<f64>> {
    if !spec.is_periodic() {
        return Err(Error::KindMismatch {
            operation: "sample_uniform",
            expected: "periodic",
            found: spec.kind_name(),
        });
    }
    if n < MIN_SAMPLES {
        return Err(Error::Size {
            what: "uniform grid",
            min: MIN_SAMPLES,
            got: n,
        });
    }
    (0..n).map(|i| spec.evaluate(grid_point(i, n))).collect()
}

/// Parse and validate a JSON function spec.
pub fn parse_spec(text: &str) -> Result<FunctionSpec> {
    let spec: FunctionSpec = serde_json::from_str(text)?;
    spec.validate()?;
    Ok(spec)
}

fn finite(field: &'static str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::invariant(field, format!("entry {i} is not finite"))),
        None => Ok(()),
    }
}

fn check_cheb_domain(x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain { x })
    }
}

fn eval_trig(a0: f64, cos_coeffs: &[f64], sin_coeffs: &[f64], x: f64) -> f64 {
    let (s1, c1) = x.sin_cos();
    let (mut s, mut c) = (s1, c1);
    let mut acc = 0.5 * a0;
    let order = cos_coeffs.len().max(sin_coeffs.len());
    for j in 0..order {
        if let Some(a) = cos_coeffs.get(j) {
            acc += a * c;
        }
        if let Some(b) = sin_coeffs.get(j) {
            acc += b * s;
        }
        // rotate (cos jx, sin jx) -> (cos (j+1)x, sin (j+1)x)
        let next_c = c * c1 - s * s1;
        s = s * c1 + c * s1;
        c = next_c;
    }
    acc
}

fn eval_periodic_samples(values: &[f64], x: f64) -> f64 {
    let n = values.len();
    let t = x * n as f64 / TAU;
    let nearest = t.round();
    if (t - nearest).abs() <= NODE_SNAP {
        return values[nearest as usize % n];
    }
    let i = t.floor();
    let frac = t - i;
    let i = i as usize % n;
    values[i] * (1.0 - frac) + values[(i + 1) % n] * frac
}

fn eval_piecewise(knots: &[Knot], x: f64) -> f64 {
    let first = knots[0];
    let last = knots[knots.len() - 1];
    if knots.len() == 1 {
        return first.1;
    }
    let idx = knots.partition_point(|k| k.0 <= x);
    let (a, b, x) = if idx == 0 {
        (last, Knot(first.0 + TAU, first.1), x + TAU)
    } else if idx == knots.len() {
        (last, Knot(first.0 + TAU, first.1), x)
    } else {
        (knots[idx - 1], knots[idx], x)
    };
    a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0)
}

fn eval_smoothed_square(amplitude: f64, eps: f64, x: f64) -> f64 {
    if x < eps {
        amplitude * x / eps
    } else if x <= PI - eps {
        amplitude
    } else if x < PI + eps {
        amplitude * (PI - x) / eps
    } else if x <= TAU - eps {
        -amplitude
    } else {
        amplitude * (x - TAU) / eps
    }
}

fn eval_wake(mean: f64, deficits: &[Deficit], x: f64) -> f64 {
    let mut dip = 0.0;
    for d in deficits {
        // nearest image in [-π, π), plus one image on either side
        let offset = (x - d.center + PI).rem_euclid(TAU) - PI;
        for shift in [-TAU, 0.0, TAU] {
            let z = (offset + shift) / d.width;
            dip += d.depth * (-0.5 * z * z).exp();
        }
    }
    mean - dip
}

/// Clenshaw summation of `Σ c_m T_m(x)`.
pub(crate) fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    coeffs.first().copied().unwrap_or(0.0) + x * b1 - b2
}

/// First-kind Chebyshev node `cos(π(k+½)/n)` and its angle.
pub fn cheb_node(k: usize, n: usize) -> (f64, f64) {
    let theta = PI * (k as f64 + 0.5) / n as f64;
    (theta.cos(), theta)
}

fn eval_cheb_samples(values: &[f64], x: f64) -> f64 {
    let n = values.len();
    let (mut num, mut den) = (0.0, 0.0);
    for (k, &y) in values.iter().enumerate() {
        let (node, theta) = cheb_node(k, n);
        if x == node {
            return y;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * theta.sin() / (x - node);
        num += w * y;
        den += w;
    }
    num / den
}
