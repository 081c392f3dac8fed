//! Total variation and extrema structure on a sampling grid.
//!
//! Variation is computed on the evaluation grid: `V = Σ |f(x_{i+1}) − f(x_i)|`,
//! with the wrap-around term for periodic functions. Extrema are turning
//! points of the difference sequence; runs of differences with magnitude at
//! most `η` are plateaus and collapse to one extremum at their midpoint.
//!
//! `deltas[k]` is the variation accumulated between consecutive segment
//! boundaries. On a monotone segment that is exactly the absolute difference
//! of the bounding extrema, and `V` is defined as their sum, so `Σ Δ_k = V`
//! holds bit-for-bit.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func_model::{sample_uniform, FunctionSpec};

/// Smallest grid accepted by the variation routines.
pub const MIN_GRID: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub x: f64,
    pub y: f64,
    pub kind: ExtremumKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationReport {
    pub total_variation: f64,
    /// Periodic: every extremum in cyclic order. Interval: interior extrema only.
    pub extrema: Vec<Extremum>,
    pub deltas: Vec<f64>,
    pub extrema_count: usize,
    pub range: f64,
    pub plateau_tolerance: f64,
    pub grid: usize,
}

impl VariationReport {
    pub fn delta_sum(&self) -> f64 {
        sum(&self.deltas)
    }
}

/// `V(f(cos θ))` over `[0, π]` against `V(f)` over `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_diff: f64,
}

/// Point `i` of the `n`-point uniform grid on `[-1, 1]`, endpoints included.
pub fn interval_grid_point(i: usize, n: usize) -> f64 {
    if i + 1 == n {
        1.0
    } else {
        -1.0 + 2.0 * i as f64 / (n - 1) as f64
    }
}

fn check_params(n: usize, eta: f64) -> Result<()> {
    if n < MIN_GRID {
        return Err(Error::Size {
            what: "variation grid",
            min: MIN_GRID,
            got: n,
        });
    }
    if !(eta.is_finite() && eta >= 0.0) {
        return Err(Error::invariant(
            "plateau_tolerance",
            "must be finite and >= 0",
        ));
    }
    Ok(())
}

/// Variation report of a periodic function on the `n`-point uniform grid.
pub fn variation_periodic(spec: &FunctionSpec, n: usize, eta: f64) -> Result<VariationReport> {
    if !spec.is_periodic() {
        return Err(Error::KindMismatch {
            operation: "variation_periodic",
            expected: "periodic",
            found: spec.kind_name(),
        });
    }
    check_params(n, eta)?;
    let values = sample_uniform(spec, n)?;
    Ok(variation_of_periodic_samples(&values, eta))
}

/// Variation report of uniform periodic samples `values[i] = f(2πi/n)`.
pub fn variation_of_periodic_samples(values: &[f64], eta: f64) -> VariationReport {
    let n = values.len();
    let d = decompose(values, true, eta);
    let position = |p: f64| (TAU * p / n as f64) % TAU;
    build_report(values, d, eta, position)
}

/// Variation report of a function on `[-1, 1]` using an `n`-point uniform grid.
///
/// The interval ends are always segment boundaries; `extrema_count` counts
/// interior extrema only, and `deltas` has `extrema_count + 1` entries.
pub fn variation_chebyshev(spec: &FunctionSpec, n: usize, eta: f64) -> Result<VariationReport> {
    if spec.is_periodic() {
        return Err(Error::KindMismatch {
            operation: "variation_chebyshev",
            expected: "Chebyshev-domain",
            found: spec.kind_name(),
        });
    }
    check_params(n, eta)?;
    let values = (0..n)
        .map(|i| spec.evaluate(interval_grid_point(i, n)))
        .collect::<Result<Vec<_>>>()?;
    let d = decompose(&values, false, eta);
    let position = |p: f64| -1.0 + 2.0 * p / (n - 1) as f64;
    Ok(build_report(&values, d, eta, position))
}

/// Compare the variation of `θ ↦ f(cos θ)` on `[0, π]` with that of `f` on `[-1, 1]`.
pub fn check_variation_identity(spec: &FunctionSpec, n: usize) -> Result<VariationIdentity> {
    let rhs = variation_chebyshev(spec, n, 0.0)?.total_variation;
    let composed = (0..n)
        .map(|i| {
            let theta = PI * i as f64 / (n - 1) as f64;
            spec.evaluate(theta.cos().clamp(-1.0, 1.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let lhs = decompose(&composed, false, 0.0).total();
    Ok(VariationIdentity {
        lhs,
        rhs,
        rel_diff: (lhs - rhs).abs() / rhs.max(1e-30),
    })
}

struct Turn {
    /// Fractional sample position of the plateau midpoint.
    position: f64,
    /// Sample index that starts the next segment.
    split: usize,
    kind: ExtremumKind,
}

struct Decomposition {
    turns: Vec<Turn>,
    deltas: Vec<f64>,
    /// Direct variation, used only when a cyclic sequence has no turning point.
    flat_variation: f64,
}

impl Decomposition {
    fn total(&self) -> f64 {
        if self.deltas.is_empty() {
            self.flat_variation
        } else {
            sum(&self.deltas)
        }
    }
}

/// Left-to-right sum starting from `+0.0`, the one summation order used for `V` and `Σ Δ_k`.
fn sum(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc, v| acc + v)
}

fn decompose(values: &[f64], cyclic: bool, eta: f64) -> Decomposition {
    let n = values.len();
    let diff_count = if cyclic { n } else { n.saturating_sub(1) };
    let diffs: Vec<f64> = (0..diff_count)
        .map(|i| values[(i + 1) % n] - values[i])
        .collect();
    let significant: Vec<usize> = (0..diff_count).filter(|&i| diffs[i].abs() > eta).collect();

    let mut turns = Vec::new();
    let pair_count = if cyclic {
        significant.len()
    } else {
        significant.len().saturating_sub(1)
    };
    for k in 0..pair_count {
        let p = significant[k];
        let q = significant[(k + 1) % significant.len()];
        let rising = diffs[p] > 0.0;
        if rising == (diffs[q] > 0.0) {
            continue;
        }
        // plateau samples are p+1 ..= q (cyclically)
        let gap = if q > p { q - p } else { q + n - p };
        let start = p + 1;
        let offset = (gap - 1) / 2;
        let position = start as f64 + (gap - 1) as f64 / 2.0;
        let split = if cyclic {
            (start + offset) % n
        } else {
            start + offset
        };
        turns.push(Turn {
            position,
            split,
            kind: if rising {
                ExtremumKind::Max
            } else {
                ExtremumKind::Min
            },
        });
    }
    if cyclic {
        turns.sort_by_key(|t| t.split);
    }

    let segment = |from: usize, to: usize| -> f64 {
        // diffs with index in [from, to), cyclic when to <= from
        let mut acc = 0.0;
        let mut i = from;
        loop {
            if i == to {
                break acc;
            }
            acc += diffs[i].abs();
            i += 1;
            if cyclic && i == diff_count && to != diff_count {
                i = 0;
            }
        }
    };

    let mut deltas = Vec::new();
    let mut flat_variation = 0.0;
    if cyclic {
        if turns.is_empty() {
            flat_variation = diffs.iter().map(|d| d.abs()).sum();
        } else {
            for k in 0..turns.len() {
                let from = turns[k].split;
                let to = turns[(k + 1) % turns.len()].split;
                deltas.push(segment(from, to));
            }
        }
    } else {
        let mut bounds = vec![0];
        bounds.extend(turns.iter().map(|t| t.split));
        bounds.push(diff_count);
        deltas = bounds.windows(2).map(|w| segment(w[0], w[1])).collect();
    }
    Decomposition {
        turns,
        deltas,
        flat_variation,
    }
}

fn build_report(
    values: &[f64],
    d: Decomposition,
    eta: f64,
    position: impl Fn(f64) -> f64,
) -> VariationReport {
    let n = values.len();
    let total_variation = d.total();
    let extrema = d
        .turns
        .iter()
        .map(|t| Extremum {
            x: position(t.position),
            y: values[t.split % n],
            kind: t.kind,
        })
        .collect::<Vec<_>>();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    VariationReport {
        total_variation,
        extrema_count: extrema.len(),
        extrema,
        deltas: d.deltas,
        range: max - min,
        plateau_tolerance: eta,
        grid: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cos_j(j: usize) -> FunctionSpec {
        let mut c = vec![0.0; j];
        c[j - 1] = 1.0;
        FunctionSpec::trig_poly(0.0, c, vec![])
    }

    fn t_j(j: usize) -> FunctionSpec {
        let mut c = vec![0.0; j + 1];
        c[j] = 1.0;
        FunctionSpec::poly_cheb(c)
    }

    #[test]
    fn cosine_variation() {
        let r = variation_periodic(&cos_j(1), 4096, 0.0).unwrap();
        assert_abs_diff_eq!(r.total_variation, 4.0, epsilon = 1e-6);
        assert_eq!(r.extrema_count, 2);
        assert_eq!(r.deltas.len(), 2);
        for d in &r.deltas {
            assert_abs_diff_eq!(*d, 2.0, epsilon = 1e-6);
        }
        assert_abs_diff_eq!(r.range, 2.0, epsilon = 1e-12);
        // the maximum at x = 0 sits on the wrap and is reported once
        let max = r
            .extrema
            .iter()
            .find(|e| e.kind == ExtremumKind::Max)
            .unwrap();
        assert_eq!((max.x, max.y), (0.0, 1.0));
    }

    #[test]
    fn cos_3x_variation() {
        let r = variation_periodic(&cos_j(3), 4096, 0.0).unwrap();
        assert_abs_diff_eq!(r.total_variation, 12.0, epsilon = 1e-5);
        assert_eq!(r.extrema_count, 6);
    }

    #[test]
    fn constant_has_no_variation() {
        let r = variation_periodic(&FunctionSpec::constant(5.0), 64, 0.0).unwrap();
        assert_eq!(r.total_variation, 0.0);
        assert_eq!(r.extrema_count, 0);
        assert_eq!(r.range, 0.0);
        assert!(r.deltas.is_empty());
    }

    #[test]
    fn grid_too_small() {
        assert!(matches!(
            variation_periodic(&cos_j(1), 15, 0.0),
            Err(Error::Size {
                min: 16,
                got: 15,
                ..
            })
        ));
        assert!(variation_periodic(&cos_j(1), 64, -1.0).is_err());
    }

    #[test]
    fn plateau_collapses_to_one_extremum() {
        // flat top of four equal samples
        let v = [
            0.0, 1.0, 2.0, 2.0, 2.0, 2.0, 1.0, 0.0, -1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        ];
        let r = variation_of_periodic_samples(&v, 0.0);
        assert_eq!(r.extrema_count, 2);
        assert_eq!(r.total_variation, 6.0);
        assert_eq!(r.delta_sum(), r.total_variation);
        let max = r.extrema[0];
        assert_eq!(max.kind, ExtremumKind::Max);
        // plateau covers samples 2..=5, midpoint 3.5
        assert_abs_diff_eq!(max.x, TAU * 3.5 / 16.0, epsilon = 1e-15);
        assert_eq!(max.y, 2.0);
    }

    #[test]
    fn tolerance_merges_small_ripples() {
        let v = [0.0, 1.0, 1.001, 1.0, 1.002, 1.0, 0.0, -1.0];
        let strict = variation_of_periodic_samples(&v, 0.0);
        let loose = variation_of_periodic_samples(&v, 0.01);
        assert_eq!(strict.extrema_count, 4);
        assert_eq!(loose.extrema_count, 2);
        assert_eq!(loose.delta_sum(), loose.total_variation);
        assert_abs_diff_eq!(
            loose.total_variation,
            strict.total_variation,
            epsilon = 1e-15
        );
    }

    #[test]
    fn chebyshev_examples() {
        let r = variation_chebyshev(&t_j(5), 4096, 0.0).unwrap();
        assert_abs_diff_eq!(r.total_variation, 10.0, epsilon = 1e-5);
        assert_eq!(r.extrema_count, 4);
        assert_eq!(r.deltas.len(), 5);

        let r = variation_chebyshev(&FunctionSpec::poly_cheb(vec![3.0]), 64, 0.0).unwrap();
        assert_eq!(r.total_variation, 0.0);

        let r = variation_chebyshev(&FunctionSpec::poly_cheb(vec![0.0, 1.0]), 64, 0.0).unwrap();
        assert_abs_diff_eq!(r.total_variation, 2.0, epsilon = 1e-15);
        assert_eq!(r.extrema_count, 0);
        assert_abs_diff_eq!(r.range, 2.0, epsilon = 1e-15);
        assert_eq!(r.deltas, vec![r.total_variation]);
    }

    #[test]
    fn chebyshev_kind_mismatch() {
        assert!(matches!(
            variation_chebyshev(&cos_j(1), 64, 0.0),
            Err(Error::KindMismatch { .. })
        ));
        assert!(matches!(
            variation_periodic(&t_j(2), 64, 0.0),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn identity_examples() {
        let id = check_variation_identity(&t_j(3), 4096).unwrap();
        assert_abs_diff_eq!(id.lhs, 6.0, epsilon = 1e-5);
        assert_abs_diff_eq!(id.rhs, 6.0, epsilon = 1e-5);
        assert!(id.rel_diff <= 1e-6, "{id:?}");

        let id = check_variation_identity(&FunctionSpec::poly_cheb(vec![2.5]), 256).unwrap();
        assert_eq!((id.lhs, id.rhs), (0.0, 0.0));

        let id = check_variation_identity(&FunctionSpec::poly_cheb(vec![0.0, 1.0]), 256).unwrap();
        assert_abs_diff_eq!(id.lhs, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(id.rhs, 2.0, epsilon = 1e-12);
    }
}
