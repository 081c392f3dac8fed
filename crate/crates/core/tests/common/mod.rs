//! Reference computations that share no code with the library.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

/// `a0/2 + Σ a_j cos(jx) + b_j sin(jx)` with direct trigonometric calls.
pub fn trig_eval(a0: f64, cos: &[f64], sin: &[f64], x: f64) -> f64 {
    let mut acc = 0.5 * a0;
    for (j, a) in cos.iter().enumerate() {
        acc += a * ((j + 1) as f64 * x).cos();
    }
    for (j, b) in sin.iter().enumerate() {
        acc += b * ((j + 1) as f64 * x).sin();
    }
    acc
}

fn trig_derivative(cos: &[f64], sin: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (j, a) in cos.iter().enumerate() {
        let k = (j + 1) as f64;
        acc -= k * a * (k * x).sin();
    }
    for (j, b) in sin.iter().enumerate() {
        let k = (j + 1) as f64;
        acc += k * b * (k * x).cos();
    }
    acc
}

/// Zeros of `g` on `[lo, hi]` found by scanning `steps` cells and bisecting sign changes.
fn sign_changes(g: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let h = (hi - lo) / steps as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut g0 = g(x0);
    for i in 1..=steps {
        let x1 = lo + h * i as f64;
        let g1 = g(x1);
        if g0 == 0.0 {
            roots.push(x0);
        } else if g0 * g1 < 0.0 {
            let (mut a, mut b, mut ga) = (x0, x1, g0);
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                let gm = g(m);
                if gm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if (gm < 0.0) == (ga < 0.0) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x0 = x1;
        g0 = g1;
    }
    roots
}

/// Continuous total variation of a trig polynomial over one period, from the
/// critical points of its analytic derivative.
pub fn trig_poly_variation(a0: f64, cos: &[f64], sin: &[f64]) -> f64 {
    let degree = cos.len().max(sin.len()).max(1);
    let crit = sign_changes(|x| trig_derivative(cos, sin, x), 0.0, TAU, 2048 * degree);
    if crit.len() < 2 {
        return 0.0;
    }
    let vals: Vec<f64> = crit.iter().map(|&x| trig_eval(a0, cos, sin, x)).collect();
    (0..vals.len())
        .map(|k| (vals[(k + 1) % vals.len()] - vals[k]).abs())
        .sum()
}

/// `V_{-1}^{1}` of `Σ c_m T_m`, computed as the variation of `Σ c_m cos(mθ)` on `[0, π]`.
pub fn cheb_poly_variation(coeffs: &[f64]) -> f64 {
    let g = |t: f64| {
        coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * (m as f64 * t).cos())
            .sum::<f64>()
    };
    let dg = |t: f64| {
        coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| -(m as f64) * c * (m as f64 * t).sin())
            .sum::<f64>()
    };
    let degree = coeffs.len().max(2);
    let mut points = vec![0.0];
    points.extend(
        sign_changes(dg, 0.0, PI, 4096 * degree)
            .into_iter()
            .filter(|&t| t > 1e-12 && t < PI - 1e-12),
    );
    points.push(PI);
    points.windows(2).map(|w| (g(w[1]) - g(w[0])).abs()).sum()
}

/// `(1/π) ∫ f(x) cos(jx)` and the sine analogue by a brute-force rectangle rule.
pub fn brute_coefficients(f: impl Fn(f64) -> f64, j: usize, n: usize) -> (f64, f64) {
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..n {
        let x = TAU * (i as f64 + 0.5) / n as f64;
        let v = f(x);
        a += v * (j as f64 * x).cos();
        b += v * (j as f64 * x).sin();
    }
    (2.0 * a / n as f64, 2.0 * b / n as f64)
}

/// Sine coefficient of the trapezoidal square wave of amplitude `A` and ramp half-width `ε`:
/// `(4A/(πj))·sin(jε)/(jε)` for odd `j`, zero for even `j`.
pub fn trapezoid_sine_coefficient(amplitude: f64, eps: f64, j: usize) -> f64 {
    if j.is_multiple_of(2) {
        return 0.0;
    }
    let k = j as f64;
    4.0 * amplitude / (PI * k) * (k * eps).sin() / (k * eps)
}

/// Trapezoidal square wave evaluated independently of the library.
pub fn trapezoid(amplitude: f64, eps: f64, x: f64) -> f64 {
    let x = x.rem_euclid(TAU);
    let up = (x / eps).clamp(-1.0, 1.0);
    let down = ((PI - x) / eps).clamp(-1.0, 1.0);
    let wrap = ((x - TAU) / eps).clamp(-1.0, 1.0);
    amplitude
        * if x < PI / 2.0 {
            up
        } else if x < 1.5 * PI {
            down
        } else {
            wrap
        }
}

/// Deterministic generator for seeded sweeps.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut impl rand::Rng, len: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(lo..hi)).collect()
}

pub mod golden;
