//! ψ₂ (subgaussian) Orlicz norm machinery.
//!
//! `‖Z‖_{ψ₂}` is the smallest `c` with `E exp(Z²/c²) ≤ 2`. Two certified
//! constants are provided for tails dominated by `K e^{-λ²}` (plain) and
//! `K(λⁿ+1)e^{-λ²}` (with a polynomial factor), plus the empirical norm of
//! a sample.

use statrs::function::gamma::{gamma, gamma_ur};

use crate::error::{Error, Result};

/// Left-hand side of the defining equation for the plain tail
/// `P(|Z| ≥ λ) ≤ K e^{-λ²}`: `K^{1/c²} c²/(c²-1)`.
fn eq_plain(k: f64, c: f64) -> f64 {
    k.powf(1.0 / (c * c)) * c * c / (c * c - 1.0)
}

/// `∫_{y₀}^∞ λ(λⁿ+1) e^{-βλ²} dλ` in closed form through the upper
/// incomplete gamma function.
fn tail_integral(n: f64, beta: f64, y0: f64) -> f64 {
    let s = 0.5 * (n + 2.0);
    let power_part = 0.5 * beta.powf(-s) * gamma(s) * gamma_ur(s, beta * y0 * y0);
    let plain_part = (-beta * y0 * y0).exp() / (2.0 * beta);
    power_part + plain_part
}

/// Left-hand side for the polynomial-factor tail: `e^{y₀²/c²} + (2K/c²)·T`.
fn eq_poly(k: f64, n: f64, y0: f64, c: f64) -> f64 {
    let beta = 1.0 - 1.0 / (c * c);
    (y0 * y0 / (c * c)).exp() + 2.0 * k / (c * c) * tail_integral(n, beta, y0)
}

/// Largest solution of `K y^n e^{-y²} = 1`, or 0 when the left side never
/// reaches 1 (then the polynomial tail bound is ≤ 1 everywhere and the
/// split point degenerates).
fn switch_point(k: f64, n: f64) -> f64 {
    if n == 0.0 {
        return if k >= 1.0 { k.ln().sqrt() } else { 0.0 };
    }
    let g = |y: f64| k * y.powf(n) * (-y * y).exp() - 1.0;
    let peak = (n / 2.0).sqrt();
    if g(peak) < 0.0 {
        return 0.0;
    }
    let mut lo = peak;
    let mut hi = peak + 1.0;
    while g(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn bisect_decreasing<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..220 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The certified constant `c*`: any `Z` with
/// `P(|Z| ≥ λ) ≤ K(λ^{n_pow}+1)e^{-λ²}` (or `K e^{-λ²}` when `n_pow = 0`)
/// has `‖Z‖_{ψ₂} ≤ c*`. Solved by bracketed bisection; the residual of the
/// defining equation at the returned point is below 1e-12.
pub fn orlicz_psi2_const(k_tail: f64, n_pow: f64) -> Result<f64> {
    if !(k_tail >= 1.0) {
        return Err(Error::Parameter(format!("tail constant must satisfy K ≥ 1, got {k_tail}")));
    }
    if !(n_pow >= 0.0) {
        return Err(Error::Parameter(format!("power must be nonnegative, got {n_pow}")));
    }
    let f: Box<dyn Fn(f64) -> f64> = if n_pow == 0.0 {
        Box::new(move |c| eq_plain(k_tail, c) - 2.0)
    } else {
        let y0 = switch_point(k_tail, n_pow);
        Box::new(move |c| eq_poly(k_tail, n_pow, y0, c) - 2.0)
    };
    let lo = 1.0 + 1e-12;
    let hi = 1e3;
    if !(f(lo) > 0.0) || !(f(hi) < 0.0) {
        return Err(Error::Numeric("no root of the ψ₂ equation in (1, 10³)".into()));
    }
    let c = bisect_decreasing(&f, lo, hi);
    if f(c).abs() > 1e-10 {
        return Err(Error::Numeric(format!("ψ₂ bisection residual {:.2e} too large", f(c))));
    }
    Ok(c)
}

/// Residual `LHS(c) - 2` of the defining equation; exposed so callers can
/// verify solver exactness.
pub fn orlicz_residual(k_tail: f64, n_pow: f64, c: f64) -> f64 {
    if n_pow == 0.0 {
        eq_plain(k_tail, c) - 2.0
    } else {
        eq_poly(k_tail, n_pow, switch_point(k_tail, n_pow), c) - 2.0
    }
}

/// Empirical ψ₂ norm: the smallest `c` with `mean(exp(Z²/c²) - 1) ≤ 1`.
pub fn empirical_psi2_norm(samples: &[f64]) -> f64 {
    if samples.is_empty() || samples.iter().all(|&z| z == 0.0) {
        return 0.0;
    }
    let mean_minus_two = |c: f64| {
        let m: f64 =
            samples.iter().map(|&z| (z * z / (c * c)).exp()).sum::<f64>() / samples.len() as f64;
        m - 2.0
    };
    let zmax = samples.iter().fold(0.0f64, |m, &z| m.max(z.abs()));
    let mut hi = zmax.max(1e-12);
    while mean_minus_two(hi) > 0.0 {
        hi *= 2.0;
    }
    bisect_decreasing(mean_minus_two, 1e-12, hi)
}
