//! Adaptive quadrature helpers.
//!
//! A Gauss–Kronrod 7-15 rule drives an interval-splitting integrator for
//! finite panels, with two specialized routines on top: semi-infinite
//! integrals of decaying functions (doubling panels with a convergence
//! check) and the log-singular integrals
//! `∫_0^X φ(u) / (u (log 1/u)^{1/2}) du`, which are tamed exactly by the
//! substitution `u = e^{-v²}`.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// One Gauss–Kronrod 7-15 pass over `[a, b]`. Returns `(estimate, error)`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (fl, fr) = if i == 7 {
            let v = f(c);
            (v, 0.0)
        } else {
            (f(c - h * x), f(c + h * x))
        };
        kronrod += w * (fl + fr);
        if i % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss-7 nodes; the
            // midpoint (i = 7) enters once since fr = 0 there
            gauss += WG[i / 2] * (fl + fr);
        }
    }
    let est = kronrod * h;
    let err = ((kronrod - gauss) * h).abs();
    (est, err)
}

/// Adaptive integration over a finite interval.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut stack = vec![(a, b, 0u32)];
    let mut total = 0.0;
    let mut err_total = 0.0;
    let full = (b - a).abs();
    while let Some((lo, hi, depth)) = stack.pop() {
        let (est, err) = gk15(f, lo, hi);
        if !est.is_finite() {
            return Err(Error::Numeric(format!(
                "quadrature hit a non-finite value on [{lo}, {hi}]"
            )));
        }
        let local_tol = abs_tol * (hi - lo).abs() / full;
        if err <= local_tol || err <= rel_tol * est.abs() || depth >= 48 {
            if depth >= 48 && err > 1e3 * local_tol.max(rel_tol * est.abs()) {
                return Err(Error::Numeric(format!(
                    "quadrature did not converge on [{lo}, {hi}] (err = {err:e})"
                )));
            }
            total += est;
            err_total += err;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    let _ = err_total;
    Ok(total)
}

/// `∫_a^∞ f` for an (eventually) decaying integrand: integrate doubling
/// panels `[V, 2V]` until a panel contributes less than the tolerance.
/// Errors out if the panel contributions stop shrinking.
pub fn integrate_decaying<F: Fn(f64) -> f64>(f: &F, a: f64, rel_tol: f64) -> Result<f64> {
    let mut v = if a > 0.0 { a } else { 0.0 };
    let first_hi = if v > 0.0 { 2.0 * v } else { 1.0 };
    let mut total = adaptive(f, v, first_hi, rel_tol, 1e-300)?;
    v = first_hi;
    let mut prev = f64::INFINITY;
    let mut stall = 0u32;
    for _ in 0..64 {
        let panel = adaptive(f, v, 2.0 * v, rel_tol, 1e-300)?;
        total += panel;
        v *= 2.0;
        let mag = panel.abs();
        if mag <= rel_tol * total.abs().max(1e-300) {
            return Ok(total);
        }
        if mag >= prev * 0.95 {
            stall += 1;
            if stall >= 6 {
                return Err(Error::Numeric(
                    "tail integral does not converge (panel contributions stopped shrinking)".into(),
                ));
            }
        } else {
            stall = 0;
        }
        prev = mag;
    }
    Err(Error::Numeric("tail integral did not converge within 64 doublings".into()))
}

/// `∫_0^X φ(u) / (u (log 1/u)^{1/2}) du` for `0 < X < 1`, computed as
/// `2 ∫_{√(log 1/X)}^∞ φ(e^{-v²}) dv`. Divergence (φ decaying too slowly
/// at zero) is reported as a numeric error.
pub fn integrate_log_singular<F: Fn(f64) -> f64>(phi: &F, x_max: f64, rel_tol: f64) -> Result<f64> {
    if !(x_max > 0.0 && x_max < 1.0) {
        return Err(Error::Domain(format!("upper limit must be in (0,1), got {x_max}")));
    }
    let a = (1.0 / x_max).ln().sqrt();
    let g = |v: f64| phi((-v * v).exp());
    let val = integrate_decaying(&g, a, rel_tol).map_err(|e| match e {
        Error::Numeric(_) => Error::Numeric(
            "the integral ∫ φ(u)/(u (log 1/u)^{1/2}) du diverges at zero for this envelope".into(),
        ),
        other => other,
    })?;
    Ok(2.0 * val)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = adaptive(&|x: f64| 3.0 * x * x, 0.0, 2.0, 1e-12, 1e-14).unwrap();
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn known_integral() {
        let v = adaptive(&|x: f64| (-x).exp(), 0.0, 30.0, 1e-12, 1e-14).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn decaying_tail() {
        // ∫_1^∞ x^{-2} dx = 1
        let v = integrate_decaying(&|x: f64| x.powi(-2), 1.0, 1e-10).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn log_singular_exact_case() {
        // φ(u) = (log 1/u)^{-3/2}/... : for φ(u) = (log 1/u)^{-1} the
        // integrand is (log 1/u)^{-3/2}/u with antiderivative 2(log 1/u)^{-1/2}.
        let x = 1e-6;
        let v = integrate_log_singular(&|u: f64| (1.0 / u).ln().recip(), x, 1e-9).unwrap();
        let exact = 2.0 / (1.0f64 / x).ln().sqrt();
        assert!((v - exact).abs() < 1e-7 * exact, "{v} vs {exact}");
    }

    #[test]
    fn log_singular_sqrt_envelope() {
        // frozen with 30-digit arithmetic: ∫_0^{1/2} u^{-1/2}(log 1/u)^{-1/2} du
        let v = integrate_log_singular(&|u: f64| u.sqrt(), 0.5, 1e-10).unwrap();
        assert!((v - 1.015_425_003_399_990_8).abs() < 1e-8, "{v}");
    }

    #[test]
    fn log_singular_divergence_detected() {
        // φ(u) = (log 1/u)^{-1/2} fails the integrability condition
        let r = integrate_log_singular(&|u: f64| (1.0 / u).ln().powf(-0.5), 0.5, 1e-9);
        assert!(r.is_err());
    }
}
