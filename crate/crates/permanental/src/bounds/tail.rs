//! Closed-form tail inequalities.

use statrs::function::gamma::ln_gamma;

use super::calibration;
use crate::error::{Error, Result};
use crate::kernels::PairKernel;

/// Tail bound for the normalized square-root increment of a pair:
/// `P(|X₁^{1/2} - X₂^{1/2}|/σ ≥ λ) ≤ C_α λ^{(4α-2)∨0} e^{-λ²}` for `λ ≥ 1`.
///
/// `C_α` comes from the shipped calibration table. The `σ = 0` pair is
/// degenerate (`a = b`, `δ = 0`, increments identically zero) and the 0/0
/// quotient is taken to be 0, so the bound is 0.
pub fn sqrt_increment_tail_bound(k: &PairKernel, alpha: f64, lambda: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Parameter(format!("shape must satisfy α > 0, got {alpha}")));
    }
    if !(lambda >= 1.0) {
        return Err(Error::Domain(format!("the bound holds for λ ≥ 1, got {lambda}")));
    }
    if k.sigma == 0.0 {
        return Ok(0.0);
    }
    let c = calibration::c_alpha(alpha)?;
    let pow = (4.0 * alpha - 2.0).max(0.0);
    Ok(c * lambda.powf(pow) * (-lambda * lambda).exp())
}

/// Marginal tails of `X(t)/u(t,t)`: the upper bound
/// `2 λ^{α-1} e^{-λ} / Γ(α)` holds for `λ > 2(α-1)∨0`; a third of it is a
/// lower bound once `λ ≥ 2`.
#[derive(Clone, Copy, Debug)]
pub struct MarginalTail {
    pub upper: f64,
    /// Present only in the regime `λ ≥ 2` where the lower bound is valid.
    pub lower: Option<f64>,
}

pub fn marginal_tail_bounds(alpha: f64, lambda: f64) -> Result<MarginalTail> {
    if !(alpha > 0.0) {
        return Err(Error::Parameter(format!("shape must satisfy α > 0, got {alpha}")));
    }
    if !(lambda > (2.0 * (alpha - 1.0)).max(0.0)) {
        return Err(Error::Domain(format!(
            "upper bound needs λ > 2(α-1)∨0 = {}, got {lambda}",
            (2.0 * (alpha - 1.0)).max(0.0)
        )));
    }
    let upper = (
        (alpha - 1.0) * lambda.ln() - lambda - ln_gamma(alpha) + 2.0f64.ln()
    ).exp();
    let lower = if lambda >= 2.0 { Some(upper / 3.0) } else { None };
    Ok(MarginalTail { upper, lower })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marginal_bounds_bracket_the_exponential() {
        // α = 1: exact tail e^{-λ}
        let mt = marginal_tail_bounds(1.0, 3.0).unwrap();
        assert!((mt.upper - 2.0 * (-3.0f64).exp()).abs() < 1e-15);
        let lower = mt.lower.unwrap();
        assert!((lower - 2.0 / 3.0 * (-3.0f64).exp()).abs() < 1e-15);
        let exact = (-3.0f64).exp();
        assert!(lower <= exact && exact <= mt.upper);
        // ratio exactly 3 at any λ in regime
        let mt2 = marginal_tail_bounds(1.0, 2.0).unwrap();
        assert!((mt2.upper / mt2.lower.unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn marginal_regimes() {
        assert!(marginal_tail_bounds(3.0, 3.9).is_err()); // needs λ > 4
        let mt = marginal_tail_bounds(1.0, 1.5).unwrap();
        assert!(mt.lower.is_none());
        assert!(marginal_tail_bounds(1.0, 0.0).is_err());
    }

    #[test]
    fn sqrt_increment_degenerate_is_zero() {
        let k = PairKernel::new(2.0, 2.0, 2.0).unwrap();
        assert_eq!(k.sigma, 0.0);
        assert_eq!(sqrt_increment_tail_bound(&k, 1.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn sqrt_increment_regime_and_shape() {
        let k = PairKernel::new(1.0, 1.0, 0.5).unwrap();
        assert!(sqrt_increment_tail_bound(&k, 1.0, 0.5).is_err());
        // α ≤ 1/2: pure Gaussian-type decay C e^{-λ²}
        let c = calibration::c_alpha(0.5).unwrap();
        let b = sqrt_increment_tail_bound(&k, 0.5, 2.0).unwrap();
        assert!((b - c * (-4.0f64).exp()).abs() < 1e-15);
        // α = 1: C₁ λ² e^{-λ²}
        let c1 = calibration::c_alpha(1.0).unwrap();
        let b1 = sqrt_increment_tail_bound(&k, 1.0, 2.0).unwrap();
        assert!((b1 - c1 * 4.0 * (-4.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn monotone_in_lambda() {
        let k = PairKernel::new(1.0, 1.0, 0.5).unwrap();
        // nonincreasing on [1, ∞) for α ≤ 1/2
        let mut prev = f64::INFINITY;
        for i in 0..=40 {
            let lam = 1.0 + 0.1 * i as f64;
            let b = sqrt_increment_tail_bound(&k, 0.5, lam).unwrap();
            assert!(b <= prev + 1e-18);
            prev = b;
        }
        // for α > 1/2 eventually nonincreasing past λ² ≥ (4α-2)/2
        let alpha = 1.3f64;
        let knee = ((4.0 * alpha - 2.0) / 2.0).sqrt();
        let mut prev = f64::INFINITY;
        for i in 0..=40 {
            let lam = knee + 0.1 * i as f64;
            let b = sqrt_increment_tail_bound(&k, alpha, lam.max(1.0)).unwrap();
            assert!(b <= prev * (1.0 + 1e-12));
            prev = b;
        }
    }
}
