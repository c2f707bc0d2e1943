//! Kernel of the stable Lévy process killed at its first hit of zero
//! (the FBMQ family): a symmetric part that is a scaled fractional
//! Brownian motion covariance plus an antisymmetric skew part.

use crate::error::{Error, Result};

/// The positive normalizing constant `C_{γ,β}` of the killed-stable kernel.
///
/// Evaluated through the reflection formula as
/// `1 / (2 sin(γπ/2) Γ(1+γ) (1 + β² cot²(γπ/2)))`, which is stable on the
/// whole parameter range `0 < γ < 1`, `|β| ≤ 1`.
pub fn c_gamma_beta(gamma: f64, beta: f64) -> Result<f64> {
    check_params(gamma, beta)?;
    let half = gamma * std::f64::consts::FRAC_PI_2;
    let cot = half.cos() / half.sin();
    let denom = 2.0 * half.sin() * statrs::function::gamma::gamma(1.0 + gamma) * (1.0 + beta * beta * cot * cot);
    Ok(1.0 / denom)
}

pub fn check_params(gamma: f64, beta: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Parameter(format!("stable index must satisfy 0 < γ < 1, got {gamma}")));
    }
    if !(beta.abs() <= 1.0) {
        return Err(Error::Parameter(format!("skew must satisfy |β| ≤ 1, got {beta}")));
    }
    Ok(())
}

/// Symmetric part `R_{γ,β}(x,y) = C_{γ,β}(|x|^γ + |y|^γ - |x-y|^γ)`.
pub fn r_part(c: f64, gamma: f64, x: f64, y: f64) -> f64 {
    c * (x.abs().powf(gamma) + y.abs().powf(gamma) - (x - y).abs().powf(gamma))
}

/// Antisymmetric part
/// `H_{γ,β}(x,y) = β C_{γ,β}(sign(x)|x|^γ - sign(y)|y|^γ - sign(x-y)|x-y|^γ)`.
pub fn h_part(c: f64, gamma: f64, beta: f64, x: f64, y: f64) -> f64 {
    let sp = |v: f64| {
        if v == 0.0 {
            0.0
        } else {
            v.signum() * v.abs().powf(gamma)
        }
    };
    beta * c * (sp(x) - sp(y) - sp(x - y))
}

pub fn eval(gamma: f64, beta: f64, x: f64, y: f64) -> Result<f64> {
    let c = c_gamma_beta(gamma, beta)?;
    Ok(r_part(c, gamma, x, y) + h_part(c, gamma, beta, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_reference_values() {
        // γ = 1/2, β = 0: sin(3π/4) = √2/2 and Γ(-1/2) = -2√π collapse the
        // defining expression to √(2/π)
        let c = c_gamma_beta(0.5, 0.0).unwrap();
        assert!((c - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-15);
        // β = 1 halves it: tan²(3π/4) = 1
        let c1 = c_gamma_beta(0.5, 1.0).unwrap();
        assert!((c1 - 1.0 / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
        // generic parameters, frozen with 30-digit arithmetic
        assert!((c_gamma_beta(0.7, 0.3).unwrap() - 0.603_485_891_133_215).abs() < 1e-13);
        assert!((c_gamma_beta(0.25, -0.8).unwrap() - 0.304_740_633_435_041_3).abs() < 1e-13);
    }

    #[test]
    fn constant_positive_on_grid() {
        for i in 1..20 {
            let gamma = i as f64 / 20.0;
            for j in -4..=4 {
                let beta = j as f64 / 4.0;
                assert!(c_gamma_beta(gamma, beta).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(c_gamma_beta(1.0, 0.0).is_err());
        assert!(c_gamma_beta(0.0, 0.0).is_err());
        assert!(c_gamma_beta(0.5, 1.5).is_err());
    }

    #[test]
    fn diagonal_value() {
        // u(x,x) = 2 C |x|^γ
        let c = c_gamma_beta(0.5, 0.0).unwrap();
        let u = eval(0.5, 0.0, 1.0, 1.0).unwrap();
        assert!((u - 2.0 * c).abs() < 1e-14);
        assert!((u - 1.595_769_121_605_730_8).abs() < 1e-12);
        let u2 = eval(0.7, 0.3, 2.0, 2.0).unwrap();
        let c2 = c_gamma_beta(0.7, 0.3).unwrap();
        assert!((u2 - 2.0 * c2 * 2.0f64.powf(0.7)).abs() < 1e-13);
    }

    #[test]
    fn h_antisymmetric_and_bounded() {
        let (gamma, beta) = (0.6, 0.8);
        let c = c_gamma_beta(gamma, beta).unwrap();
        let grid: Vec<f64> = (0..15).map(|i| 0.05 + 0.21 * i as f64).collect();
        for &x in &grid {
            assert_eq!(h_part(c, gamma, beta, x, x), 0.0);
            for &y in &grid {
                let hxy = h_part(c, gamma, beta, x, y);
                let hyx = h_part(c, gamma, beta, y, x);
                assert!((hxy + hyx).abs() < 1e-14);
                // |H(x,y)| ≤ |β| C |x-y|^γ
                assert!(hxy.abs() <= beta.abs() * c * (x - y).abs().powf(gamma) + 1e-14);
            }
        }
    }
}
