//! Fernique-type oscillation bound on the doubly-geometric ladder
//! `n(p) = n^{2^p}`.
//!
//! Given an increment tail function `F` and a majorant `φ` of the sigma
//! function, the oscillation of the process over `[0, S]` exceeds
//! `a φ(S) + Σ_p κ(p) φ(S/n(p))` with probability at most
//! `n² F(a) + Σ_p n(p)² F(κ(p))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::EnvelopeFn;

/// Ladder parameters: base `n ≥ 2`, first-layer threshold `a`, horizon `S`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainingParams {
    pub n: u32,
    pub a: f64,
    pub horizon: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainingBound {
    /// `a φ(S) + Σ_p κ(p) φ(S/n(p))`
    pub threshold: f64,
    /// `n² F(a) + Σ_p n(p)² F(κ(p))`, capped at 1
    pub probability: f64,
    pub diverged: bool,
    pub terms: u32,
}

/// Evaluate both sides of the oscillation inequality. `tail` must be
/// nonincreasing and `kappa(p) ≥ 1` for every layer.
pub fn chaining_tail_bound<F, K>(
    tail: F,
    kappa: K,
    phi: &EnvelopeFn,
    params: &ChainingParams,
) -> Result<ChainingBound>
where
    F: Fn(f64) -> f64,
    K: Fn(u32) -> f64,
{
    if params.n < 2 {
        return Err(Error::Parameter(format!("ladder base must be ≥ 2, got {}", params.n)));
    }
    if !(params.horizon > 0.0) {
        return Err(Error::Parameter("horizon must be positive".into()));
    }
    let ln_n = (params.n as f64).ln();
    let s = params.horizon;
    let mut threshold = params.a * phi.eval(s);
    let mut probability = (params.n as f64).powi(2) * tail(params.a);
    let mut diverged = false;
    let mut terms = 0u32;
    for p in 1..=60u32 {
        let kp = kappa(p);
        if kp < 1.0 {
            return Err(Error::Parameter(format!("κ({p}) = {kp} < 1")));
        }
        // n(p) = n^{2^p}; log-domain to survive the double exponential
        let ln_np = 2.0f64.powi(p as i32) * ln_n;
        let scale = s * (-ln_np).exp();
        let thr_term = kp * phi.eval(scale);
        let f_val = tail(kp).max(0.0);
        let prob_term = if f_val == 0.0 { 0.0 } else { (2.0 * ln_np + f_val.ln()).exp() };
        threshold += thr_term;
        probability += prob_term;
        terms = p;
        if !probability.is_finite() || probability >= 1.0 {
            diverged = true;
            probability = 1.0;
            break;
        }
        if thr_term.abs() < 1e-15 * threshold.abs() && prob_term < 1e-15 * probability.max(1e-300) {
            break;
        }
    }
    if !threshold.is_finite() {
        diverged = true;
    }
    Ok(ChainingBound { threshold, probability: probability.min(1.0), diverged, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss_tail(l: f64) -> f64 {
        (-l * l).exp()
    }

    #[test]
    fn zero_tail_gives_zero_probability() {
        let params = ChainingParams { n: 2, a: 1.0, horizon: 1.0 };
        let b = chaining_tail_bound(|_| 0.0, |p| (3.0 * 2.0f64.powi(p as i32) * 2.0f64.ln()).sqrt(), &EnvelopeFn::power_law(1.0, 0.5), &params).unwrap();
        assert_eq!(b.probability, 0.0);
        assert!(!b.diverged);
    }

    #[test]
    fn classic_schedule_converges_fast() {
        // φ(u) = u^{1/2}, n = 2, a = (3 log 2)^{1/2}, κ(p) = (3 log n(p))^{1/2}
        let n = 2u32;
        let a = (3.0 * 2.0f64.ln()).sqrt();
        let kappa = move |p: u32| (3.0 * 2.0f64.powi(p as i32) * (n as f64).ln()).sqrt();
        let params = ChainingParams { n, a, horizon: 1.0 };
        let b = chaining_tail_bound(gauss_tail, kappa, &EnvelopeFn::power_law(1.0, 0.5), &params).unwrap();
        assert!(b.threshold.is_finite() && b.threshold > 0.0);
        assert!(b.probability < 1.0 && !b.diverged);
        assert!(b.terms <= 8, "converged in {} terms", b.terms);
        // independent 128-layer reference summation
        let mut want_p = 4.0 * gauss_tail(a);
        let mut want_t = a;
        for p in 1..=128i32 {
            let ln_np = 2.0f64.powi(p) * 2.0f64.ln();
            let kp = (3.0 * ln_np).sqrt();
            want_t += kp * (-0.5 * ln_np).exp();
            want_p += (2.0 * ln_np - kp * kp).exp();
        }
        assert!((b.threshold - want_t).abs() < 1e-12 * want_t);
        assert!((b.probability - want_p).abs() < 1e-12);
    }

    #[test]
    fn threshold_monotone_in_horizon() {
        let n = 2u32;
        let a = 2.0;
        let kappa = move |p: u32| (3.0 * 2.0f64.powi(p as i32) * (n as f64).ln()).sqrt();
        let phi = EnvelopeFn::power_law(1.0, 0.5);
        let mut prev = 0.0;
        for &s in &[0.25, 0.5, 1.0, 2.0, 4.0] {
            let params = ChainingParams { n, a, horizon: s };
            let b = chaining_tail_bound(gauss_tail, kappa, &phi, &params).unwrap();
            assert!(b.threshold >= prev);
            prev = b.threshold;
        }
    }

    #[test]
    fn fat_tail_caps_at_one() {
        let params = ChainingParams { n: 4, a: 1.0, horizon: 1.0 };
        let b = chaining_tail_bound(
            |_| 0.9,
            |_| 1.0,
            &EnvelopeFn::power_law(1.0, 0.5),
            &params,
        )
        .unwrap();
        assert_eq!(b.probability, 1.0);
        assert!(b.diverged);
    }

    #[test]
    fn rejects_bad_parameters() {
        let phi = EnvelopeFn::power_law(1.0, 0.5);
        let params = ChainingParams { n: 1, a: 1.0, horizon: 1.0 };
        assert!(chaining_tail_bound(gauss_tail, |_| 2.0, &phi, &params).is_err());
        let params = ChainingParams { n: 2, a: 1.0, horizon: 1.0 };
        assert!(chaining_tail_bound(gauss_tail, |_| 0.5, &phi, &params).is_err());
    }
}
