//! Gamma marginals: the one-dimensional building block.
//!
//! `sample_gamma(α, v, …)` draws from the density
//! `v^α x^{α-1} e^{-vx} / Γ(α)` (shape `α`, rate `v`), constructed by
//! scaling a unit-rate draw so the scaling law of the family holds by
//! construction.

use rayon::prelude::*;

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use super::rng::{replicate_rng, SamplerId};
use super::SampleBatch;
use crate::error::{Error, Result};

pub fn sample_gamma(alpha: f64, v: f64, n_rep: usize, seed: u64) -> Result<SampleBatch> {
    if !(alpha > 0.0) || !(v > 0.0) {
        return Err(Error::Parameter(format!("shape and rate must be positive, got α = {alpha}, v = {v}")));
    }
    if n_rep == 0 {
        return Err(Error::Parameter("at least one replicate is required".into()));
    }
    let dist = Gamma::new(alpha, 1.0)
        .map_err(|e| Error::Parameter(format!("gamma distribution rejected shape {alpha}: {e}")))?;
    let rows: Vec<Vec<f64>> = (0..n_rep as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(seed, SamplerId::Gamma, r);
            vec![dist.sample(&mut rng) / v]
        })
        .collect();
    Ok(SampleBatch::from_rows(vec![0.0], rows, seed, SamplerId::Gamma))
}

/// One unit-rate gamma variate on an already positioned stream.
pub(crate) fn gamma_variate<R: Rng>(rng: &mut R, shape: f64) -> f64 {
    Gamma::new(shape, 1.0).expect("positive shape").sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::ln_gamma;

    fn mean_and_se(values: impl Iterator<Item = f64>) -> (f64, f64, usize) {
        let v: Vec<f64> = values.collect();
        let n = v.len();
        let mean = v.iter().sum::<f64>() / n as f64;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        (mean, (var / n as f64).sqrt(), n)
    }

    #[test]
    fn exponential_mean() {
        let b = sample_gamma(1.0, 1.0, 200_000, 7).unwrap();
        let (mean, se, _) = mean_and_se(b.column(0));
        assert!((mean - 1.0).abs() < 4.0 * se, "mean {mean} ± {se}");
    }

    #[test]
    fn rate_scaling() {
        // rate v: mean α/v
        let b = sample_gamma(2.0, 4.0, 200_000, 11).unwrap();
        let (mean, se, _) = mean_and_se(b.column(0));
        assert!((mean - 0.5).abs() < 4.0 * se, "mean {mean} ± {se}");
    }

    #[test]
    fn laplace_transform_matches() {
        // E e^{-s ξ_{α,1}} = (1+s)^{-α} within 3 standard errors
        for &alpha in &[0.5, 1.0, 2.0] {
            let b = sample_gamma(alpha, 1.0, 200_000, 13).unwrap();
            for &s in &[0.5, 1.0, 2.0] {
                let (mean, se, _) = mean_and_se(b.column(0).map(|x| (-s * x).exp()));
                let want = (1.0 + s).powf(-alpha);
                assert!((mean - want).abs() < 3.0 * se, "α={alpha}, s={s}: {mean} vs {want} ± {se}");
            }
        }
    }

    #[test]
    fn square_root_tail_bound() {
        // P(ξ^{1/2} ≥ λ) ≤ C_α λ^{2(α-1)} e^{-λ²} with C_α = 1/Γ(α) for α ≤ 1,
        // checked with 4-SE slack on λ ∈ [1,3]
        let alpha = 0.5f64;
        let c_alpha = (-ln_gamma(alpha)).exp();
        let n = 1_000_000usize;
        let b = sample_gamma(alpha, 1.0, n, 17).unwrap();
        let sqrts: Vec<f64> = b.column(0).map(f64::sqrt).collect();
        for k in 0..=8 {
            let lam = 1.0 + 0.25 * k as f64;
            let p_hat = sqrts.iter().filter(|&&x| x >= lam).count() as f64 / n as f64;
            let se = (p_hat.max(1e-12) * (1.0 - p_hat) / n as f64).sqrt();
            let bound = c_alpha * lam.powf(2.0 * (alpha - 1.0)) * (-lam * lam).exp();
            assert!(p_hat <= bound + 4.0 * se, "λ={lam}: {p_hat} vs {bound} (se {se})");
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let a = sample_gamma(1.3, 2.0, 500, 5).unwrap();
        let b = sample_gamma(1.3, 2.0, 500, 5).unwrap();
        assert_eq!(a.draws, b.draws);
        let c = sample_gamma(1.3, 2.0, 500, 6).unwrap();
        assert_ne!(a.draws, c.draws);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(sample_gamma(0.0, 1.0, 10, 1).is_err());
        assert!(sample_gamma(1.0, -1.0, 10, 1).is_err());
        assert!(sample_gamma(1.0, 1.0, 0, 1).is_err());
    }
}
