//! Small statistics helpers shared by the experiment modules.

use statrs::distribution::ContinuousCDF;

pub(crate) fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub(crate) fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    s
}

pub(crate) fn quantile_sorted(s: &[f64], q: f64) -> f64 {
    if s.is_empty() {
        return f64::NAN;
    }
    let pos = q * (s.len() as f64 - 1.0);
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        s[lo]
    } else {
        let w = pos - lo as f64;
        s[lo] * (1.0 - w) + s[hi] * w
    }
}

/// Kolmogorov–Smirnov distance of a sample to the Gamma(shape, rate) CDF.
pub(crate) fn ks_distance_gamma(samples: &[f64], shape: f64, rate: f64) -> f64 {
    let dist = statrs::distribution::Gamma::new(shape, rate).expect("valid gamma");
    let s = sorted(samples);
    let n = s.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in s.iter().enumerate() {
        let f = dist.cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    d
}

/// Asymptotic 1% Kolmogorov–Smirnov critical value.
pub(crate) fn ks_critical_1pct(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

/// Survival function of the chi-squared distribution.
pub(crate) fn chi2_sf(x: f64, dof: f64) -> f64 {
    let d = statrs::distribution::ChiSquared::new(dof).expect("positive dof");
    1.0 - d.cdf(x)
}

/// Quantile of the Gamma(shape, rate) distribution.
pub(crate) fn gamma_quantile(p: f64, shape: f64, rate: f64) -> f64 {
    let dist = statrs::distribution::Gamma::new(shape, rate).expect("valid gamma");
    dist.inverse_cdf(p)
}

/// Least-squares slope of `y` against `x`.
pub(crate) fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    cov / var
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles() {
        let v = [3.0, 1.0, 2.0, 4.0];
        assert_eq!(quantile_sorted(&sorted(&v), 0.5), 2.5);
        assert_eq!(quantile_sorted(&sorted(&v), 0.0), 1.0);
        assert_eq!(quantile_sorted(&sorted(&v), 1.0), 4.0);
    }

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        // plug in the exact quantile grid: KS ≈ 1/(2n)
        let n = 1000;
        let samples: Vec<f64> =
            (0..n).map(|i| gamma_quantile((i as f64 + 0.5) / n as f64, 1.0, 1.0)).collect();
        let d = ks_distance_gamma(&samples, 1.0, 1.0);
        assert!(d < 1.0 / n as f64, "{d}");
    }

    #[test]
    fn slope_recovers_line() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 - 2.0 * v).collect();
        assert!((ls_slope(&x, &y) + 2.0).abs() < 1e-12);
    }
}
