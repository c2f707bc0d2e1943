//! Metric entropy integral on a finite point set.
//!
//! `J(a) = sup_t ∫_0^a (log 1/μ(B_d(t,u)))^{1/2} du` for a probability
//! measure μ and metric d. On a finite set the ball-mass function of every
//! center is a step function of the radius, so the integral is computed
//! exactly segment by segment rather than by quadrature.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub fn entropy_integral_j(d: &DMatrix<f64>, mu: &[f64], a: f64) -> Result<f64> {
    let n = d.nrows();
    if n == 0 || d.ncols() != n || mu.len() != n {
        return Err(Error::Parameter("distance matrix and weights must agree in size".into()));
    }
    if !(a >= 0.0) {
        return Err(Error::Domain(format!("radius must be nonnegative, got {a}")));
    }
    let total: f64 = mu.iter().sum();
    if mu.iter().any(|&m| m < 0.0) || (total - 1.0).abs() > 1e-9 {
        return Err(Error::Parameter(format!("weights must be a probability vector (sum = {total})")));
    }
    for i in 0..n {
        if d[(i, i)].abs() > 1e-12 {
            return Err(Error::Parameter("metric must vanish on the diagonal".into()));
        }
        for j in 0..i {
            if (d[(i, j)] - d[(j, i)]).abs() > 1e-12 {
                return Err(Error::Parameter("metric must be symmetric".into()));
            }
            if d[(i, j)] < 0.0 {
                return Err(Error::Parameter("metric must be nonnegative".into()));
            }
        }
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    let mut sup = 0.0f64;
    for t in 0..n {
        // step function of the radius: sort the distances from t with weights
        let mut pairs: Vec<(f64, f64)> = (0..n).map(|j| (d[(t, j)], mu[j])).collect();
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut mass = 0.0f64;
        let mut integral = 0.0f64;
        let mut radius = 0.0f64;
        let mut idx = 0usize;
        while idx < n {
            // absorb every point at the current radius
            let r = pairs[idx].0;
            while idx < n && pairs[idx].0 == r {
                mass += pairs[idx].1;
                idx += 1;
            }
            let next_r = if idx < n { pairs[idx].0.min(a) } else { a };
            if next_r <= radius {
                if idx < n {
                    continue;
                } else {
                    break;
                }
            }
            if mass <= 0.0 {
                return Err(Error::Numeric(format!(
                    "ball mass is zero at positive radius around point {t}; assign positive weight or refine the grid"
                )));
            }
            let g = if mass >= 1.0 { 0.0 } else { (1.0 / mass).ln().sqrt() };
            integral += (next_r - radius) * g;
            radius = next_r;
            if radius >= a {
                break;
            }
        }
        sup = sup.max(integral);
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_gap_metric(n: usize) -> (DMatrix<f64>, Vec<f64>) {
        let pts: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let d = DMatrix::from_fn(n, n, |i, j| (pts[i] - pts[j]).abs().sqrt());
        let mu = vec![1.0 / n as f64; n];
        (d, mu)
    }

    #[test]
    fn zero_radius_and_singleton() {
        let (d, mu) = sqrt_gap_metric(16);
        assert_eq!(entropy_integral_j(&d, &mu, 0.0).unwrap(), 0.0);
        let d1 = DMatrix::zeros(1, 1);
        assert_eq!(entropy_integral_j(&d1, &[1.0], 0.5).unwrap(), 0.0);
    }

    #[test]
    fn sqrt_metric_is_dudley_finite() {
        // d(s,t) = |t-s|^{1/2} on [0,1], 256 points, uniform weights:
        // J(diameter) is finite and J(δ) ↓ 0 as δ ↓ 0
        let (d, mu) = sqrt_gap_metric(256);
        let diam = 1.0f64;
        let j_full = entropy_integral_j(&d, &mu, diam).unwrap();
        assert!(j_full.is_finite() && j_full > 0.0);
        let mut prev = j_full;
        for &delta in &[0.5, 0.25, 0.1, 0.05, 0.02] {
            let j = entropy_integral_j(&d, &mu, delta).unwrap();
            assert!(j <= prev + 1e-12, "J({delta}) = {j} > {prev}");
            prev = j;
        }
        assert!(prev < 0.2 * j_full, "J should decay: {prev} vs {j_full}");
    }

    #[test]
    fn nondecreasing_in_radius() {
        let (d, mu) = sqrt_gap_metric(64);
        let mut prev = 0.0;
        for i in 1..=20 {
            let a = i as f64 / 20.0;
            let j = entropy_integral_j(&d, &mu, a).unwrap();
            assert!(j >= prev - 1e-12);
            prev = j;
        }
    }

    #[test]
    fn zero_mass_center_is_reported() {
        let (d, mut mu) = sqrt_gap_metric(8);
        let m = mu[0];
        mu[0] = 0.0;
        mu[1] += m;
        assert!(entropy_integral_j(&d, &mu, 0.5).is_err());
    }

    #[test]
    fn refinement_stabilizes() {
        // doubling until the change is < 0.5%
        let mut prev = None;
        let mut n = 32;
        loop {
            let (d, mu) = sqrt_gap_metric(n);
            let j = entropy_integral_j(&d, &mu, 1.0).unwrap();
            if let Some(p) = prev {
                let rel: f64 = (j - p) / p;
                if rel.abs() < 0.005 {
                    break;
                }
            }
            prev = Some(j);
            n *= 2;
            assert!(n <= 2048, "refinement did not stabilize");
        }
    }
}
