//! Inequality audits on pair kernels and normalized matrices.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::PairKernel;
use crate::report::BoundReport;

/// Verify the three inequality families of a valid pair kernel:
/// `|a-γ|/σ ≤ a^{1/2}` and `|b-γ|/σ ≤ b^{1/2}` (when `δ > 0`),
/// `δ ≤ (a∧b)σ²`, and `(a+b)/2 ≥ (ab)^{1/2} ≥ γ`.
pub fn kernel_inequality_audit(k: &PairKernel) -> BoundReport {
    let mut rep = BoundReport::new("pair-kernel inequality audit");
    let (a, b, g) = (k.a, k.b, k.gamma_off);
    let sigma = k.sigma;
    if k.delta > 0.0 && sigma > 0.0 {
        rep.check_le("|a-γ|/σ ≤ √a", (a - g).abs() / sigma, a.sqrt() + 1e-12);
        rep.check_le("|b-γ|/σ ≤ √b", (b - g).abs() / sigma, b.sqrt() + 1e-12);
    } else {
        rep.note("δ = 0: normalized-difference checks skipped (their hypothesis needs |K| > 0)");
    }
    rep.check_le("δ ≤ (a∧b)σ²", k.delta, a.min(b) * k.sigma_sq() + 1e-12 * (1.0 + k.delta));
    rep.check_ge("(a+b)/2 ≥ √(ab)", 0.5 * (a + b), (a * b).sqrt() - 1e-12);
    rep.check_ge("√(ab) ≥ γ", (a * b).sqrt(), g - 1e-12 * (1.0 + g));
    rep
}

/// Smallness certificates for the lower-bound machinery on a normalized
/// (unit diagonal) kernel matrix over a point ladder.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowerBoundConditions {
    /// `max_{i≠j} (ũ_ij + ũ_ji)`
    pub eps1: f64,
    /// `max_{i≠j} |ũ_ij - ũ_ji| / (φ*)²`
    pub eps2: f64,
    /// `(φ*)² = min_{i≠j} (2 - (ũ_ij + ũ_ji))`
    pub phi_star_sq: f64,
    /// `1 - 3(ε₁ + ε₂)`
    pub predicted_constant: f64,
}

pub fn lower_bound_conditions(u_tilde: &DMatrix<f64>) -> Result<LowerBoundConditions> {
    let n = u_tilde.nrows();
    if n < 2 || u_tilde.ncols() != n {
        return Err(Error::Domain("need a square normalized kernel on at least 2 points".into()));
    }
    for i in 0..n {
        if (u_tilde[(i, i)] - 1.0).abs() > 1e-9 {
            return Err(Error::Parameter(format!(
                "matrix must have unit diagonal (normalize first); entry ({i},{i}) = {}",
                u_tilde[(i, i)]
            )));
        }
    }
    let mut eps1 = f64::NEG_INFINITY;
    let mut phi_star_sq = f64::INFINITY;
    let mut max_asym = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let sym = u_tilde[(i, j)] + u_tilde[(j, i)];
            eps1 = eps1.max(sym);
            phi_star_sq = phi_star_sq.min(2.0 - sym);
            max_asym = max_asym.max((u_tilde[(i, j)] - u_tilde[(j, i)]).abs());
        }
    }
    if phi_star_sq <= 0.0 {
        return Err(Error::Invariant(format!(
            "(φ*)² = {phi_star_sq} ≤ 0: some pair has ũ_ij + ũ_ji ≥ 2"
        )));
    }
    let eps2 = max_asym / phi_star_sq;
    Ok(LowerBoundConditions {
        eps1,
        eps2,
        phi_star_sq,
        predicted_constant: 1.0 - 3.0 * (eps1 + eps2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{fbmq, KernelSpec};

    #[test]
    fn audit_simple_case() {
        // (a,b,γ) = (1,1,0.5): |1-0.5|/σ = 0.5 ≤ 1
        let k = PairKernel::new(1.0, 1.0, 0.5).unwrap();
        let rep = kernel_inequality_audit(&k);
        assert!(rep.pass, "{rep:?}");
        assert!((rep.checks[0].observed - 0.5).abs() < 1e-14);
    }

    #[test]
    fn audit_randomized_kernels() {
        // 10⁴ kernels with γ ≤ √(ab): zero violations
        let mut state = 0x853c49e6748fea9bu64;
        let mut unit = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10_000 {
            let b = 0.01 + 10.0 * unit();
            let a = 0.01 + 10.0 * unit();
            let g = unit() * (a * b).sqrt();
            let k = PairKernel::new(b, a, g).unwrap();
            let rep = kernel_inequality_audit(&k);
            assert!(rep.pass, "violation at (b,a,γ) = ({b},{a},{g}): {rep:?}");
        }
    }

    #[test]
    fn audit_degenerate_skips_ratio_checks() {
        let k = PairKernel::new(2.0, 2.0, 2.0).unwrap();
        let rep = kernel_inequality_audit(&k);
        assert!(rep.pass);
        // only the three non-ratio checks remain
        assert_eq!(rep.checks.len(), 3);
        // equality in the right link of the mean chain
        let last = rep.checks.last().unwrap();
        assert!((last.observed - 2.0).abs() < 1e-14);
    }

    #[test]
    fn identity_gives_unit_constant() {
        let u = DMatrix::identity(4, 4);
        let c = lower_bound_conditions(&u).unwrap();
        assert_eq!(c.eps1, 0.0);
        assert_eq!(c.eps2, 0.0);
        assert_eq!(c.predicted_constant, 1.0);
    }

    #[test]
    fn rejects_unnormalized_or_tiny() {
        let u = DMatrix::from_row_slice(2, 2, &[2.0, 0.1, 0.1, 1.0]);
        assert!(lower_bound_conditions(&u).is_err());
        let one = DMatrix::from_row_slice(1, 1, &[1.0]);
        assert!(lower_bound_conditions(&one).is_err());
    }

    #[test]
    fn geometric_ladder_epsilons_shrink() {
        // normalized killed-stable kernel on t_j = θ^j: ε₁ = O(θ^{-γ/2})
        let gamma = 0.5;
        let beta = 0.6;
        let k = KernelSpec::Fbmq { gamma, beta }.normalized();
        let mut prev_eps1 = f64::INFINITY;
        for &theta in &[4.0f64, 16.0, 64.0] {
            let pts: Vec<f64> = (1..=5).map(|j| theta.powi(j)).collect();
            let n = pts.len();
            let u = DMatrix::from_fn(n, n, |i, j| k.eval(pts[i], pts[j]).unwrap());
            let c = lower_bound_conditions(&u).unwrap();
            assert!(c.eps1 < prev_eps1);
            prev_eps1 = c.eps1;
            // ε₁ ≤ C θ^{-γ/2} with a modest constant
            assert!(c.eps1 <= 4.0 * theta.powf(-gamma / 2.0), "θ={theta}: {}", c.eps1);
            assert!(c.eps2 <= 2.0 * beta * theta.powf(-gamma / 2.0), "θ={theta}: {}", c.eps2);
        }
        // large ladders approach the unconditioned constant 1
        let pts: Vec<f64> = (1..=5).map(|j| 256.0f64.powi(j)).collect();
        let u = DMatrix::from_fn(5, 5, |i, j| k.eval(pts[i], pts[j]).unwrap());
        let c = lower_bound_conditions(&u).unwrap();
        assert!(c.predicted_constant > 0.9, "{}", c.predicted_constant);

        let ck = fbmq::c_gamma_beta(gamma, beta).unwrap();
        assert!(ck > 0.0);
    }
}
