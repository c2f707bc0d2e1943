//! The kernel zoo and the sigma function.
//!
//! A kernel `u(s,t)` determines every finite-dimensional law of the
//! associated nonnegative process; it need not be symmetric, but on every
//! pair the product `u(s,t)u(t,s)` must be nonnegative, and the natural
//! increment scale is
//!
//! ```text
//! σ(s,t) = (u(s,s) + u(t,t) - 2(u(s,t)u(t,s))^{1/2})^{1/2}
//! ```
//!
//! All evaluations are pure and deterministic; nothing is cached on
//! floating-point inputs.

pub mod fbmq;
pub mod levy;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::{EnvelopeFn, FnSpec, SeqSpec};
use crate::report::BoundReport;

/// A named kernel family with parameters, evaluable at `(s,t)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum KernelSpec {
    /// Potential of the skewed stable process killed at zero; `β = 0`
    /// recovers the squared fractional Brownian motion covariance.
    Fbmq { gamma: f64, beta: f64 },
    /// Potential of the skewed stable process killed at an independent
    /// exponential time with rate `ρ` (quadrature-defined).
    LevyExpKilled { rho: f64, gamma: f64, beta: f64 },
    /// `e^{-λ|s-t|} + f(t)` with `f` excessive for the killed process.
    ExpKilled { lambda: f64, f: FnSpec },
    /// `s∧t + f(t)` with `f` positive concave; optionally extended to the
    /// origin by `u(0,t) = f(t)`, `u(s,0) = u(0,0) = 1`.
    BrownianHit0 { f: FnSpec, with_origin: bool },
    /// Rebirthed finite-state potential: state 0 is the revival point `*`,
    /// states `1..=n` carry `u(x,y) + f(y)` with `f = μᵀU`.
    Rebirth { base: Vec<Vec<f64>>, mu: Vec<f64> },
    /// Integer-indexed sequence kernel with `u(0,0) = 2`,
    /// `u(j,0) = 1 + f_j`, `u(0,k) = 1 + g_k`, `u(j,k) = λ_j δ_{jk} + 1 + f_j g_k`.
    DiscreteSeq { lambda: SeqSpec, f: SeqSpec, g: SeqSpec },
    /// Arbitrary matrix kernel over a fixed list of points.
    ExplicitMatrix { points: Vec<f64>, matrix: Vec<Vec<f64>> },
    /// `u(s,t) / (u(s,s) u(t,t))^{1/2}`; unit diagonal.
    Normalized { inner: Box<KernelSpec> },
}

impl KernelSpec {
    pub fn normalized(self) -> KernelSpec {
        KernelSpec::Normalized { inner: Box::new(self) }
    }

    /// Family-level parameter checks (analytic conditions are spot-checked
    /// on a 64-point grid; the caller certifies the rest).
    pub fn validate(&self) -> Result<()> {
        match self {
            KernelSpec::Fbmq { gamma, beta } => fbmq::check_params(*gamma, *beta),
            KernelSpec::LevyExpKilled { rho, gamma, beta } => {
                if !(*rho > 0.0) {
                    return Err(Error::Parameter(format!("killing rate must be positive, got {rho}")));
                }
                fbmq::check_params(*gamma, *beta)
            }
            KernelSpec::ExpKilled { lambda, f } => {
                if !(*lambda > 0.0) {
                    return Err(Error::Parameter(format!("decay rate must be positive, got {lambda}")));
                }
                f.check_excessive(*lambda, 0.0, 1.0)
            }
            KernelSpec::BrownianHit0 { f, .. } => f.check_positive_concave(1e-3, 4.0),
            KernelSpec::Rebirth { base, mu } => {
                let n = base.len();
                if n == 0 || base.iter().any(|r| r.len() != n) {
                    return Err(Error::Parameter("base potential must be square and nonempty".into()));
                }
                if mu.len() != n {
                    return Err(Error::Parameter("measure length must match the state count".into()));
                }
                if mu.iter().any(|&m| m < 0.0 || !m.is_finite()) {
                    return Err(Error::Parameter("rebirth measure must be nonnegative and finite".into()));
                }
                Ok(())
            }
            KernelSpec::DiscreteSeq { .. } => Ok(()),
            KernelSpec::ExplicitMatrix { points, matrix } => {
                let n = points.len();
                if n == 0 || matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                    return Err(Error::Parameter("matrix shape must match the point list".into()));
                }
                for (i, row) in matrix.iter().enumerate() {
                    if row[i] < 0.0 {
                        return Err(Error::Parameter(format!("diagonal entry u({i},{i}) is negative")));
                    }
                }
                Ok(())
            }
            KernelSpec::Normalized { inner } => inner.validate(),
        }
    }

    /// Evaluate `u(s,t)`.
    pub fn eval(&self, s: f64, t: f64) -> Result<f64> {
        match self {
            KernelSpec::Fbmq { gamma, beta } => fbmq::eval(*gamma, *beta, s, t),
            KernelSpec::LevyExpKilled { rho, gamma, beta } => levy::eval(*rho, *gamma, *beta, s, t),
            KernelSpec::ExpKilled { lambda, f } => {
                if s < 0.0 || t < 0.0 {
                    return Err(Error::Domain(format!("negative time ({s}, {t})")));
                }
                Ok((-lambda * (s - t).abs()).exp() + f.eval(t))
            }
            KernelSpec::BrownianHit0 { f, with_origin } => {
                if s < 0.0 || t < 0.0 {
                    return Err(Error::Domain(format!("negative time ({s}, {t})")));
                }
                if (s == 0.0 || t == 0.0) && !with_origin {
                    return Err(Error::Domain(
                        "kernel is defined on (0,∞); construct it with the origin extension to evaluate at 0".into(),
                    ));
                }
                if s == 0.0 && t == 0.0 {
                    Ok(1.0)
                } else if t == 0.0 {
                    Ok(1.0)
                } else if s == 0.0 {
                    Ok(f.eval(t))
                } else {
                    Ok(s.min(t) + f.eval(t))
                }
            }
            KernelSpec::Rebirth { base, mu } => {
                let n = base.len();
                let i = index_of(s, n + 1)?;
                let j = index_of(t, n + 1)?;
                let f = |y: usize| -> f64 { (0..n).map(|x| mu[x] * base[x][y]).sum() };
                Ok(match (i, j) {
                    (0, 0) => 1.0,
                    (0, j) => f(j - 1),
                    (_, 0) => 1.0,
                    (i, j) => base[i - 1][j - 1] + f(j - 1),
                })
            }
            KernelSpec::DiscreteSeq { lambda, f, g } => {
                let j = index_of(s, usize::MAX)?;
                let k = index_of(t, usize::MAX)?;
                Ok(match (j, k) {
                    (0, 0) => 2.0,
                    (j, 0) => 1.0 + f.eval(j),
                    (0, k) => 1.0 + g.eval(k),
                    (j, k) => {
                        let diag = if j == k { lambda.eval(j) } else { 0.0 };
                        diag + 1.0 + f.eval(j) * g.eval(k)
                    }
                })
            }
            KernelSpec::ExplicitMatrix { points, matrix } => {
                let i = lookup_point(points, s)?;
                let j = lookup_point(points, t)?;
                Ok(matrix[i][j])
            }
            KernelSpec::Normalized { inner } => {
                let dss = inner.eval(s, s)?;
                let dtt = inner.eval(t, t)?;
                if dss <= 0.0 || dtt <= 0.0 {
                    return Err(Error::Domain(format!(
                        "normalization requires positive diagonal, got u({s},{s}) = {dss}, u({t},{t}) = {dtt}"
                    )));
                }
                Ok(inner.eval(s, t)? / (dss * dtt).sqrt())
            }
        }
    }

    /// Structural symmetry hint (the samplers re-check numerically).
    pub fn is_symmetric(&self) -> bool {
        match self {
            KernelSpec::Fbmq { beta, .. } | KernelSpec::LevyExpKilled { beta, .. } => *beta == 0.0,
            KernelSpec::ExpKilled { f, .. } => matches!(f, FnSpec::Zero),
            KernelSpec::BrownianHit0 { f, with_origin } => matches!(f, FnSpec::Zero) && !with_origin,
            KernelSpec::Rebirth { mu, .. } => mu.iter().all(|&m| m == 0.0),
            KernelSpec::DiscreteSeq { f, g, .. } => f == g,
            KernelSpec::ExplicitMatrix { matrix, .. } => {
                let n = matrix.len();
                (0..n).all(|i| (0..i).all(|j| (matrix[i][j] - matrix[j][i]).abs() <= 1e-12))
            }
            KernelSpec::Normalized { inner } => inner.is_symmetric(),
        }
    }

    /// The sigma function `σ(s,t)`; symmetric, zero on the diagonal.
    pub fn sigma(&self, s: f64, t: f64) -> Result<f64> {
        Ok(self.sigma_sq(s, t)?.sqrt())
    }

    fn sigma_sq(&self, s: f64, t: f64) -> Result<f64> {
        let uss = self.eval(s, s)?;
        let utt = self.eval(t, t)?;
        let ust = self.eval(s, t)?;
        let uts = self.eval(t, s)?;
        let prod = ust * uts;
        let scale = uss.abs().max(utt.abs()).max(1e-300);
        if prod < -1e-12 * scale * scale {
            return Err(Error::Invariant(format!(
                "u(s,t)u(t,s) = {prod} < 0 at ({s},{t}); kernel is not permanental-admissible on this pair"
            )));
        }
        let s2 = uss + utt - 2.0 * prod.max(0.0).sqrt();
        if s2 < -1e-9 * scale {
            return Err(Error::Invariant(format!(
                "σ²(s,t) = {s2} < 0 at ({s},{t}); diagonal dominance fails"
            )));
        }
        Ok(s2.max(0.0))
    }

    /// The symmetrized L²-style metric
    /// `ρ²(s,t) = u(s,s) + u(t,t) - (u(s,t) + u(t,s))`.
    pub fn rho_metric(&self, s: f64, t: f64) -> Result<f64> {
        let r2 = self.eval(s, s)? + self.eval(t, t)? - (self.eval(s, t)? + self.eval(t, s)?);
        if r2 < -1e-9 * self.eval(s, s)?.abs().max(1.0) {
            return Err(Error::Invariant(format!("ρ²(s,t) = {r2} < 0 at ({s},{t})")));
        }
        Ok(r2.max(0.0).sqrt())
    }

    /// Split `σ² = ρ² + (u(s,t)^{1/2} - u(t,s)^{1/2})²`; both parts are
    /// nonnegative and their sum reproduces `σ²` to 1e-12 relative.
    pub fn sigma_decomposition(&self, s: f64, t: f64) -> Result<(f64, f64)> {
        let ust = self.eval(s, t)?;
        let uts = self.eval(t, s)?;
        if ust < 0.0 || uts < 0.0 {
            return Err(Error::Invariant(format!(
                "the decomposition needs nonnegative off-diagonal values, got u(s,t) = {ust}, u(t,s) = {uts}"
            )));
        }
        let rho = self.rho_metric(s, t)?;
        let asym = (ust.sqrt() - uts.sqrt()).powi(2);
        Ok((rho * rho, asym))
    }

    /// Audit `σ(s,t) ≤ φ(|t-s|)` over all pairs of a grid.
    pub fn majorant_audit(&self, phi: &EnvelopeFn, grid: &[f64]) -> Result<BoundReport> {
        let mut gaps: Vec<f64> = Vec::new();
        for (i, &s) in grid.iter().enumerate() {
            for &t in grid.iter().skip(i + 1) {
                gaps.push((t - s).abs());
            }
        }
        gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in gaps.windows(2) {
            if phi.eval(w[1]) < phi.eval(w[0]) - 1e-12 {
                return Err(Error::Precondition(
                    "envelope must be nondecreasing on the grid's range of gaps".into(),
                ));
            }
        }
        let mut report = BoundReport::new("sigma-majorant audit");
        let mut worst = 0.0f64;
        let mut worst_pair = (f64::NAN, f64::NAN);
        for (i, &s) in grid.iter().enumerate() {
            for &t in grid.iter().skip(i + 1) {
                let sigma = self.sigma(s, t)?;
                let bound = phi.eval((t - s).abs());
                let ratio = if sigma == 0.0 { 0.0 } else { sigma / bound };
                if ratio > worst {
                    worst = ratio;
                    worst_pair = (s, t);
                }
            }
        }
        report.check_le("max over grid pairs of σ(s,t)/φ(|t-s|)", worst, 1.0 + 1e-9);
        report.note(format!("worst pair: ({}, {})", worst_pair.0, worst_pair.1));
        Ok(report)
    }
}

fn index_of(v: f64, len: usize) -> Result<usize> {
    let r = v.round();
    if (v - r).abs() > 1e-9 || r < 0.0 {
        return Err(Error::Domain(format!("point {v} is not a nonnegative state index")));
    }
    let i = r as usize;
    if i >= len {
        return Err(Error::Domain(format!("state index {i} out of range (need < {len})")));
    }
    Ok(i)
}

fn lookup_point(points: &[f64], v: f64) -> Result<usize> {
    let tol = 1e-9 * v.abs().max(1.0);
    points
        .iter()
        .position(|&p| (p - v).abs() <= tol)
        .ok_or_else(|| Error::Domain(format!("point {v} is not one of the kernel's evaluation sites")))
}

/// The 2×2 kernel of a pair, reduced to its symmetric form:
/// `b = u(s,s)`, `a = u(t,t)`, `γ = (u(s,t)u(t,s))^{1/2}`,
/// `δ = ab - γ²`, `σ² = a + b - 2γ`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PairKernel {
    pub b: f64,
    pub a: f64,
    pub gamma_off: f64,
    pub delta: f64,
    pub sigma: f64,
}

impl PairKernel {
    pub fn new(b: f64, a: f64, gamma_off: f64) -> Result<Self> {
        if b < 0.0 || a < 0.0 || gamma_off < 0.0 {
            return Err(Error::InvalidKernel(format!(
                "pair kernel entries must be nonnegative, got (b, a, γ) = ({b}, {a}, {gamma_off})"
            )));
        }
        let scale = (a * b).max(gamma_off * gamma_off).max(1e-300);
        let mut delta = a * b - gamma_off * gamma_off;
        if delta < -1e-12 * scale {
            return Err(Error::InvalidKernel(format!(
                "determinant ab - γ² = {delta} < 0: off-diagonal exceeds the diagonal geometric mean"
            )));
        }
        delta = delta.max(0.0);
        let sigma_sq = (a + b - 2.0 * gamma_off).max(0.0);
        Ok(PairKernel { b, a, gamma_off, delta, sigma: sigma_sq.sqrt() })
    }

    pub fn from_kernel(kernel: &KernelSpec, s: f64, t: f64) -> Result<Self> {
        let b = kernel.eval(s, s)?;
        let a = kernel.eval(t, t)?;
        let ust = kernel.eval(s, t)?;
        let uts = kernel.eval(t, s)?;
        let prod = ust * uts;
        if prod < -1e-12 * a.abs().max(b.abs()).max(1e-300).powi(2) {
            return Err(Error::Invariant(format!(
                "u(s,t)u(t,s) = {prod} < 0 at ({s},{t}); no symmetric pair kernel exists"
            )));
        }
        PairKernel::new(b, a, prod.max(0.0).sqrt())
    }

    pub fn sigma_sq(&self) -> f64 {
        self.sigma * self.sigma
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.b, self.gamma_off], [self.gamma_off, self.a]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn explicit(m: [[f64; 2]; 2]) -> KernelSpec {
        KernelSpec::ExplicitMatrix {
            points: vec![0.0, 1.0],
            matrix: vec![m[0].to_vec(), m[1].to_vec()],
        }
    }

    #[test]
    fn brownian_hit0_with_zero_f() {
        let k = KernelSpec::BrownianHit0 { f: FnSpec::Zero, with_origin: false };
        assert_eq!(k.eval(2.0, 3.0).unwrap(), 2.0);
        assert!(k.eval(0.0, 3.0).is_err());
    }

    #[test]
    fn brownian_hit0_origin_extension() {
        let f = FnSpec::Power { coeff: 1.0, expo: 1.0 / 3.0, offset: 0.0 };
        let k = KernelSpec::BrownianHit0 { f: f.clone(), with_origin: true };
        assert_eq!(k.eval(0.0, 8.0).unwrap(), 2.0); // f(8) = 2
        assert_eq!(k.eval(8.0, 0.0).unwrap(), 1.0);
        assert_eq!(k.eval(0.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn fbmq_diagonal_example() {
        let k = KernelSpec::Fbmq { gamma: 0.5, beta: 0.0 };
        let v = k.eval(1.0, 1.0).unwrap();
        assert!((v - 1.595_769_121_605_730_8).abs() < 1e-12);
    }

    #[test]
    fn sigma_basics() {
        let k = explicit([[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(k.sigma(0.0, 0.0).unwrap(), 0.0);
        assert!((k.sigma(0.0, 1.0).unwrap() - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sigma_rejects_negative_product() {
        let k = explicit([[1.0, 0.5], [-0.5, 1.0]]);
        assert!(matches!(k.sigma(0.0, 1.0), Err(Error::Invariant(_))));
    }

    #[test]
    fn sigma_fbmq_majorant() {
        // σ(x,y) ≤ (2(1+|β|)C_{γ,β})^{1/2} |x-y|^{γ/2} on a grid
        for &beta in &[0.0, 0.6, -1.0] {
            let gamma = 0.5;
            let k = KernelSpec::Fbmq { gamma, beta };
            let c = fbmq::c_gamma_beta(gamma, beta).unwrap();
            let coeff = (2.0 * (1.0 + beta.abs()) * c).sqrt();
            let phi = EnvelopeFn::power_law(coeff, gamma / 2.0);
            let grid: Vec<f64> = (1..=20).map(|i| 0.1 * i as f64).collect();
            let rep = k.majorant_audit(&phi, &grid).unwrap();
            assert!(rep.pass, "beta = {beta}: {rep:?}");
        }
    }

    #[test]
    fn zero_envelope_fails_audit() {
        let k = KernelSpec::Fbmq { gamma: 0.5, beta: 0.0 };
        let grid = [0.2, 0.5, 1.0];
        let rep = k.majorant_audit(&EnvelopeFn::zero(), &grid).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn expkilled_majorant_near_zero() {
        // σ²(s,t) ~ 2λ|t-s| near zero, so φ²(h) = 2λh majorizes on [0, 0.01]
        let lambda = 1.0;
        let k = KernelSpec::ExpKilled { lambda, f: FnSpec::ExpDecay { scale: 1.0, rate: 1.0 } };
        let phi = EnvelopeFn::power_law((2.0 * lambda).sqrt(), 0.5);
        let grid: Vec<f64> = (0..=32).map(|i| 0.01 * i as f64 / 32.0).collect();
        let rep = k.majorant_audit(&phi, &grid).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn decomposition_sums_to_sigma_sq() {
        let k = KernelSpec::Fbmq { gamma: 0.6, beta: 0.7 };
        for &(s, t) in &[(0.3, 1.4), (0.05, 0.06), (2.0, 5.0)] {
            let (rho2, asym2) = k.sigma_decomposition(s, t).unwrap();
            assert!(rho2 >= 0.0 && asym2 >= 0.0);
            let s2 = k.sigma(s, t).unwrap().powi(2);
            assert!((rho2 + asym2 - s2).abs() <= 1e-12 * s2.max(1e-12), "({s},{t})");
        }
    }

    #[test]
    fn symmetric_kernel_decomposition_collapses() {
        let k = explicit([[2.0, 0.7], [0.7, 1.0]]);
        let (rho2, asym2) = k.sigma_decomposition(0.0, 1.0).unwrap();
        assert_eq!(asym2, 0.0);
        assert!((rho2.sqrt() - k.sigma(0.0, 1.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn normalize_unit_diagonal() {
        let k = explicit([[4.0, 2.0], [2.0, 4.0]]).normalized();
        assert!((k.eval(0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((k.eval(0.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        // σ̃²(s,t) ≤ σ²(s,t) / (u(s,s)u(t,t))^{1/2} pointwise
        let raw = KernelSpec::Fbmq { gamma: 0.5, beta: 0.0 };
        let norm = raw.clone().normalized();
        for i in 1..=20 {
            let s = 0.1 * i as f64;
            let t = s + 0.35;
            let lhs = norm.sigma(s, t).unwrap().powi(2);
            let rhs = raw.sigma(s, t).unwrap().powi(2)
                / (raw.eval(s, s).unwrap() * raw.eval(t, t).unwrap()).sqrt();
            assert!(lhs <= rhs + 1e-12, "s={s}");
        }
    }

    #[test]
    fn normalize_zero_diagonal_is_domain_error() {
        let k = explicit([[0.0, 0.0], [0.0, 1.0]]).normalized();
        assert!(matches!(k.eval(0.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn discrete_seq_entries() {
        let k = KernelSpec::DiscreteSeq {
            lambda: SeqSpec::Geometric { a: 1.0, r: 0.5 },
            f: SeqSpec::OneMinusGeometric { a: 1.0, r: 0.5 },
            g: SeqSpec::OneMinusGeometric { a: 1.0, r: 0.5 },
        };
        assert_eq!(k.eval(0.0, 0.0).unwrap(), 2.0);
        let f1 = 1.0 - 0.5;
        assert_eq!(k.eval(1.0, 0.0).unwrap(), 1.0 + f1);
        assert_eq!(k.eval(1.0, 1.0).unwrap(), 0.5 + 1.0 + f1 * f1);
        assert_eq!(k.eval(1.0, 2.0).unwrap(), 1.0 + f1 * 0.75);
        assert!(k.eval(1.5, 0.0).is_err());
    }

    #[test]
    fn product_bounded_by_diagonal_on_families() {
        // u(s,t)u(t,s) ≤ u(s,s)u(t,t) across the built-in zoo
        let kernels = vec![
            KernelSpec::Fbmq { gamma: 0.5, beta: 0.7 },
            KernelSpec::ExpKilled { lambda: 1.0, f: FnSpec::ExpDecay { scale: 1.0, rate: 1.0 } },
            KernelSpec::BrownianHit0 {
                f: FnSpec::Power { coeff: 1.0, expo: 1.0 / 3.0, offset: 0.0 },
                with_origin: false,
            },
        ];
        let grid: Vec<f64> = (1..=12).map(|i| 0.25 * i as f64).collect();
        for k in &kernels {
            for &s in &grid {
                for &t in &grid {
                    let lhs = k.eval(s, t).unwrap() * k.eval(t, s).unwrap();
                    let rhs = k.eval(s, s).unwrap() * k.eval(t, t).unwrap();
                    assert!(lhs <= rhs + 1e-10 * rhs.abs(), "{k:?} at ({s},{t})");
                }
            }
        }
    }

    #[test]
    fn pair_kernel_fields() {
        let p = PairKernel::new(1.0, 1.0, 0.5).unwrap();
        assert_eq!(p.delta, 0.75);
        assert!((p.sigma_sq() - 1.0).abs() < 1e-15);
        assert!(PairKernel::new(1.0, 1.0, 1.5).is_err());
        // σ = 0 forces a = b and δ = 0
        let d = PairKernel::new(2.0, 2.0, 2.0).unwrap();
        assert_eq!(d.sigma, 0.0);
        assert_eq!(d.delta, 0.0);
    }

    #[test]
    fn spec_json_round_trip() {
        let k = KernelSpec::Fbmq { gamma: 0.5, beta: 0.25 };
        let s = serde_json::to_string(&k).unwrap();
        assert!(s.contains("\"family\":\"fbmq\""), "{s}");
        let back: KernelSpec = serde_json::from_str(&s).unwrap();
        assert!((back.eval(1.0, 2.0).unwrap() - k.eval(1.0, 2.0).unwrap()).abs() < 1e-15);
    }
}
