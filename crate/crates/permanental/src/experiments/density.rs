//! Bivariate density coherence: quadrature normalization, gamma marginals,
//! and a chi-squared comparison of mixture-sampler histograms against the
//! density.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::stats::{chi2_sf, gamma_quantile};
use crate::error::Result;
use crate::kernels::PairKernel;
use crate::quad;
use crate::report::{config_hash, Criterion, ExperimentReport, Table};
use crate::sampling::{bivariate_density, sample_bivariate};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityConfig {
    pub b: f64,
    pub a: f64,
    pub gamma_off: f64,
    pub alpha: f64,
    pub n_rep: usize,
    pub seed: u64,
    /// Bins per axis for the histogram comparison.
    pub bins: usize,
}

/// Integrate the density over `[x0,x1]×[y0,y1]` in square-root coordinates
/// (`x = w²`), which absorbs the `x^{α-1}` edge singularity for `α ≥ 1/2`.
fn cell_mass(k: &PairKernel, alpha: f64, x0: f64, x1: f64, y0: f64, y1: f64) -> Result<f64> {
    let outer = quad::adaptive(
        &|w: f64| {
            let x = w * w;
            let inner = quad::adaptive(
                &|v: f64| {
                    let y = v * v;
                    2.0 * v * bivariate_density(k, alpha, x, y).unwrap_or(0.0)
                },
                y0.sqrt(),
                y1.sqrt(),
                1e-9,
                1e-13,
            )
            .unwrap_or(f64::NAN);
            2.0 * w * inner
        },
        x0.sqrt(),
        x1.sqrt(),
        1e-8,
        1e-12,
    )?;
    Ok(outer)
}

/// Total mass of the density over an effectively-full quadrant.
pub fn density_normalization(k: &PairKernel, alpha: f64) -> Result<f64> {
    let x_hi = k.b * (40.0 + 12.0 * alpha);
    let y_hi = k.a * (40.0 + 12.0 * alpha);
    cell_mass(k, alpha, 0.0, x_hi, 0.0, y_hi)
}

/// `∫ g(x, y) dy`: should equal the Gamma(α, rate 1/b) density at `x`.
pub fn density_marginal_x(k: &PairKernel, alpha: f64, x: f64) -> Result<f64> {
    let y_hi = k.a * (40.0 + 12.0 * alpha);
    quad::adaptive(
        &|v: f64| {
            let y = v * v;
            2.0 * v * bivariate_density(k, alpha, x, y).unwrap_or(0.0)
        },
        0.0,
        y_hi.sqrt(),
        1e-9,
        1e-13,
    )
}

fn gamma_pdf(x: f64, shape: f64, scale: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    ((shape - 1.0) * x.ln() - x / scale - ln_gamma(shape) - shape * scale.ln()).exp()
}

/// Normalization, marginals, and the sampler-vs-density chi-squared test.
pub fn density_coherence_experiment(cfg: &DensityConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let k = PairKernel::new(cfg.b, cfg.a, cfg.gamma_off)?;
    let alpha = cfg.alpha;
    let mut report = ExperimentReport::new(
        "density-coherence",
        format!("pair (b,a,γ) = ({},{},{}), alpha = {alpha}", k.b, k.a, k.gamma_off),
        cfg.seed,
        cfg.n_rep as u64,
    );

    let mass = density_normalization(&k, alpha)?;
    report.push_criterion(Criterion::at_most("|∫∫ g - 1|", (mass - 1.0).abs(), 1e-6));

    // marginal against the gamma density on a quantile grid of the bulk
    let mut worst_rel = 0.0f64;
    for i in 1..=9 {
        let q = 0.1 * i as f64;
        let x = gamma_quantile(q, alpha, 1.0) * k.b;
        let marg = density_marginal_x(&k, alpha, x)?;
        let want = gamma_pdf(x, alpha, k.b);
        worst_rel = worst_rel.max((marg - want).abs() / want);
    }
    report.push_criterion(Criterion::at_most(
        "max relative marginal error on decile grid",
        worst_rel,
        1e-6,
    ));

    // histogram vs density: bins at marginal quantiles, cells with expected
    // count < 5 pooled, chi-squared p-value must clear 1%
    let bins = cfg.bins;
    let edges = |scale: f64| -> Vec<f64> {
        let mut e = vec![0.0];
        for i in 1..bins {
            e.push(gamma_quantile(i as f64 / bins as f64, alpha, 1.0) * scale);
        }
        e.push(f64::INFINITY);
        e
    };
    let xe = edges(k.b);
    let ye = edges(k.a);
    let cap = |v: f64, scale: f64| if v.is_finite() { v } else { scale * (60.0 + 15.0 * alpha) };
    let mut expected = vec![vec![0.0f64; bins]; bins];
    for i in 0..bins {
        for j in 0..bins {
            expected[i][j] = cell_mass(
                &k,
                alpha,
                xe[i],
                cap(xe[i + 1], k.b),
                ye[j],
                cap(ye[j + 1], k.a),
            )? * cfg.n_rep as f64;
        }
    }
    let batch = sample_bivariate(&k, alpha, cfg.n_rep, cfg.seed)?;
    let locate = |edges: &[f64], v: f64| -> usize {
        edges.partition_point(|&e| e <= v).saturating_sub(1).min(bins - 1)
    };
    let mut counts = vec![vec![0u64; bins]; bins];
    for r in 0..batch.n_rep {
        let row = batch.row(r);
        counts[locate(&xe, row[0])][locate(&ye, row[1])] += 1;
    }
    let mut chi2 = 0.0f64;
    let mut used_cells = 0usize;
    let mut pooled_exp = 0.0f64;
    let mut pooled_count = 0u64;
    for i in 0..bins {
        for j in 0..bins {
            if expected[i][j] >= 5.0 {
                let d = counts[i][j] as f64 - expected[i][j];
                chi2 += d * d / expected[i][j];
                used_cells += 1;
            } else {
                pooled_exp += expected[i][j];
                pooled_count += counts[i][j];
            }
        }
    }
    if pooled_exp >= 5.0 {
        let d = pooled_count as f64 - pooled_exp;
        chi2 += d * d / pooled_exp;
        used_cells += 1;
    }
    let dof = (used_cells - 1) as f64;
    let p_value = chi2_sf(chi2, dof);
    report.push_criterion(Criterion::at_least(
        format!("chi-squared p-value ({used_cells} cells, {bins}x{bins} binning)"),
        p_value,
        0.01,
    ));

    report.table = Table::new("check", &["observed"]);
    report.table.push(0.0, vec![mass]);
    report.table.push(1.0, vec![worst_rel]);
    report.table.push(2.0, vec![chi2]);
    report.table.push(3.0, vec![p_value]);
    report.finish(config_hash(cfg), start.elapsed());
    Ok(report)
}
