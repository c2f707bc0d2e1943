//! Oracle equivalence: empirical Laplace transforms of sampled fields
//! against the determinant formula, node by node.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::stats::mean_se;
use crate::error::Result;
use crate::matrix::{laplace_transform, PermanentalSpec};
use crate::report::{config_hash, Criterion, ExperimentReport, Table};
use crate::sampling::sample_path_grid;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LaplaceConfig {
    pub spec: PermanentalSpec,
    /// One `s`-vector per node; every entry nonnegative.
    pub s_grid: Vec<Vec<f64>>,
    pub n_rep: usize,
    pub seed: u64,
}

/// Compare `mean exp(-⟨s,X⟩)` to `|I+US|^{-α}` at every node; a node passes
/// when the difference is within 4 standard errors.
pub fn verify_laplace(cfg: &LaplaceConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let batch = sample_path_grid(&cfg.spec, cfg.n_rep, cfg.seed)?;
    let mut report = ExperimentReport::new(
        "verify-laplace",
        cfg.spec.summary(),
        cfg.seed,
        cfg.n_rep as u64,
    );
    report.table = Table::new("node", &["empirical", "oracle", "se", "abs_z"]);
    let mut worst_z = 0.0f64;
    for (node, s) in cfg.s_grid.iter().enumerate() {
        let oracle = laplace_transform(&cfg.spec, s)?;
        let vals: Vec<f64> = (0..batch.n_rep)
            .map(|r| {
                let row = batch.row(r);
                (-row.iter().zip(s).map(|(x, si)| x * si).sum::<f64>()).exp()
            })
            .collect();
        let (emp, se) = mean_se(&vals);
        let diff = (emp - oracle).abs();
        let z = if se > 0.0 {
            diff / se
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        worst_z = worst_z.max(z);
        report.table.push(node as f64, vec![emp, oracle, se, z]);
    }
    report.push_criterion(Criterion::at_most(
        "max |empirical - oracle| / SE over s-grid nodes",
        worst_z,
        4.0,
    ));
    report.finish(config_hash(cfg), start.elapsed());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelSpec;

    #[test]
    fn zero_vector_matches_exactly() {
        let spec = PermanentalSpec::from_matrix(1.0, vec![vec![1.0, 0.3], vec![0.3, 1.0]]);
        let cfg = LaplaceConfig { spec, s_grid: vec![vec![0.0, 0.0]], n_rep: 500, seed: 3 };
        let rep = verify_laplace(&cfg).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.table.rows[0].values[0], 1.0);
        assert_eq!(rep.table.rows[0].values[3], 0.0);
    }

    #[test]
    fn brownian_grid_passes() {
        let points: Vec<f64> = (1..=6).map(|i| i as f64 / 6.0).collect();
        let spec = PermanentalSpec::from_kernel(
            0.5,
            KernelSpec::BrownianHit0 { f: crate::func::FnSpec::Zero, with_origin: false },
            points.clone(),
        );
        let s_grid: Vec<Vec<f64>> = [0.1, 0.5, 1.0]
            .iter()
            .map(|c| points.iter().map(|p| c / (6.0 * p)).collect())
            .collect();
        let cfg = LaplaceConfig { spec, s_grid, n_rep: 60_000, seed: 14 };
        let rep = verify_laplace(&cfg).unwrap();
        assert!(rep.pass, "{:?}", rep.criteria);
    }

    #[test]
    fn mixture_sampler_passes() {
        let spec = PermanentalSpec::from_matrix(0.7, vec![vec![1.0, 0.5], vec![0.5, 1.0]]);
        let mut s_grid = Vec::new();
        for &a in &[0.1, 0.6, 1.5] {
            for &b in &[0.1, 0.6, 1.5] {
                s_grid.push(vec![a, b]);
            }
        }
        let cfg = LaplaceConfig { spec, s_grid, n_rep: 80_000, seed: 15 };
        let rep = verify_laplace(&cfg).unwrap();
        assert!(rep.pass, "{:?}", rep.criteria);
    }
}
