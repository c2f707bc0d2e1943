//! Occupation-time check of the rebirthing construction.
//!
//! A finite Green matrix `U` with an inverse-M-matrix structure is realized
//! as a killed continuous-time chain (`A = U^{-1}`: off-diagonal jump rates
//! `-A_{xy}`, killing rate = row sum). Death is replaced by a visit to the
//! revival point `*`, where the chain waits an exponential `1+ρ` time and
//! is reborn into the interior with law `μ/(1+ρ)` or killed for good with
//! probability `1/(1+ρ)`. The empirical occupation matrix must then match
//! the rank-one-shifted kernel entrywise, including unit occupation at `*`.

use std::time::Instant;

use rayon::prelude::*;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use super::stats::mean_se;
use crate::error::{Error, Result};
use crate::matrix::rebirth_kernel;
use crate::report::{config_hash, Criterion, ExperimentReport, Table};
use crate::sampling::{replicate_rng, SamplerId};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RebirthConfig {
    pub green: Vec<Vec<f64>>,
    pub mu: Vec<f64>,
    pub n_rep: usize,
    pub seed: u64,
    /// Event-count safety cap per path.
    pub max_events: usize,
}

pub fn rebirth_green_experiment(cfg: &RebirthConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let n = cfg.green.len();
    let u = DMatrix::from_fn(n, n, |i, j| cfg.green[i][j]);
    let rk = rebirth_kernel(&u, &cfg.mu)?;
    let inv = u
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular("green matrix is singular".into()))?;
    for x in 0..n {
        if inv[(x, x)] <= 0.0 {
            return Err(Error::InvalidPotential(format!(
                "generator diagonal A({x},{x}) = {} must be positive",
                inv[(x, x)]
            )));
        }
    }
    let rho = rk.rebirth_mass;
    let mut report = ExperimentReport::new(
        "rebirth-green",
        format!("{n}-state chain, rebirth mass {rho}"),
        cfg.seed,
        cfg.n_rep as u64,
    );
    report.table = Table::new("flat_index", &["start", "state", "empirical", "expected", "se", "abs_z"]);

    // one path: returns occupation times over {*, 1..n}
    let simulate = |start_state: usize, rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
        let mut occ = vec![0.0f64; n + 1];
        let mut state = start_state; // 0 = *
        for _ in 0..cfg.max_events {
            if state == 0 {
                let dwell = Exp::new(1.0 + rho).expect("positive rate").sample(rng);
                occ[0] += dwell;
                // reborn into y with probability μ_y/(1+ρ), die otherwise
                let pick = rng.gen::<f64>() * (1.0 + rho);
                let mut acc = 0.0;
                let mut next = None;
                for y in 0..n {
                    acc += cfg.mu[y];
                    if pick < acc {
                        next = Some(y + 1);
                        break;
                    }
                }
                match next {
                    Some(s) => state = s,
                    None => return occ,
                }
            } else {
                let x = state - 1;
                let total = inv[(x, x)];
                let dwell = Exp::new(total).expect("positive rate").sample(rng);
                occ[state] += dwell;
                let pick = rng.gen::<f64>() * total;
                let mut acc = 0.0;
                let mut next = 0usize; // default: killed -> *
                for y in 0..n {
                    if y != x {
                        acc += -inv[(x, y)].min(0.0);
                        if pick < acc {
                            next = y + 1;
                            break;
                        }
                    }
                }
                state = next;
            }
        }
        occ
    };

    let mut worst_z = 0.0f64;
    for start_state in 0..=n {
        let occs: Vec<Vec<f64>> = (0..cfg.n_rep as u64)
            .into_par_iter()
            .map(|r| {
                let mut rng = replicate_rng(
                    cfg.seed,
                    SamplerId::RebirthChain,
                    (start_state as u64) * cfg.n_rep as u64 + r,
                );
                simulate(start_state, &mut rng)
            })
            .collect();
        for y in 0..=n {
            let col: Vec<f64> = occs.iter().map(|o| o[y]).collect();
            let (emp, se) = mean_se(&col);
            let expected = rk.matrix[(start_state, y)];
            let diff = (emp - expected).abs();
            let z = if se > 0.0 {
                diff / se
            } else if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            worst_z = worst_z.max(z);
            report.table.push(
                (start_state * (n + 1) + y) as f64,
                vec![start_state as f64, y as f64, emp, expected, se, z],
            );
        }
    }
    report.push_criterion(Criterion::at_most(
        "max |empirical - expected|/SE over occupation entries (includes u(*,*) = 1)",
        worst_z,
        4.0,
    ));
    report.finish(config_hash(cfg), start.elapsed());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state_green() -> Vec<Vec<f64>> {
        vec![vec![2.0, 1.0], vec![1.0, 2.0]]
    }

    #[test]
    fn zero_measure_recovers_base_green() {
        let cfg = RebirthConfig {
            green: two_state_green(),
            mu: vec![0.0, 0.0],
            n_rep: 30_000,
            seed: 19,
            max_events: 10_000,
        };
        let rep = rebirth_green_experiment(&cfg).unwrap();
        assert!(rep.pass, "{:?}", rep.criteria);
    }

    #[test]
    fn two_state_with_rebirth() {
        let cfg = RebirthConfig {
            green: two_state_green(),
            mu: vec![0.5, 0.0],
            n_rep: 40_000,
            seed: 20,
            max_events: 10_000,
        };
        let rep = rebirth_green_experiment(&cfg).unwrap();
        assert!(rep.pass, "{:?}", rep.criteria);
        // mean total time at * is exactly 1 whatever the start
        let star_rows: Vec<&crate::report::TableRow> = rep
            .table
            .rows
            .iter()
            .filter(|r| r.values[1] == 0.0)
            .collect();
        for row in star_rows {
            assert!((row.values[2] - 1.0).abs() < 0.02, "{row:?}");
            assert_eq!(row.values[3], 1.0);
        }
    }

    #[test]
    fn inadmissible_green_rejected() {
        let cfg = RebirthConfig {
            green: vec![vec![1.0, 2.0], vec![2.0, 1.0]],
            mu: vec![0.1, 0.1],
            n_rep: 10,
            seed: 1,
            max_events: 100,
        };
        assert!(matches!(rebirth_green_experiment(&cfg), Err(Error::InvalidPotential(_))));
    }
}
