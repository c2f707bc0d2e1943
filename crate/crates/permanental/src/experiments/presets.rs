//! Named, reproducible experiment presets.
//!
//! Every preset fixes its kernel, grids, corridors, seed and replicate
//! count, so the whole verification suite runs with zero authoring:
//! `permanental <command> --preset <name>`. Seeds and replicate counts can
//! be overridden per run.

use nalgebra::DMatrix;

use super::coupling::{coupling_ratio_experiment, CouplingConfig};
use super::density::{density_coherence_experiment, DensityConfig};
use super::laplace::{verify_laplace, LaplaceConfig};
use super::modulus::{modulus_experiment, ModulusConfig, ModulusKind};
use super::rebirth::{rebirth_green_experiment, RebirthConfig};
use super::tail::{verify_tail, TailConfig};
use crate::bounds::{self, calibration};
use crate::error::{Error, Result};
use crate::func::{EnvelopeFn, FnSpec};
use crate::kernels::{fbmq, KernelSpec};
use crate::matrix::{
    augmented_inverse, bordered_matrix, min_matrix, mmatrix_admissible, PermanentalSpec,
};
use crate::report::{Criterion, ExperimentReport, Table};

pub struct PresetInfo {
    pub name: &'static str,
    pub about: &'static str,
}

pub fn list() -> Vec<PresetInfo> {
    vec![
        PresetInfo { name: "bm-halfint", about: "Laplace oracle: α=1/2, s∧t kernel on 8 dyadic points" },
        PresetInfo { name: "bm-one", about: "Laplace oracle: α=1, s∧t kernel on 8 dyadic points" },
        PresetInfo { name: "fbmq-halfint", about: "Laplace oracle: α=1/2, killed-stable kernel (γ=1/2, β=0) on 6 points" },
        PresetInfo { name: "bivariate-lt", about: "Laplace oracle: mixture sampler, α ∈ {0.5,0.7,1.3} × two pair kernels" },
        PresetInfo { name: "density-coherence", about: "bivariate density: normalization, marginals, χ² vs sampler (3 parameter sets)" },
        PresetInfo { name: "tail-stress", about: "increment tail bound domination over the stress family" },
        PresetInfo { name: "orlicz-grid", about: "ψ₂ solver exactness on a (K, n) grid" },
        PresetInfo { name: "inverse-closed-form", about: "bordered-matrix closed-form inverse checks" },
        PresetInfo { name: "mmatrix-example42", about: "inverse-M-matrix admissibility: sequence kernel m ≤ 12 + counterexample" },
        PresetInfo { name: "rebirth-4state", about: "rebirthed 4-state chain occupation vs kernel" },
        PresetInfo { name: "lil-bm", about: "iterated-logarithm corridor for the squared Brownian field" },
        PresetInfo { name: "local-fbmq", about: "local modulus corridor for the squared fractional field (γ=1/2)" },
        PresetInfo { name: "uniform-bm", about: "uniform modulus corridor for the squared Brownian field" },
        PresetInfo { name: "growth-expkilled", about: "growth-at-infinity corridor for e^{-λ|s-t|} + potential" },
        PresetInfo { name: "sequence-expkilled", about: "sequence modulus along t_n = 2^{-n}" },
        PresetInfo { name: "coupling-cuberoot", about: "small-time gamma coupling for f(t) = t^{1/3}" },
    ]
}

fn dyadic_points(n: usize) -> Vec<f64> {
    let mut pts: Vec<f64> = (1..=n).map(|k| 2.0f64.powi(-(k as i32))).collect();
    pts.reverse();
    pts
}

fn scaled_grid(points: &[f64], diag: &[f64]) -> Vec<Vec<f64>> {
    [0.05, 0.1, 0.25, 0.5, 1.0]
        .iter()
        .map(|c| {
            points
                .iter()
                .zip(diag)
                .map(|(_, d)| c / (points.len() as f64 * d))
                .collect()
        })
        .collect()
}

fn lt_preset(alpha: f64, kernel: KernelSpec, points: Vec<f64>, seed: u64, n_rep: usize) -> Result<ExperimentReport> {
    let diag: Vec<f64> = points.iter().map(|&p| kernel.eval(p, p)).collect::<Result<_>>()?;
    let spec = PermanentalSpec::from_kernel(alpha, kernel, points.clone());
    let cfg = LaplaceConfig { spec, s_grid: scaled_grid(&points, &diag), n_rep, seed };
    verify_laplace(&cfg)
}

fn bivariate_lt_reports(seed: u64, n_rep: usize) -> Result<Vec<ExperimentReport>> {
    let kernels = [(1.0, 1.0, 0.5), (1.0, 4.0, 1.5)]; // (b, a, γ)
    let alphas = [0.5, 0.7, 1.3];
    let nodes = [0.1, 0.3, 0.7, 1.2, 2.0];
    let mut out = Vec::new();
    for (ki, &(b, a, g)) in kernels.iter().enumerate() {
        for (ai, &alpha) in alphas.iter().enumerate() {
            let spec = PermanentalSpec::from_matrix(alpha, vec![vec![b, g], vec![g, a]]);
            let mut s_grid = Vec::new();
            for &c1 in &nodes {
                for &c2 in &nodes {
                    s_grid.push(vec![c1 / b, c2 / a]);
                }
            }
            let cfg = LaplaceConfig {
                spec,
                s_grid,
                n_rep,
                seed: seed ^ ((ki as u64) << 24) ^ ((ai as u64) << 16),
            };
            out.push(verify_laplace(&cfg)?);
        }
    }
    Ok(out)
}

fn density_reports(seed: u64, n_rep: usize) -> Result<Vec<ExperimentReport>> {
    let sets = [
        (1.0, 1.0, 0.5, 1.0),
        (1.0, 4.0, 1.5, 0.7),
        (1.0, 1.0, 0.9, 0.5),
    ];
    sets.iter()
        .enumerate()
        .map(|(i, &(b, a, g, alpha))| {
            density_coherence_experiment(&DensityConfig {
                b,
                a,
                gamma_off: g,
                alpha,
                n_rep,
                seed: seed ^ ((i as u64) << 8),
                bins: 20,
            })
        })
        .collect()
}

fn tail_stress_reports(seed: u64, n_rep: usize) -> Result<Vec<ExperimentReport>> {
    let lambda_grid = vec![1.0, 1.5, 2.0, 2.5, 3.0];
    let mut out = Vec::new();
    for (ai, &alpha) in [0.5, 1.0, 1.3].iter().enumerate() {
        for (ki, k) in calibration::stress_family().iter().enumerate() {
            let cfg = TailConfig {
                b: k.b,
                a: k.a,
                gamma_off: k.gamma_off,
                alpha,
                lambda_grid: lambda_grid.clone(),
                n_rep,
                seed: seed ^ ((ai as u64) << 32) ^ ((ki as u64) << 8),
            };
            out.push(verify_tail(&cfg)?);
        }
    }
    Ok(out)
}

fn orlicz_grid_report() -> ExperimentReport {
    let mut report = ExperimentReport::new("orlicz-grid", "ψ₂ solver exactness", 0, 0);
    report.table = Table::new("case", &["k_tail", "n_pow", "c_star", "residual"]);
    let c = bounds::orlicz_psi2_const(1.0, 0.0).unwrap();
    report.push_criterion(Criterion::at_most(
        "|c*(K=1, n=0) - √2|",
        (c - 2.0f64.sqrt()).abs(),
        1e-12,
    ));
    let grid = [
        (1.0, 0.0),
        (1.5, 0.0),
        (std::f64::consts::E, 0.0),
        (5.0, 0.0),
        (20.0, 0.0),
        (2.0, 1.0),
        (2.0, 2.0),
        (5.0, 1.0),
        (10.0, 4.0),
        (3.0, 0.5),
    ];
    let mut worst = 0.0f64;
    for (i, &(k, n)) in grid.iter().enumerate() {
        let c = bounds::orlicz_psi2_const(k, n).unwrap();
        let r = bounds::orlicz_residual(k, n, c).abs();
        worst = worst.max(r);
        report.table.push(i as f64, vec![k, n, c, r]);
    }
    report.push_criterion(Criterion::at_most(
        "max |equation(c*) - 2| over the 10-point (K, n) grid",
        worst,
        1e-10,
    ));
    report.finish(crate::report::config_hash(&"orlicz-grid-v1"), std::time::Duration::ZERO);
    report
}

fn inverse_closed_form_report(seed: u64) -> ExperimentReport {
    let mut report = ExperimentReport::new("inverse-closed-form", "bordered inverse checks", seed, 0);
    report.table = Table::new("n", &["max_abs_product_error"]);
    let mut state = seed | 1;
    let mut unit = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst = 0.0f64;
    for n in 1..=12usize {
        let mut u = DMatrix::from_fn(n, n, |_, _| unit() - 0.5);
        for i in 0..n {
            u[(i, i)] += n as f64;
        }
        let f: Vec<f64> = (0..n).map(|_| unit()).collect();
        let inv = augmented_inverse(&u, &f).unwrap();
        let prod = &inv * bordered_matrix(&u, &f).unwrap();
        let mut err = 0.0f64;
        for i in 0..=n {
            for j in 0..=n {
                let want = if i == j { 1.0 } else { 0.0 };
                err = err.max((prod[(i, j)] - want).abs());
            }
        }
        worst = worst.max(err);
        report.table.push(n as f64, vec![err]);
    }
    report.push_criterion(Criterion::at_most(
        "max |U_f^{-1} U_f - I| over random bases n ≤ 12",
        worst,
        1e-10,
    ));
    // geometric levels: inner diagonal (θ+1)/(θ^j(θ-1)), last θ/(θ^n(θ-1))
    let theta = 2.0f64;
    let n = 8usize;
    let levels: Vec<f64> = (1..=n).map(|j| theta.powi(j as i32)).collect();
    let w = min_matrix(&levels);
    let f: Vec<f64> = (1..=n).map(|j| 0.1 / j as f64).collect();
    let inv = augmented_inverse(&w, &f).unwrap();
    let mut diag_err = 0.0f64;
    for j in 2..n {
        let want = (theta + 1.0) / (theta.powi(j as i32) * (theta - 1.0));
        diag_err = diag_err.max((inv[(j, j)] - want).abs());
    }
    diag_err = diag_err
        .max((inv[(n, n)] - theta / (theta.powi(n as i32) * (theta - 1.0))).abs());
    report.push_criterion(Criterion::at_most(
        "max |closed-form geometric diagonal deviation| (θ = 2, n = 8)",
        diag_err,
        1e-12,
    ));
    let prod = &inv * bordered_matrix(&w, &f).unwrap();
    let mut err = 0.0f64;
    for i in 0..=n {
        for j in 0..=n {
            let want = if i == j { 1.0 } else { 0.0 };
            err = err.max((prod[(i, j)] - want).abs());
        }
    }
    report.push_criterion(Criterion::at_most("max |U_f^{-1} U_f - I| on the geometric grid", err, 1e-10));
    report.finish(crate::report::config_hash(&seed), std::time::Duration::ZERO);
    report
}

fn mmatrix_example_report() -> ExperimentReport {
    let mut report =
        ExperimentReport::new("mmatrix-example42", "sequence-kernel admissibility", 0, 0);
    report.table = Table::new("m", &["worst_offdiag", "worst_row_sum", "pass"]);
    let lam = |j: usize| 0.5f64.powi(j as i32);
    let f = |j: usize| 1.0 - lam(j);
    let mut all_pass = true;
    for m in 2..=12usize {
        let u = DMatrix::from_fn(m, m, |i, j| {
            let (ji, ki) = (i + 1, j + 1);
            let diag = if ji == ki { lam(ji) } else { 0.0 };
            diag + 1.0 + f(ji) * f(ki)
        });
        let rep = mmatrix_admissible(&u).unwrap();
        all_pass &= rep.pass();
        report.table.push(m as f64, vec![rep.worst_entry, rep.worst_row_sum, rep.pass() as u8 as f64]);
    }
    report.push_criterion(Criterion::at_least(
        "sequence kernel admissible for every m ≤ 12",
        all_pass as u8 as f64,
        1.0,
    ));
    let bad = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
    let bad_rep = mmatrix_admissible(&bad).unwrap();
    report.push_criterion(Criterion::at_most(
        "indefinite counterexample is rejected",
        bad_rep.pass() as u8 as f64,
        0.0,
    ));
    report.finish(crate::report::config_hash(&"mmatrix-example42-v1"), std::time::Duration::ZERO);
    report
}

/// Green matrix of the 4-state birth-death chain with killing used by the
/// rebirth preset (generator rates 1 between neighbours, killing 0.3).
pub fn four_state_green() -> Vec<Vec<f64>> {
    let a = DMatrix::from_row_slice(
        4,
        4,
        &[
            1.3, -1.0, 0.0, 0.0, //
            -1.0, 2.3, -1.0, 0.0, //
            0.0, -1.0, 2.3, -1.0, //
            0.0, 0.0, -1.0, 1.3,
        ],
    );
    let u = a.try_inverse().expect("generator invertible");
    (0..4).map(|i| (0..4).map(|j| u[(i, j)]).collect()).collect()
}

pub fn run(name: &str, seed: Option<u64>, n_rep: Option<usize>) -> Result<Vec<ExperimentReport>> {
    let seed_or = |d: u64| seed.unwrap_or(d);
    let rep_or = |d: usize| n_rep.unwrap_or(d);
    match name {
        "bm-halfint" => Ok(vec![lt_preset(
            0.5,
            KernelSpec::BrownianHit0 { f: FnSpec::Zero, with_origin: false },
            dyadic_points(8),
            seed_or(101),
            rep_or(100_000),
        )?]),
        "bm-one" => Ok(vec![lt_preset(
            1.0,
            KernelSpec::BrownianHit0 { f: FnSpec::Zero, with_origin: false },
            dyadic_points(8),
            seed_or(102),
            rep_or(100_000),
        )?]),
        "fbmq-halfint" => Ok(vec![lt_preset(
            0.5,
            KernelSpec::Fbmq { gamma: 0.5, beta: 0.0 },
            (1..=6).map(|i| 0.25 * i as f64).collect(),
            seed_or(103),
            rep_or(100_000),
        )?]),
        "bivariate-lt" => bivariate_lt_reports(seed_or(104), rep_or(100_000)),
        "density-coherence" => density_reports(seed_or(105), rep_or(1_000_000)),
        "tail-stress" => tail_stress_reports(seed_or(106), rep_or(1_000_000)),
        "orlicz-grid" => Ok(vec![orlicz_grid_report()]),
        "inverse-closed-form" => Ok(vec![inverse_closed_form_report(seed_or(107))]),
        "mmatrix-example42" => Ok(vec![mmatrix_example_report()]),
        "rebirth-4state" => Ok(vec![rebirth_green_experiment(&RebirthConfig {
            green: four_state_green(),
            mu: vec![0.2, 0.0, 0.0, 0.1],
            n_rep: rep_or(100_000),
            seed: seed_or(108),
            max_events: 100_000,
        })?]),
        "lil-bm" => Ok(vec![modulus_experiment(&ModulusConfig {
            kind: ModulusKind::Lil,
            kernel: KernelSpec::BrownianHit0 { f: FnSpec::Zero, with_origin: false },
            alpha: 0.5,
            n_rep: rep_or(200),
            seed: seed_or(109),
            k_min: 10,
            k_max: 20,
            pts_per_octave: 16,
            base_point: 0.0,
            envelope: None,
            corridor_lo: 0.6,
            corridor_hi: 1.2,
            horizon: 0.0,
            grid_points: 0,
        })?]),
        "local-fbmq" => {
            let gamma = 0.5;
            let c = fbmq::c_gamma_beta(gamma, 0.0)?;
            Ok(vec![modulus_experiment(&ModulusConfig {
                kind: ModulusKind::Local,
                kernel: KernelSpec::Fbmq { gamma, beta: 0.0 },
                alpha: 0.5,
                n_rep: rep_or(200),
                seed: seed_or(110),
                k_min: 8,
                k_max: 16,
                pts_per_octave: 8,
                base_point: 1.0,
                envelope: Some(EnvelopeFn::power_law((2.0 * c).sqrt(), gamma / 2.0)),
                corridor_lo: 0.0,
                corridor_hi: 1.25,
                horizon: 0.0,
                grid_points: 0,
            })?])
        }
        "uniform-bm" => Ok(vec![modulus_experiment(&ModulusConfig {
            kind: ModulusKind::Uniform,
            kernel: KernelSpec::BrownianHit0 { f: FnSpec::Zero, with_origin: false },
            alpha: 0.5,
            n_rep: rep_or(200),
            seed: seed_or(111),
            k_min: 3,
            k_max: 7,
            pts_per_octave: 1,
            base_point: 0.0,
            envelope: Some(EnvelopeFn::power_law(1.0, 0.5)),
            corridor_lo: 0.0,
            corridor_hi: 1.25,
            horizon: 0.0,
            grid_points: 512,
        })?]),
        "growth-expkilled" => {
            let lambda = 1.0f64;
            let scale = (lambda.exp() - 1.0) / lambda; // potential of 1_{[0,1]}
            Ok(vec![modulus_experiment(&ModulusConfig {
                kind: ModulusKind::Growth,
                kernel: KernelSpec::ExpKilled {
                    lambda,
                    f: FnSpec::ExpDecay { scale, rate: lambda },
                },
                alpha: 0.5,
                n_rep: rep_or(200),
                seed: seed_or(112),
                k_min: 2,
                k_max: 3,
                pts_per_octave: 1,
                base_point: 0.0,
                envelope: None,
                corridor_lo: 0.5,
                corridor_hi: 1.3,
                horizon: 1.0e4,
                grid_points: 1024,
            })?])
        }
        "sequence-expkilled" => Ok(vec![modulus_experiment(&ModulusConfig {
            kind: ModulusKind::Sequence,
            kernel: KernelSpec::ExpKilled { lambda: 1.0, f: FnSpec::Zero },
            alpha: 0.5,
            n_rep: rep_or(200),
            seed: seed_or(113),
            k_min: 2,
            k_max: 3,
            pts_per_octave: 1,
            base_point: 0.0,
            envelope: None,
            corridor_lo: 0.0,
            corridor_hi: 1.25,
            horizon: 0.0,
            grid_points: 20,
        })?]),
        "coupling-cuberoot" => Ok(vec![coupling_ratio_experiment(&CouplingConfig {
            f: FnSpec::Power { coeff: 1.0, expo: 1.0 / 3.0, offset: 0.0 },
            alpha: 1.0,
            t_grid: vec![1e-2, 1e-4, 1e-6],
            n_rep: rep_or(100_000),
            seed: seed_or(114),
        })?]),
        other => Err(Error::Parameter(format!(
            "unknown preset '{other}'; see `permanental list-presets`"
        ))),
    }
}
