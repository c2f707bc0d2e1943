//! Half-integer-shape fields via Gaussian squares, and the grid dispatcher.
//!
//! For `α = k/2` with symmetric PSD kernel `u`, the field
//! `Σ_{i=1..k} G_i(t)²/2` with i.i.d. mean-zero Gaussian vectors of
//! covariance `u` has exactly the target law. Covariance factorization goes
//! through a symmetric eigendecomposition with eigenvalue clipping: grid
//! covariances of `s∧t` kernels are near-singular for fine grids, so small
//! negative eigenvalues are zeroed and anything genuinely negative is
//! rejected.

use nalgebra::DMatrix;
use rayon::prelude::*;

use rand_distr::{Distribution, StandardNormal};

use super::rng::{replicate_rng, SamplerId};
use super::{sample_bivariate, SampleBatch};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::matrix::PermanentalSpec;

/// Square root `A` with `A Aᵀ = u` for a symmetric PSD matrix.
pub fn factor_psd(u: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = u.nrows();
    let scale = u.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for i in 0..n {
        for j in 0..i {
            if (u[(i, j)] - u[(j, i)]).abs() > 1e-10 * scale {
                return Err(Error::Domain(format!(
                    "kernel matrix is not symmetric at ({i},{j}): {} vs {}",
                    u[(i, j)],
                    u[(j, i)]
                )));
            }
        }
    }
    let sym = DMatrix::from_fn(n, n, |i, j| 0.5 * (u[(i, j)] + u[(j, i)]));
    let eig = sym.symmetric_eigen();
    let max_ev = eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v));
    let tol = 1e-10 * max_ev.max(1.0);
    let mut a = eig.eigenvectors;
    for (c, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev < -tol {
            return Err(Error::NotPsd(format!("eigenvalue {ev} below the clipping tolerance -{tol:.1e}")));
        }
        let s = ev.max(0.0).sqrt();
        for r in 0..n {
            a[(r, c)] *= s;
        }
    }
    Ok(a)
}

fn halfint_rows(
    factor: &DMatrix<f64>,
    k: u32,
    n_rep: usize,
    seed: u64,
    sampler: SamplerId,
) -> Vec<Vec<f64>> {
    let n = factor.nrows();
    (0..n_rep as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(seed, sampler, r);
            let mut x = vec![0.0f64; n];
            for _ in 0..k {
                let z: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                for row in 0..n {
                    let mut g = 0.0;
                    for c in 0..n {
                        g += factor[(row, c)] * z[c];
                    }
                    x[row] += 0.5 * g * g;
                }
            }
            x
        })
        .collect()
}

/// Exact draws of the `α = k/2` field on `points`.
pub fn sample_halfint_field(
    kernel: &KernelSpec,
    k: u32,
    points: &[f64],
    n_rep: usize,
    seed: u64,
) -> Result<SampleBatch> {
    if k < 1 {
        return Err(Error::Parameter("the Gaussian-square route needs k ≥ 1 copies".into()));
    }
    if points.is_empty() || n_rep == 0 {
        return Err(Error::Parameter("need at least one point and one replicate".into()));
    }
    let n = points.len();
    let mut u = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            u[(i, j)] = kernel.eval(points[i], points[j])?;
        }
    }
    let a = factor_psd(&u)?;
    let rows = halfint_rows(&a, k, n_rep, seed, SamplerId::HalfIntField);
    Ok(SampleBatch::from_rows(points.to_vec(), rows, seed, SamplerId::HalfIntField))
}

/// Grid-restriction dispatcher: routes a spec to whichever exact sampler
/// covers it, and refuses configurations that have none.
pub fn sample_path_grid(spec: &PermanentalSpec, n_rep: usize, seed: u64) -> Result<SampleBatch> {
    spec.validate()?;
    let n = spec.dim();
    let u = spec.kernel_matrix()?;
    if n == 1 {
        let b = super::sample_gamma(spec.alpha, 1.0, n_rep, seed)?;
        let scale = u[(0, 0)];
        let rows: Vec<Vec<f64>> = (0..n_rep).map(|r| vec![scale * b.row(r)[0]]).collect();
        return Ok(SampleBatch::from_rows(spec.points.clone(), rows, seed, SamplerId::PathGrid));
    }
    if n == 2 {
        let pair = spec.pair(0, 1)?;
        let b = sample_bivariate(&pair, spec.alpha, n_rep, seed)?;
        return Ok(SampleBatch {
            points: spec.points.clone(),
            draws: b.draws,
            n_rep: b.n_rep,
            seed,
            sampler_id: SamplerId::Bivariate,
        });
    }
    let two_alpha = 2.0 * spec.alpha;
    let k = two_alpha.round();
    if (two_alpha - k).abs() > 1e-9 || k < 1.0 {
        return Err(Error::Capability(format!(
            "no exact sampler for α = {} on {n} points; supported regimes: any α > 0 on 1 or 2 points, \
             or half-integer α = k/2 with a symmetric PSD kernel on any grid",
            spec.alpha
        )));
    }
    let a = factor_psd(&u)?;
    let rows = halfint_rows(&a, k as u32, n_rep, seed, SamplerId::PathGrid);
    Ok(SampleBatch::from_rows(spec.points.clone(), rows, seed, SamplerId::PathGrid))
}
