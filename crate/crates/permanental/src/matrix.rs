//! Finite-dimensional linear algebra: the determinant Laplace-transform
//! oracle `E e^{-⟨s,X⟩} = |I + US|^{-α}`, inverse-M-matrix admissibility,
//! the rebirthing construction, and the bordered-matrix closed-form inverse.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{KernelSpec, PairKernel};

/// The object all samplers and oracles consume: a shape `α` together with a
/// kernel, either a named family restricted to `points` or an explicit matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermanentalSpec {
    pub alpha: f64,
    pub kernel: KernelSource,
    #[serde(default)]
    pub points: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelSource {
    Spec(KernelSpec),
    Matrix(Vec<Vec<f64>>),
}

impl PermanentalSpec {
    pub fn from_kernel(alpha: f64, kernel: KernelSpec, points: Vec<f64>) -> Self {
        PermanentalSpec { alpha, kernel: KernelSource::Spec(kernel), points }
    }

    pub fn from_matrix(alpha: f64, matrix: Vec<Vec<f64>>) -> Self {
        let n = matrix.len();
        PermanentalSpec {
            alpha,
            kernel: KernelSource::Matrix(matrix),
            points: (0..n).map(|i| i as f64).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::Parameter(format!("shape must satisfy α > 0, got {}", self.alpha)));
        }
        if self.dim() == 0 {
            return Err(Error::Parameter("at least one evaluation point is required".into()));
        }
        if let KernelSource::Spec(k) = &self.kernel {
            k.validate()?;
        }
        let u = self.kernel_matrix()?;
        for i in 0..u.nrows() {
            if u[(i, i)] < 0.0 {
                return Err(Error::InvalidKernel(format!("diagonal entry u({i},{i}) = {} < 0", u[(i, i)])));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match &self.kernel {
            KernelSource::Spec(_) => self.points.len(),
            KernelSource::Matrix(m) => m.len(),
        }
    }

    /// The kernel restricted to the evaluation points, as a dense matrix.
    pub fn kernel_matrix(&self) -> Result<DMatrix<f64>> {
        match &self.kernel {
            KernelSource::Matrix(rows) => {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Parameter("explicit kernel matrix must be square".into()));
                }
                Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
            }
            KernelSource::Spec(k) => {
                let n = self.points.len();
                let mut m = DMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = k.eval(self.points[i], self.points[j])?;
                    }
                }
                Ok(m)
            }
        }
    }

    pub fn summary(&self) -> String {
        let kind = match &self.kernel {
            KernelSource::Spec(k) => format!("{k:?}"),
            KernelSource::Matrix(m) => format!("explicit {}x{} matrix", m.len(), m.len()),
        };
        format!("alpha={}, n={}, kernel={}", self.alpha, self.dim(), kind)
    }

    /// Reduce two coordinates to their symmetric 2×2 pair kernel.
    pub fn pair(&self, i: usize, j: usize) -> Result<PairKernel> {
        let u = self.kernel_matrix()?;
        let n = u.nrows();
        if i >= n || j >= n {
            return Err(Error::Domain(format!("pair indices ({i},{j}) out of range for n = {n}")));
        }
        let prod = u[(i, j)] * u[(j, i)];
        if prod < -1e-12 * (u[(i, i)] * u[(j, j)]).abs().max(1e-300) {
            return Err(Error::Invariant(format!("u({i},{j})u({j},{i}) = {prod} < 0")));
        }
        PairKernel::new(u[(i, i)], u[(j, j)], prod.max(0.0).sqrt())
    }
}

/// Sign and log-magnitude of a determinant via partially pivoted LU.
/// Keeping the product in log space avoids over/underflow on long diagonals.
fn lu_logdet(mut m: DMatrix<f64>) -> (f64, f64) {
    let n = m.nrows();
    let mut sign = 1.0f64;
    let mut logabs = 0.0f64;
    for k in 0..n {
        let mut p = k;
        let mut best = m[(k, k)].abs();
        for r in k + 1..n {
            let v = m[(r, k)].abs();
            if v > best {
                best = v;
                p = r;
            }
        }
        if best == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        if p != k {
            m.swap_rows(p, k);
            sign = -sign;
        }
        let piv = m[(k, k)];
        sign *= piv.signum();
        logabs += piv.abs().ln();
        for r in k + 1..n {
            let factor = m[(r, k)] / piv;
            for c in k + 1..n {
                m[(r, c)] -= factor * m[(k, c)];
            }
        }
    }
    (sign, logabs)
}

/// Ground-truth oracle: `|I + U diag(s)|^{-α}` for `s ≥ 0` componentwise.
pub fn laplace_transform(spec: &PermanentalSpec, s: &[f64]) -> Result<f64> {
    let u = spec.kernel_matrix()?;
    let n = u.nrows();
    if s.len() != n {
        return Err(Error::Parameter(format!("argument has {} entries, kernel has {n}", s.len())));
    }
    if s.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::Domain("Laplace argument must be componentwise nonnegative".into()));
    }
    let mut m = DMatrix::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] += u[(i, j)] * s[j];
        }
    }
    let (sign, logabs) = lu_logdet(m);
    if sign <= 0.0 || !logabs.is_finite() {
        return Err(Error::InvalidKernel(format!(
            "|I + US| is not positive (sign {sign}); the spec is not permanental-consistent at this argument"
        )));
    }
    Ok((-spec.alpha * logabs).exp())
}

/// Off-diagonal signs and row sums of `U^{-1}`; a nonpositive off-diagonal
/// with positive row sums certifies `U` as the potential of a transient
/// chain, hence as a permanental kernel for every `α > 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub inverse_exists: bool,
    pub offdiag_nonpositive: bool,
    pub row_sums_positive: bool,
    /// Largest off-diagonal entry of the inverse (want ≤ 0).
    pub worst_entry: f64,
    /// Smallest row sum of the inverse (want > 0).
    pub worst_row_sum: f64,
}

/// Absolute sign tolerance; kernel entries are O(1) in every shipped preset.
pub const SIGN_TOL: f64 = 1e-10;

impl AdmissibilityReport {
    pub fn pass(&self) -> bool {
        self.inverse_exists && self.offdiag_nonpositive && self.row_sums_positive
    }
}

pub fn mmatrix_admissible(u: &DMatrix<f64>) -> Result<AdmissibilityReport> {
    if u.nrows() != u.ncols() {
        return Err(Error::Parameter("admissibility check needs a square matrix".into()));
    }
    let inv = u
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular("kernel matrix is numerically singular".into()))?;
    if inv.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular("inverse has non-finite entries".into()));
    }
    let n = inv.nrows();
    let mut worst_entry = f64::NEG_INFINITY;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst_entry = worst_entry.max(inv[(i, j)]);
            }
        }
    }
    if n == 1 {
        worst_entry = 0.0;
    }
    let worst_row_sum = (0..n)
        .map(|i| (0..n).map(|j| inv[(i, j)]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    Ok(AdmissibilityReport {
        inverse_exists: true,
        offdiag_nonpositive: worst_entry <= SIGN_TOL,
        row_sums_positive: worst_row_sum > SIGN_TOL,
        worst_entry,
        worst_row_sum,
    })
}

/// Rebirthed potential: adjoin the revival point `*` (index 0) to a finite
/// Green matrix, shifting the interior by the rank-one term `1 fᵀ` with
/// `f = μᵀU`, unit `*` row/column occupation.
#[derive(Clone, Debug)]
pub struct RebirthKernel {
    /// `(n+1)×(n+1)` kernel with `*` at index 0.
    pub matrix: DMatrix<f64>,
    /// Left potential `f(y) = Σ_x μ(x) u(x,y)`.
    pub f: Vec<f64>,
    /// Total mass of the rebirth measure μ.
    pub rebirth_mass: f64,
}

pub fn rebirth_kernel(u: &DMatrix<f64>, mu: &[f64]) -> Result<RebirthKernel> {
    let n = u.nrows();
    if mu.len() != n {
        return Err(Error::Parameter(format!("measure has {} entries, potential has {n}", mu.len())));
    }
    if mu.iter().any(|&m| m < 0.0 || !m.is_finite()) {
        return Err(Error::Parameter("rebirth measure must be nonnegative and finite".into()));
    }
    let adm = mmatrix_admissible(u)?;
    if !adm.pass() {
        return Err(Error::InvalidPotential(format!(
            "base matrix fails the inverse-M-matrix test (worst off-diagonal {:.3e}, worst row sum {:.3e})",
            adm.worst_entry, adm.worst_row_sum
        )));
    }
    let f: Vec<f64> = (0..n).map(|y| (0..n).map(|x| mu[x] * u[(x, y)]).sum()).collect();
    let mut m = DMatrix::zeros(n + 1, n + 1);
    m[(0, 0)] = 1.0;
    for y in 0..n {
        m[(0, y + 1)] = f[y];
    }
    for x in 0..n {
        m[(x + 1, 0)] = 1.0;
        for y in 0..n {
            m[(x + 1, y + 1)] = u[(x, y)] + f[y];
        }
    }
    Ok(RebirthKernel { matrix: m, f, rebirth_mass: mu.iter().sum() })
}

/// The bordered matrix `U_f`: first row `(1, f)`, first column ones,
/// interior `U + 1 fᵀ`.
pub fn bordered_matrix(u: &DMatrix<f64>, f: &[f64]) -> Result<DMatrix<f64>> {
    let n = u.nrows();
    if f.len() != n {
        return Err(Error::Parameter(format!("f has {} entries, matrix has {n}", f.len())));
    }
    let mut m = DMatrix::zeros(n + 1, n + 1);
    m[(0, 0)] = 1.0;
    for y in 0..n {
        m[(0, y + 1)] = f[y];
    }
    for x in 0..n {
        m[(x + 1, 0)] = 1.0;
        for y in 0..n {
            m[(x + 1, y + 1)] = u[(x, y)] + f[y];
        }
    }
    Ok(m)
}

/// Closed-form inverse of the bordered matrix:
///
/// ```text
/// U_f^{-1} = [ 1+ρ   -(fᵀU^{-1})        ]    ρ = Σ_{i,j} f(i) (U^{-1})_{ij}
///            [ -rowsums(U^{-1})   U^{-1} ]
/// ```
pub fn augmented_inverse(u: &DMatrix<f64>, f: &[f64]) -> Result<DMatrix<f64>> {
    let n = u.nrows();
    if f.len() != n {
        return Err(Error::Parameter(format!("f has {} entries, matrix has {n}", f.len())));
    }
    let inv = u
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular("base matrix is numerically singular".into()))?;
    let ft_inv: Vec<f64> = (0..n).map(|j| (0..n).map(|i| f[i] * inv[(i, j)]).sum()).collect();
    let schur_rho: f64 = ft_inv.iter().sum();
    let mut m = DMatrix::zeros(n + 1, n + 1);
    m[(0, 0)] = 1.0 + schur_rho;
    for k in 0..n {
        m[(0, k + 1)] = -ft_inv[k];
    }
    for j in 0..n {
        m[(j + 1, 0)] = -(0..n).map(|k| inv[(j, k)]).sum::<f64>();
        for k in 0..n {
            m[(j + 1, k + 1)] = inv[(j, k)];
        }
    }
    Ok(m)
}

/// `{s_i ∧ s_j}` for an increasing sequence of levels.
pub fn min_matrix(levels: &[f64]) -> DMatrix<f64> {
    let n = levels.len();
    DMatrix::from_fn(n, n, |i, j| levels[i].min(levels[j]))
}
