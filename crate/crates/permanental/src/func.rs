//! Serializable closed-form callbacks.
//!
//! Kernels like `e^{-λ|s-t|} + f(t)` and `s∧t + f(t)` take a user function
//! `f`. To keep kernel specs pure data (JSON round-trippable, hashable for
//! reproducible runs) `f` is restricted to a small registry of closed forms
//! that covers every shape used by the experiments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A scalar function `t ↦ f(t)` from the closed-form registry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FnSpec {
    Zero,
    Const { c: f64 },
    /// `scale · exp(-rate · t)`
    ExpDecay { scale: f64, rate: f64 },
    /// `coeff · t^expo + offset`
    Power { coeff: f64, expo: f64, offset: f64 },
}

impl FnSpec {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            FnSpec::Zero => 0.0,
            FnSpec::Const { c } => *c,
            FnSpec::ExpDecay { scale, rate } => scale * (-rate * t).exp(),
            FnSpec::Power { coeff, expo, offset } => coeff * t.powf(*expo) + offset,
        }
    }

    /// Spot-check `f ≥ 0` and concavity (second differences ≤ tol) on a
    /// 64-point grid over `[lo, hi]`. The conditions are analytic, not
    /// finitely checkable; the caller certifies the rest.
    pub fn check_positive_concave(&self, lo: f64, hi: f64) -> Result<()> {
        let n = 64usize;
        let step = (hi - lo) / (n as f64 - 1.0);
        let vals: Vec<f64> = (0..n).map(|i| self.eval(lo + step * i as f64)).collect();
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (i, v) in vals.iter().enumerate() {
            if *v < -1e-12 * scale {
                return Err(Error::Parameter(format!(
                    "f must be nonnegative; f({}) = {v}",
                    lo + step * i as f64
                )));
            }
        }
        for i in 1..n - 1 {
            let dd = vals[i + 1] - 2.0 * vals[i] + vals[i - 1];
            if dd > 1e-9 * scale.max(step * step) {
                return Err(Error::Parameter(format!(
                    "f fails the concavity spot-check near t = {}",
                    lo + step * i as f64
                )));
            }
        }
        Ok(())
    }

    /// Spot-check `f ≥ 0` and `f'' ≤ λ² f` (excessivity for exponentially
    /// killed Brownian motion) by central differences on a 64-point grid.
    pub fn check_excessive(&self, lambda: f64, lo: f64, hi: f64) -> Result<()> {
        let n = 64usize;
        let step = (hi - lo) / (n as f64 - 1.0);
        let vals: Vec<f64> = (0..n).map(|i| self.eval(lo + step * i as f64)).collect();
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for v in &vals {
            if *v < -1e-12 * scale {
                return Err(Error::Parameter("f must be nonnegative".into()));
            }
        }
        for i in 1..n - 1 {
            let fpp = (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) / (step * step);
            if fpp > lambda * lambda * vals[i] + 1e-6 * scale {
                return Err(Error::Parameter(format!(
                    "f fails the excessivity spot-check (f'' ≤ λ²f) near t = {}",
                    lo + step * i as f64
                )));
            }
        }
        Ok(())
    }
}

/// An integer-indexed sequence `j ↦ a_j` from the closed-form registry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeqSpec {
    Const { c: f64 },
    /// `a · r^j`
    Geometric { a: f64, r: f64 },
    /// `1 - a · r^j`
    OneMinusGeometric { a: f64, r: f64 },
}

impl SeqSpec {
    pub fn eval(&self, j: usize) -> f64 {
        match self {
            SeqSpec::Const { c } => *c,
            SeqSpec::Geometric { a, r } => a * r.powi(j as i32),
            SeqSpec::OneMinusGeometric { a, r } => 1.0 - a * r.powi(j as i32),
        }
    }
}

/// Envelope `φ` majorizing a sigma function: `σ(s,t) ≤ φ(|t-s|)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeFn {
    pub shape: EnvelopeShape,
    /// Declared regular-variation index at zero, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rv_index: Option<f64>,
    #[serde(default = "default_true")]
    pub monotone: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EnvelopeShape {
    Zero,
    /// `coeff · h^expo`
    PowerLaw { coeff: f64, expo: f64 },
    /// `(log 1/h)^{-gamma}`
    LogPower { gamma: f64 },
}

impl EnvelopeFn {
    pub fn power_law(coeff: f64, expo: f64) -> Self {
        EnvelopeFn { shape: EnvelopeShape::PowerLaw { coeff, expo }, rv_index: Some(expo), monotone: true }
    }

    pub fn log_power(gamma: f64) -> Self {
        EnvelopeFn { shape: EnvelopeShape::LogPower { gamma }, rv_index: Some(0.0), monotone: true }
    }

    pub fn zero() -> Self {
        EnvelopeFn { shape: EnvelopeShape::Zero, rv_index: None, monotone: true }
    }

    pub fn eval(&self, h: f64) -> f64 {
        match &self.shape {
            EnvelopeShape::Zero => 0.0,
            EnvelopeShape::PowerLaw { coeff, expo } => coeff * h.powf(*expo),
            EnvelopeShape::LogPower { gamma } => {
                if h <= 0.0 || h >= 1.0 {
                    f64::NAN
                } else {
                    (1.0 / h).ln().powf(-gamma)
                }
            }
        }
    }
}
