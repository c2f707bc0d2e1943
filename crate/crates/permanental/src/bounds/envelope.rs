//! Modulus envelopes built from a sigma-majorant `φ`.
//!
//! Three shapes share the log-singular integral
//! `∫ φ(·u)/(u (log 1/u)^{1/2}) du`:
//!
//! * local:    `τ(h)  = φ(h)(loglog 1/h)^{1/2} + (1/log 2) ∫_0^{1/2} φ(hu)/(u(log 1/u)^{1/2}) du`
//! * infinity: `τ̃(T)  = φ(T)(loglog T)^{1/2}  + (1/log 2) ∫_0^{1/2} φ(Tu)/(u(log 1/u)^{1/2}) du`
//! * theta:    `Θ(h)  = ∫_0^{h²} φ(u)/(u(log 1/u)^{1/2}) du + φ(h)(log 1/h)^{1/2}`
//!
//! Scales too close to `e^{-e}` (where `loglog` loses meaning) are rejected
//! with a domain error, never silently clipped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::EnvelopeFn;
use crate::quad::integrate_log_singular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnvelopeKind {
    TauLocal,
    TauInfinity,
    Theta,
}

const LOGLOG_EDGE: f64 = 0.065_988_035_845_312_54; // e^{-e}

pub fn envelope_eval(kind: EnvelopeKind, phi: &EnvelopeFn, h: f64) -> Result<f64> {
    match kind {
        EnvelopeKind::TauLocal => {
            if !(h > 0.0 && h < LOGLOG_EDGE) {
                return Err(Error::Domain(format!("local scale must lie in (0, e^{{-e}}), got {h}")));
            }
            let head = phi.eval(h) * (1.0 / h).ln().ln().sqrt();
            let integral = integrate_log_singular(&|u: f64| phi.eval(h * u), 0.5, 1e-8)?;
            Ok(head + integral / 2.0f64.ln())
        }
        EnvelopeKind::TauInfinity => {
            if !(h > std::f64::consts::E) {
                return Err(Error::Domain(format!("horizon must exceed e, got {h}")));
            }
            let head = phi.eval(h) * h.ln().ln().sqrt();
            let integral = integrate_log_singular(&|u: f64| phi.eval(h * u), 0.5, 1e-8)?;
            Ok(head + integral / 2.0f64.ln())
        }
        EnvelopeKind::Theta => {
            if !(h > 0.0 && h < LOGLOG_EDGE) {
                return Err(Error::Domain(format!("scale must lie in (0, e^{{-e}}), got {h}")));
            }
            let integral = integrate_log_singular(&|u: f64| phi.eval(u), h * h, 1e-8)?;
            Ok(integral + phi.eval(h) * (1.0 / h).ln().sqrt())
        }
    }
}
