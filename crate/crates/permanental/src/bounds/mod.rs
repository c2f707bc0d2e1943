//! Tail inequalities, Orlicz constants, chaining, entropy integrals and
//! modulus envelopes.

mod audit;
pub mod calibration;
mod chaining;
mod entropy;
mod envelope;
mod orlicz;
mod tail;

pub use audit::{kernel_inequality_audit, lower_bound_conditions, LowerBoundConditions};
pub use calibration::{c_alpha, calibrate, CalibrationTable};
pub use chaining::{chaining_tail_bound, ChainingBound, ChainingParams};
pub use entropy::entropy_integral_j;
pub use envelope::{envelope_eval, EnvelopeKind};
pub use orlicz::{empirical_psi2_norm, orlicz_psi2_const, orlicz_residual};
pub use tail::{marginal_tail_bounds, sqrt_increment_tail_bound, MarginalTail};
