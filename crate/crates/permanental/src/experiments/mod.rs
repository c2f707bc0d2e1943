//! Seeded Monte Carlo studies that confront samples with the theory at
//! desk scale and emit structured reports.

pub mod coupling;
pub mod density;
pub mod laplace;
pub mod modulus;
pub mod presets;
pub mod rebirth;
pub(crate) mod stats;
pub mod tail;

pub use coupling::{coupling_ratio_experiment, CouplingConfig};
pub use density::{density_coherence_experiment, DensityConfig};
pub use laplace::{verify_laplace, LaplaceConfig};
pub use modulus::{modulus_experiment, ModulusConfig, ModulusKind};
pub use rebirth::{rebirth_green_experiment, RebirthConfig};
pub use tail::{verify_tail, TailConfig};
