//! Spectra of the squeezed-photon Jaynes-Cummings model and the symmetric and
//! asymmetric quantum Rabi models: closed forms, a truncated Fock-space
//! oracle to check them against, and the normal/superradiant phase map.

pub mod closed_form;
pub mod error;
pub mod oracle;
pub mod params;
pub mod phase;
pub mod validation;

pub use closed_form::{BogoliubovSolution, Branch, CriticalRoots, EnergyLevel, PhotonNumber, Region};
pub use error::{Error, Result};
pub use params::{ModelParams, QuadraticCoefficients, RabiParams};
