//! Entanglement of spin-1/2 Dirac field modes shared between an inertial
//! observer (Alice) and a uniformly accelerated observer (Rob).
//!
//! The crate works in the single-mode setting: Alice holds one Minkowski
//! mode, Rob's mode is expanded over Rindler regions I and IV through the
//! fermionic Bogoliubov transformation, and region IV is traced out.
//!
//! Layers, bottom-up:
//!
//! - [`fock`]: exact fermionic occupation basis with anticommuting operators.
//! - [`rindler`]: squeezing parameter, Rindler-expanded vacuum and one-particle
//!   states, multimode normalization combinatorics.
//! - [`density`]: label-carrying density matrices, partial trace/transpose,
//!   spectra and entropies.
//! - [`entanglement`]: state families, negativity and mutual information.
//! - [`spintrace`]: occupation-number/total-spin basis and spin erasure.
//! - [`unruh`]: thermal occupancy seen by the accelerated observer.
//! - [`verify`]: closed-form versus numeric oracle suite.
//!
//! Natural units (ħ = c = k_B = 1) throughout. The squeezing parameter `r`
//! runs from 0 (inertial) to π/4 (infinite acceleration).

pub mod basis;
pub mod density;
pub mod entanglement;
mod error;
pub mod fock;
pub mod rindler;
pub mod spintrace;
pub mod unruh;
pub mod verify;

pub use basis::{Basis, Factor, Level};
pub use density::DensityMatrix;
pub use entanglement::{BellKind, EntanglementReport, SpinPair, StateParams};
pub use error::{Error, Result};
pub use fock::{FockBasisState, ModeState, SignConvention, Slot, Spin, StateVector, Subsystem};
pub use rindler::{SqueezingParams, VacuumCoefficients};
pub use spintrace::{OccupationSpinElement, TotalSpin};
pub use unruh::ThermalReport;

pub use num_complex::Complex64;
