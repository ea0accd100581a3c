//! What Rob's region-I detector counts in the Minkowski vacuum.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::basis::{Factor, Level};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::fock::{ModeState, Subsystem};
use crate::rindler::{build_rindler_vacuum, squeezing_r, SqueezingParams};

/// `⟨N_R⟩ = 2 sin²r`.
pub fn expected_number(p: &SqueezingParams) -> f64 {
    2.0 * p.r().sin().powi(2)
}

/// `⟨N_R⟩ = 2 / (e^{2πx} + 1)` with `x = ωc/a`.
pub fn expected_number_from_ratio(x: f64) -> Result<f64> {
    Ok(2.0 * fermi_dirac_occupancy(x)?)
}

/// Spinless Fermi-Dirac occupancy `1 / (e^{2πx} + 1)`.
pub fn fermi_dirac_occupancy(x: f64) -> Result<f64> {
    squeezing_r(x)?;
    Ok(1.0 / ((2.0 * PI * x).exp() + 1.0))
}

/// `Tr_I[(c†_↑c_↑ + c†_↓c_↓) ρ_R]` for a density matrix over region I alone.
pub fn number_operator_expectation(rho_r: &DensityMatrix) -> Result<f64> {
    if rho_r.basis().factors() != [Factor::RobI] {
        return Err(Error::Basis("expected a region-I density matrix".into()));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (i, levels) in rho_r.basis().states().iter().enumerate() {
        let Level::Mode(m) = levels[0] else {
            return Err(Error::Basis("region-I levels must be Fock modes".into()));
        };
        total += rho_r.matrix()[(i, i)] * f64::from(m.particle_count());
    }
    Ok(total.re)
}

/// Region-I state of the Minkowski vacuum (region IV traced out).
pub fn partial_vacuum(p: &SqueezingParams) -> Result<DensityMatrix> {
    DensityMatrix::from_pure_on(&build_rindler_vacuum(p), &[Subsystem::RobRegionI, Subsystem::RobRegionIV])?
        .partial_trace(&[Factor::RobI])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalReport {
    pub r: f64,
    pub expected_number: f64,
    /// `T/ω = 1/(2πx)` in natural units; infinite for `r = π/4`.
    pub temperature_scale: f64,
}

impl ThermalReport {
    pub fn new(p: &SqueezingParams) -> Self {
        // tan r = e^{-πx}  ⇒  x = −ln(tan r)/π
        let x = -p.r().tan().ln() / PI;
        ThermalReport {
            r: p.r(),
            expected_number: expected_number(p),
            temperature_scale: if x > f64::EPSILON { 1.0 / (2.0 * PI * x) } else { f64::INFINITY },
        }
    }
}

/// Occupation diagonal of a region-I state in {0, ↑, ↓, ↑↓} order.
pub fn occupation_diagonal(rho_r: &DensityMatrix) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for m in ModeState::ALL {
        let k = [Level::Mode(m)];
        out[m.index()] = rho_r.entry(&k, &k).ok_or_else(|| Error::Basis(format!("missing level {m}")))?.re;
    }
    Ok(out)
}
