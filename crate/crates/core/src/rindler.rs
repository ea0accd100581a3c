//! Bogoliubov data for a uniformly accelerated observer and the Rindler
//! expansion of the Minkowski vacuum and one-particle states.
//!
//! Acceleration enters only through the squeezing parameter `r`, with
//! `tan r = exp(-π ω c / a)`. The Minkowski annihilator of spin `s` maps to
//!
//! ```text
//! a_s = cos r · c_{I,s} − e^{iφ} sin r · d†_{IV,−s}
//! ```
//!
//! and its adjoint gives the Minkowski creator.

use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    FockBasisState, ModeState, SignConvention, Slot, Spin, StateVector, Subsystem,
};

const R_EPS: f64 = 1e-12;

/// Squeezing angle `r` and Bogoliubov phase `φ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezingParams {
    r: f64,
    phi: f64,
}

impl SqueezingParams {
    /// `r` must lie in `[0, π/4]`.
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !r.is_finite() || !phi.is_finite() {
            return Err(Error::Domain(format!("non-finite squeezing parameters r={r}, φ={phi}")));
        }
        if !(-R_EPS..=FRAC_PI_4 + R_EPS).contains(&r) {
            return Err(Error::Domain(format!("r = {r} outside [0, π/4]")));
        }
        Ok(SqueezingParams { r: r.clamp(0.0, FRAC_PI_4), phi })
    }

    /// From the dimensionless group `x = ωc/a`.
    pub fn from_ratio(x: f64, phi: f64) -> Result<Self> {
        Self::new(squeezing_r(x)?, phi)
    }

    pub fn inertial() -> Self {
        SqueezingParams { r: 0.0, phi: 0.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn with_phi(self, phi: f64) -> Self {
        SqueezingParams { phi, ..self }
    }

    fn phase(&self, k: f64) -> Complex64 {
        Complex64::from_polar(1.0, k * self.phi)
    }
}

/// `r = arctan(e^{-πx})` for `x = ωc/a > 0`.
pub fn squeezing_r(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "ωc/a must be positive (got {x}); a ≤ 0 is not a uniformly accelerated observer"
        )));
    }
    Ok((-PI * x).exp().atan())
}

/// Amplitudes of the Rindler-expanded single-mode vacuum
/// `V|0,0⟩ + A|↑,↓⟩ + B|↓,↑⟩ + C|↑↓,↑↓⟩` (region I, region IV).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VacuumCoefficients {
    pub v: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl VacuumCoefficients {
    pub fn norm_sqr(&self) -> f64 {
        self.v.norm_sqr() + self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr()
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.v, self.a, self.b, self.c]
    }
}

pub fn vacuum_coefficients(p: &SqueezingParams) -> VacuumCoefficients {
    let (s, c) = p.r.sin_cos();
    VacuumCoefficients {
        v: Complex64::new(c * c, 0.0),
        a: p.phase(1.0) * (s * c),
        b: p.phase(1.0) * (s * c),
        c: p.phase(2.0) * (s * s),
    }
}

fn rob_ket(region_i: ModeState, region_iv: ModeState) -> FockBasisState {
    FockBasisState::from_modes(ModeState::Empty, region_i, region_iv)
}

/// The four region-I/IV kets spanned by the single-mode vacuum, in the
/// order matching [`VacuumCoefficients::as_array`].
pub fn vacuum_support() -> [FockBasisState; 4] {
    [
        rob_ket(ModeState::Empty, ModeState::Empty),
        rob_ket(ModeState::Up, ModeState::Down),
        rob_ket(ModeState::Down, ModeState::Up),
        rob_ket(ModeState::Pair, ModeState::Pair),
    ]
}

/// Minkowski vacuum of Rob's mode expressed over regions I and IV.
pub fn build_rindler_vacuum(p: &SqueezingParams) -> StateVector {
    let coeffs = vacuum_coefficients(p).as_array();
    StateVector::from_terms(vacuum_support().into_iter().zip(coeffs))
}

/// Minkowski one-particle state of spin `spin` in Rob's mode (closed form).
pub fn build_one_particle(p: &SqueezingParams, spin: Spin) -> StateVector {
    let (s, c) = p.r.sin_cos();
    let pair_amp = p.phase(1.0) * (s * spin.sign());
    StateVector::from_terms([
        (rob_ket(ModeState::single(spin), ModeState::Empty), Complex64::new(c, 0.0)),
        (rob_ket(ModeState::Pair, ModeState::single(spin)), pair_amp),
    ])
}

fn region_i(spin: Spin) -> Slot {
    Slot::new(Subsystem::RobRegionI, spin)
}

fn region_iv(spin: Spin) -> Slot {
    Slot::new(Subsystem::RobRegionIV, spin)
}

/// Applies `a_s = cos r · c_{I,s} − e^{iφ} sin r · d†_{IV,−s}` under `conv`.
pub fn minkowski_annihilation_with(
    conv: &SignConvention,
    p: &SqueezingParams,
    spin: Spin,
    state: &StateVector,
) -> StateVector {
    let (s, c) = p.r.sin_cos();
    let particle = conv.annihilate(state, region_i(spin));
    let antiparticle = conv.create(state, region_iv(spin.flip()));
    &(c * &particle) - &((p.phase(1.0) * s) * &antiparticle)
}

pub fn minkowski_annihilation(p: &SqueezingParams, spin: Spin, state: &StateVector) -> StateVector {
    minkowski_annihilation_with(&SignConvention::canonical(), p, spin, state)
}

/// Applies `a†_s = cos r · c†_{I,s} − e^{−iφ} sin r · d_{IV,−s}`.
pub fn minkowski_creation(p: &SqueezingParams, spin: Spin, state: &StateVector) -> StateVector {
    let conv = SignConvention::canonical();
    let (s, c) = p.r.sin_cos();
    let particle = conv.create(state, region_i(spin));
    let antiparticle = conv.annihilate(state, region_iv(spin.flip()));
    &(c * &particle) - &((p.phase(-1.0) * s) * &antiparticle)
}

/// Largest `‖a_s |ψ⟩‖` over both spins.
pub fn annihilation_residual(p: &SqueezingParams, state: &StateVector) -> f64 {
    Spin::ALL
        .iter()
        .map(|&s| minkowski_annihilation(p, s, state).norm())
        .fold(0.0, f64::max)
}

/// Finds the vacuum as the unit vector in the span of [`vacuum_support`]
/// annihilated by both Minkowski annihilators, with the `|0,0⟩` amplitude
/// made real and positive.
pub fn solve_vacuum_numerically(p: &SqueezingParams) -> Result<StateVector> {
    solve_vacuum_numerically_with(&SignConvention::canonical(), p)
}

pub fn solve_vacuum_numerically_with(conv: &SignConvention, p: &SqueezingParams) -> Result<StateVector> {
    let support = vacuum_support();
    let rows = 2 * FockBasisState::COUNT;
    let mut system = DMatrix::<Complex64>::zeros(rows, support.len());
    for (col, &ket) in support.iter().enumerate() {
        for (k, &spin) in Spin::ALL.iter().enumerate() {
            let image = minkowski_annihilation_with(conv, p, spin, &StateVector::basis(ket));
            for (b, amp) in image.iter() {
                system[(k * FockBasisState::COUNT + b.bits() as usize, col)] = amp;
            }
        }
    }

    let svd = system.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("right singular vectors requested");
    let null: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] < 1e-9)
        .collect();
    if null.len() != 1 {
        return Err(Error::Nullspace(null.len()));
    }
    // v_t holds V^H, so the null vector is the conjugated row.
    let coeffs: Vec<Complex64> = v_t.row(null[0]).iter().map(|z| z.conj()).collect();
    let anchor = coeffs[0];
    if anchor.norm() < 1e-12 {
        return Err(Error::Domain("vacuum amplitude vanishes; phase cannot be fixed".into()));
    }
    let fix = anchor.conj() / anchor.norm();
    StateVector::from_terms(support.into_iter().zip(coeffs.into_iter().map(|z| z * fix))).normalize()
}

/// Ordered `m`-tuples of pairwise-distinct (spin, mode) labels over `n` modes,
/// counted by explicit enumeration.
pub fn upsilon_enumerated(n: usize, m: usize) -> Result<u128> {
    check_upsilon_args(n, m)?;
    fn extend(used: &mut Vec<bool>, depth: usize) -> u128 {
        if depth == 0 {
            return 1;
        }
        let mut total = 0;
        for label in 0..used.len() {
            // ξ vanishes as soon as two entries coincide
            if used[label] {
                continue;
            }
            used[label] = true;
            total += extend(used, depth - 1);
            used[label] = false;
        }
        total
    }
    Ok(extend(&mut vec![false; 2 * n], m))
}

/// Falling factorial `(2n)(2n−1)…(2n−m+1)`.
pub fn upsilon_formula(n: usize, m: usize) -> Result<u128> {
    check_upsilon_args(n, m)?;
    let top = 2 * n as u128;
    (0..m as u128).try_fold(1u128, |acc, k| {
        acc.checked_mul(top - k).ok_or_else(|| Error::Overflow(format!("Υ({n}, {m})")))
    })
}

/// Pauli-weighted tuple count Υ_m for `n` modes; `Υ_0 = 1`.
pub fn upsilon(n: usize, m: usize) -> Result<u128> {
    if n <= 4 {
        upsilon_enumerated(n, m)
    } else {
        upsilon_formula(n, m)
    }
}

fn check_upsilon_args(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("mode count must be at least 1".into()));
    }
    if m > 2 * n {
        return Err(Error::Domain(format!("pair count {m} exceeds 2n = {}", 2 * n)));
    }
    Ok(())
}

fn upsilon_f64(n: usize, m: usize) -> f64 {
    let top = 2.0 * n as f64;
    (0..m).map(|k| top - k as f64).product()
}

/// Vacuum normalization `C⁰` for `n` populated modes.
pub fn multimode_c0(n: usize, r: f64) -> Result<f64> {
    check_upsilon_args(n, 0)?;
    let p = SqueezingParams::new(r, 0.0)?;
    let t2 = p.r.tan().powi(2);
    let low: f64 = (0..=n).map(|m| upsilon_f64(n, m) * t2.powi(m as i32)).sum();
    let high: f64 = (n + 1..=2 * n)
        .map(|m| upsilon_f64(n, 2 * n - m) * t2.powi(m as i32))
        .sum();
    Ok((low + high).powf(-0.5))
}

/// Coefficient `C^m = C⁰ e^{imφ} tan^m r / m!` of the `m`-pair sector.
pub fn multimode_cm(n: usize, m: usize, r: f64, phi: f64) -> Result<Complex64> {
    check_upsilon_args(n, m)?;
    let c0 = multimode_c0(n, r)?;
    let factorial: f64 = (1..=m).map(|k| k as f64).product();
    let mag = c0 * r.tan().powi(m as i32) / factorial;
    Ok(Complex64::from_polar(mag, m as f64 * phi))
}
