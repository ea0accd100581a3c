//! Closed-form versus numeric oracle suite.
//!
//! Each check evaluates a closed-form identity and the corresponding
//! numeric pipeline on a fixed grid and records the largest discrepancy.
//! Only the vacuum checks depend on the operator ordering convention, which
//! lets a permuted convention be injected to confirm the suite notices.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::basis::Factor;
use crate::density::{partial_trace_region_iv_closed_form, MinkowskiProjector, PairState};
use crate::entanglement::{
    bell_rho_ar, build_general_rho_ar, closed_form_bell_pt_spectrum, closed_form_general_rho_ar,
    closed_form_mode_pt_spectrum, mode_entangled_rho_ar, mutual_information, negativity, numeric_region_iv_term,
    pt_spectrum, BellKind, SpinPair, StateParams,
};
use crate::error::Result;
use crate::fock::{FockBasisState, SignConvention, Slot, StateVector};
use crate::rindler::{
    build_one_particle, build_rindler_vacuum, minkowski_annihilation_with, minkowski_creation,
    multimode_c0, multimode_cm, solve_vacuum_numerically_with, upsilon_enumerated, upsilon_formula,
    vacuum_coefficients, SqueezingParams,
};
use crate::spintrace::{
    closed_form_occupation_rho, numeric_occupation_negativity, occupation_coherence_01_12,
    occupation_negativity, occupation_pt_spectrum, occupation_rho,
};
use crate::unruh::{expected_number, expected_number_from_ratio, number_operator_expectation, partial_vacuum};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_error: f64,
    pub passed: bool,
    /// Error message when the numeric side failed outright.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_error(&self) -> f64 {
        self.checks.iter().map(|c| c.max_error).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn r_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| FRAC_PI_4 * i as f64 / (n - 1) as f64).collect()
}

const PHI_GRID: [f64; 4] = [0.0, 0.7, PI / 2.0, 2.1];

fn max_spectrum_gap(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Fixed, varied coefficient sets covering complex phases and the μ = 0 edge.
fn sample_params() -> Vec<StateParams> {
    let c = Complex64::new;
    vec![
        StateParams::new(c(0.3, 0.1), c(-0.2, 0.4), c(0.0, 0.3), c(0.1, 0.0)),
        StateParams::new(c(0.0, 0.0), c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.0)),
        StateParams::new(c(0.5, -0.5), c(0.0, 0.0), c(0.1, 0.2), c(-0.3, 0.3)),
        StateParams::new(c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)),
        StateParams::new(c(0.05, 0.0), c(0.0, -0.6), c(0.2, 0.1), c(0.0, 0.0)),
    ]
    .into_iter()
    .map(|p| p.expect("sample coefficients are valid"))
    .collect()
}

fn check(name: &'static str, tol: f64, body: impl FnOnce() -> Result<f64>) -> CheckResult {
    match body() {
        Ok(err) => CheckResult { name, max_error: err.abs(), passed: err.is_finite() && err.abs() < tol, detail: None },
        Err(e) => CheckResult { name, max_error: f64::INFINITY, passed: false, detail: Some(e.to_string()) },
    }
}

fn grid_max(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0, |acc: f64, v| Ok(acc.max(v?)))
}

fn params(r: f64, phi: f64) -> Result<SqueezingParams> {
    SqueezingParams::new(r, phi)
}

/// Runs every oracle with the given operator ordering.
pub fn run_checks(conv: &SignConvention, tol: f64) -> VerifyReport {
    let rs = r_grid(8);
    let mut checks = Vec::new();

    checks.push(check("fock.anticommutators", tol, || {
        let mut worst: f64 = 0.0;
        for ket in FockBasisState::all() {
            let v = StateVector::basis(ket);
            for a in Slot::ALL {
                for b in Slot::ALL {
                    let ab = conv.annihilate(&conv.create(&v, b), a);
                    let ba = conv.create(&conv.annihilate(&v, a), b);
                    let mut expected = StateVector::zero();
                    if a == b {
                        expected = v.clone();
                    }
                    worst = worst.max((&ab + &ba).max_abs_diff(&expected));
                }
            }
        }
        Ok(worst)
    }));

    checks.push(check("rindler.vacuum_nullspace", tol, || {
        grid_max(rs.iter().flat_map(|&r| {
            PHI_GRID.iter().map(move |&phi| {
                let p = params(r, phi)?;
                let numeric = solve_vacuum_numerically_with(conv, &p)?;
                Ok(numeric.max_abs_diff(&build_rindler_vacuum(&p)))
            })
        }))
    }));

    checks.push(check("rindler.annihilation_residual", tol, || {
        grid_max(rs.iter().flat_map(|&r| {
            PHI_GRID.iter().map(move |&phi| {
                let p = params(r, phi)?;
                let vac = build_rindler_vacuum(&p);
                Ok(crate::fock::Spin::ALL
                    .iter()
                    .map(|&s| minkowski_annihilation_with(conv, &p, s, &vac).norm())
                    .fold(0.0, f64::max))
            })
        }))
    }));

    checks.push(check("rindler.one_particle", tol, || {
        grid_max(rs.iter().flat_map(|&r| {
            crate::fock::Spin::ALL.iter().map(move |&s| {
                let p = params(r, 1.3)?;
                let built = minkowski_creation(&p, s, &build_rindler_vacuum(&p));
                Ok(built.max_abs_diff(&build_one_particle(&p, s)))
            })
        }))
    }));

    checks.push(check("rindler.multimode", tol, || {
        grid_max(rs.iter().map(|&r| {
            let p = params(r, 0.9)?;
            let v = vacuum_coefficients(&p);
            let c0 = multimode_c0(1, r)?;
            let c1 = multimode_cm(1, 1, r, 0.9)?;
            let c2 = multimode_cm(1, 2, r, 0.9)?;
            Ok([
                (c0 - r.cos().powi(2)).abs(),
                (c1 - v.a).norm(),
                (c1 - v.b).norm(),
                (c2 * 2.0 - v.c).norm(),
            ]
            .into_iter()
            .fold(0.0, f64::max))
        }))
    }));

    checks.push(check("rindler.upsilon", tol, || {
        grid_max((1..=4).flat_map(|n| {
            (0..=2 * n).map(move |m| Ok((upsilon_enumerated(n, m)? as f64 - upsilon_formula(n, m)? as f64).abs()))
        }))
    }));

    checks.push(check("density.region_iv_terms", tol, || {
        grid_max(rs.iter().map(|&r| {
            let p = params(r, 0.4)?;
            let mut worst: f64 = 0.0;
            for (i, &ket) in PairState::ALL.iter().enumerate() {
                for &bra in &PairState::ALL[if i == 0 { 0 } else { 1 }..] {
                    let term = MinkowskiProjector { ket, bra };
                    let closed = partial_trace_region_iv_closed_form(term, &p)?;
                    worst = worst.max(closed.max_abs_diff(&numeric_region_iv_term(term, &p)?)?);
                }
            }
            Ok(worst)
        }))
    }));

    checks.push(check("entanglement.general_rho_ar", tol, || {
        let samples = sample_params();
        grid_max(rs.iter().flat_map(|&r| {
            samples.iter().map(move |sp| {
                let p = params(r, 2.1)?;
                build_general_rho_ar(sp, &p)?.max_abs_diff(&closed_form_general_rho_ar(sp, &p)?)
            })
        }))
    }));

    checks.push(check("entanglement.bell_pt_spectrum", tol, || {
        grid_max(rs.iter().flat_map(|&r| {
            BellKind::ALL.iter().map(move |&kind| {
                let rho = bell_rho_ar(kind, &params(r, 0.0)?)?;
                Ok(max_spectrum_gap(pt_spectrum(&rho, Factor::RobI)?, closed_form_bell_pt_spectrum(r)))
            })
        }))
    }));

    checks.push(check("entanglement.bell_negativity_information", tol, || {
        grid_max(rs.iter().map(|&r| {
            let rho = bell_rho_ar(BellKind::PhiPlus, &params(r, 0.0)?)?;
            let c2 = r.cos().powi(2);
            let n = (negativity(&rho, Factor::RobI)? - c2).abs();
            let i = (mutual_information(&rho)? - 2.0 * c2).abs();
            Ok(n.max(i))
        }))
    }));

    checks.push(check("entanglement.mode_pt_spectrum", tol, || {
        grid_max(rs.iter().flat_map(|&r| {
            SpinPair::ALL.iter().map(move |&pair| {
                let rho = mode_entangled_rho_ar(pair, &params(r, 0.0)?)?;
                let spec = pt_spectrum(&rho, Factor::RobI)?;
                Ok(max_spectrum_gap(spec, closed_form_mode_pt_spectrum(r))
                    .max((negativity(&rho, Factor::RobI)? - r.cos().powi(2)).abs()))
            })
        }))
    }));

    checks.push(check("spintrace.erased_state", tol, || {
        let samples = sample_params();
        grid_max(rs.iter().flat_map(|&r| {
            samples.iter().map(move |sp| {
                let numeric = occupation_rho(sp, &params(r, 0.0)?)?;
                let mut expected = closed_form_occupation_rho(sp, r);
                let z = occupation_coherence_01_12(sp, r);
                let k01 = [crate::basis::Level::Count(0), crate::basis::Level::Count(1)];
                let k12 = [crate::basis::Level::Count(1), crate::basis::Level::Count(2)];
                expected.add_entry(&k01, &k12, z)?;
                expected.add_entry(&k12, &k01, z.conj())?;
                numeric.max_abs_diff(&expected)
            })
        }))
    }));

    checks.push(check("spintrace.closed_form_spectrum", tol, || {
        let samples = sample_params();
        grid_max(rs.iter().flat_map(|&r| {
            samples.iter().map(move |sp| {
                let pt = pt_spectrum(&closed_form_occupation_rho(sp, r), Factor::RobOccupation)?;
                Ok(max_spectrum_gap(pt, occupation_pt_spectrum(sp, r)))
            })
        }))
    }));

    checks.push(check("spintrace.inertial_negativity", tol, || {
        grid_max(sample_params().iter().map(|sp| {
            Ok((numeric_occupation_negativity(sp, &SqueezingParams::inertial())? - occupation_negativity(sp, 0.0)).abs())
        }))
    }));

    checks.push(check("unruh.occupancy", tol, || {
        grid_max(rs.iter().map(|&r| {
            let p = params(r, 0.0)?;
            let traced = number_operator_expectation(&partial_vacuum(&p)?)?;
            let mut err = (traced - expected_number(&p)).abs();
            if r > 0.0 && r < FRAC_PI_4 {
                let x = -r.tan().ln() / PI;
                err = err.max((traced - expected_number_from_ratio(x)?).abs());
            }
            Ok(err)
        }))
    }));

    VerifyReport { tolerance: tol, checks }
}

/// The suite under the canonical ordering.
pub fn run_all(tol: f64) -> VerifyReport {
    run_checks(&SignConvention::canonical(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Spin, Subsystem};

    #[test]
    fn fresh_build_passes() {
        let report = run_all(DEFAULT_TOLERANCE);
        for c in &report.checks {
            assert!(c.passed, "{} failed: {:e} {:?}", c.name, c.max_error, c.detail);
        }
        assert!(report.max_error() < 1e-10);
    }

    #[test]
    fn permuted_ordering_breaks_vacuum_check() {
        let s = |sub, spin| Slot::new(sub, spin);
        let order = [
            s(Subsystem::AliceMinkowski, Spin::Up),
            s(Subsystem::AliceMinkowski, Spin::Down),
            s(Subsystem::RobRegionIV, Spin::Up),
            s(Subsystem::RobRegionIV, Spin::Down),
            s(Subsystem::RobRegionI, Spin::Up),
            s(Subsystem::RobRegionI, Spin::Down),
        ];
        let conv = SignConvention::from_order(order).unwrap();
        let report = run_checks(&conv, DEFAULT_TOLERANCE);
        let failing: Vec<_> = report.failures().map(|c| c.name).collect();
        assert!(failing.contains(&"rindler.vacuum_nullspace"), "{failing:?}");
        assert!(!failing.contains(&"fock.anticommutators"));
        assert!(!report.all_passed());
    }
}
