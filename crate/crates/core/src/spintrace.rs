//! Occupation-number ⊗ total-spin basis and erasure of the spin label.
//!
//! Once the bipartite vacuum is in the superposition, the Alice-Rob space no
//! longer factorises into individual spins times occupations. It does split
//! into occupation numbers times total spin `(J, J_z)` of the pair, which
//! is what this module uses. Erasing spin is a block sum over equal `(J, J_z)`
//! labels, not a tensor partial trace, because not every (occupation, spin)
//! pair exists.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::{Basis, Factor, Level};
use crate::density::DensityMatrix;
use crate::entanglement::{build_general_rho_ar, negativity, StateParams};
use crate::error::{Error, Result};
use crate::fock::ModeState;
use crate::rindler::SqueezingParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TotalSpin {
    /// J = 0.
    S,
    /// J = 1, J_z = +1.
    TPlus,
    /// J = 1, J_z = 0.
    T0,
    /// J = 1, J_z = −1.
    TMinus,
    /// J = 1/2, J_z = +1/2.
    DPlus,
    /// J = 1/2, J_z = −1/2.
    DMinus,
}

impl TotalSpin {
    /// `(2J, 2J_z)`.
    pub fn doubled_quantum_numbers(self) -> (i8, i8) {
        match self {
            TotalSpin::S => (0, 0),
            TotalSpin::TPlus => (2, 2),
            TotalSpin::T0 => (2, 0),
            TotalSpin::TMinus => (2, -2),
            TotalSpin::DPlus => (1, 1),
            TotalSpin::DMinus => (1, -1),
        }
    }
}

impl fmt::Display for TotalSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TotalSpin::S => "S",
            TotalSpin::TPlus => "T+",
            TotalSpin::T0 => "T0",
            TotalSpin::TMinus => "T-",
            TotalSpin::DPlus => "D+",
            TotalSpin::DMinus => "D-",
        })
    }
}

/// `|n_a n_r⟩|J, J_z⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OccupationSpinElement {
    pub n_a: u8,
    pub n_r: u8,
    pub spin: TotalSpin,
}

impl OccupationSpinElement {
    /// The twelve elements reachable from Alice ∈ {0,↑,↓}, Rob ∈ {0,↑,↓,↑↓}.
    pub const ALL: [OccupationSpinElement; 12] = {
        use TotalSpin::*;
        const fn e(n_a: u8, n_r: u8, spin: TotalSpin) -> OccupationSpinElement {
            OccupationSpinElement { n_a, n_r, spin }
        }
        [
            e(0, 0, S),
            e(0, 1, DPlus),
            e(0, 1, DMinus),
            e(0, 2, S),
            e(1, 0, DPlus),
            e(1, 0, DMinus),
            e(1, 1, TPlus),
            e(1, 1, T0),
            e(1, 1, TMinus),
            e(1, 1, S),
            e(1, 2, DPlus),
            e(1, 2, DMinus),
        ]
    };

    pub fn new(n_a: u8, n_r: u8, spin: TotalSpin) -> Result<Self> {
        let e = OccupationSpinElement { n_a, n_r, spin };
        if Self::ALL.contains(&e) {
            Ok(e)
        } else {
            Err(Error::Basis(format!("no element |{n_a}{n_r}⟩|{spin}⟩")))
        }
    }

    fn levels(self) -> Vec<Level> {
        vec![Level::Count(self.n_a), Level::Count(self.n_r), Level::Spin(self.spin)]
    }
}

/// Basis over `[AliceOccupation, RobOccupation, TotalSpin]` in
/// [`OccupationSpinElement::ALL`] order.
pub fn occupation_spin_basis() -> Basis {
    Basis::from_states(
        vec![Factor::AliceOccupation, Factor::RobOccupation, Factor::TotalSpin],
        OccupationSpinElement::ALL.iter().map(|e| e.levels()).collect(),
    )
    .expect("dictionary elements are distinct")
}

/// Occupation basis `{00, 01, 02, 10, 11, 12}`.
pub fn occupation_basis() -> Basis {
    let counts = |n: u8| (0..n).map(Level::Count).collect::<Vec<_>>();
    Basis::tensor(&[(Factor::AliceOccupation, counts(2)), (Factor::RobOccupation, counts(3))])
        .expect("occupation product basis is well formed")
}

/// Expansion of `|a, r⟩` in the occupation/total-spin basis. `None` when
/// Alice's mode is doubly occupied.
pub fn dictionary(alice: ModeState, rob: ModeState) -> Option<Vec<(OccupationSpinElement, f64)>> {
    use ModeState::*;
    use TotalSpin::*;
    let e = |n_a, n_r, spin| OccupationSpinElement { n_a, n_r, spin };
    let doublet = |m: ModeState| if m == Up { DPlus } else { DMinus };
    Some(match (alice, rob) {
        (Pair, _) => return None,
        (Empty, Empty) => vec![(e(0, 0, S), 1.0)],
        (Empty, Pair) => vec![(e(0, 2, S), 1.0)],
        (Empty, m) => vec![(e(0, 1, doublet(m)), 1.0)],
        (m, Empty) => vec![(e(1, 0, doublet(m)), 1.0)],
        (m, Pair) => vec![(e(1, 2, doublet(m)), 1.0)],
        (Up, Up) => vec![(e(1, 1, TPlus), 1.0)],
        (Down, Down) => vec![(e(1, 1, TMinus), 1.0)],
        (Up, Down) => vec![(e(1, 1, T0), FRAC_1_SQRT_2), (e(1, 1, S), FRAC_1_SQRT_2)],
        (Down, Up) => vec![(e(1, 1, T0), FRAC_1_SQRT_2), (e(1, 1, S), -FRAC_1_SQRT_2)],
    })
}

/// Rewrites a 16-dim Alice ⊗ region-I density matrix in the occupation /
/// total-spin basis. Support on Alice's doubly occupied level is rejected.
pub fn to_occupation_totalspin(rho_ar: &DensityMatrix) -> Result<DensityMatrix> {
    if rho_ar.basis().factors() != [Factor::Alice, Factor::RobI] {
        return Err(Error::Basis("expected an Alice ⊗ region-I density matrix".into()));
    }
    let alice: Vec<Level> = [ModeState::Empty, ModeState::Up, ModeState::Down].iter().map(|&m| Level::Mode(m)).collect();
    let rob: Vec<Level> = ModeState::ALL.iter().map(|&m| Level::Mode(m)).collect();
    let restricted = rho_ar
        .restrict_to_support(&[(Factor::Alice, alice), (Factor::RobI, rob)])
        .map_err(|e| Error::OutsideDomain(format!("outside the occupation/total-spin dictionary: {e}")))?;

    let target = occupation_spin_basis();
    let mut u = DMatrix::<Complex64>::zeros(target.dim(), restricted.dim());
    for (col, levels) in restricted.basis().states().iter().enumerate() {
        let (Level::Mode(a), Level::Mode(r)) = (levels[0], levels[1]) else {
            return Err(Error::Basis("expected Fock mode levels".into()));
        };
        for (elem, amp) in dictionary(a, r).expect("Alice pair already excluded") {
            let row = target.index_of(&elem.levels()).expect("dictionary element in basis");
            u[(row, col)] = Complex64::new(amp, 0.0);
        }
    }
    restricted.transform(&u, target)
}

/// `Σ_{J,J_z} ⟨J,J_z|ρ|J,J_z⟩` over the occupation basis {00,01,02,10,11,12}.
pub fn trace_out_total_spin(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.basis().factors() != [Factor::AliceOccupation, Factor::RobOccupation, Factor::TotalSpin] {
        return Err(Error::Basis("expected an occupation/total-spin density matrix".into()));
    }
    rho.contract_onto(occupation_basis())
}

/// Full pipeline: Minkowski state → trace region IV → change basis → erase spin.
pub fn occupation_rho(params: &StateParams, p: &SqueezingParams) -> Result<DensityMatrix> {
    trace_out_total_spin(&to_occupation_totalspin(&build_general_rho_ar(params, p)?)?)
}

/// Negativity of the spin-erased state computed through [`occupation_rho`].
pub fn numeric_occupation_negativity(params: &StateParams, p: &SqueezingParams) -> Result<f64> {
    negativity(&occupation_rho(params, p)?, Factor::RobOccupation)
}

fn singlet_weight(params: &StateParams) -> f64 {
    (params.beta() - params.gamma()).norm_sqr() / 2.0
}

/// Closed-form occupation negativity
/// `2cos²r·|μ²sin²r − μ√(μ²sin⁴r + cos²r·|β−γ|²/2)|`.
///
/// This is the negativity of [`closed_form_occupation_rho`], which leaves out
/// the `|01⟩⟨12|` coherence; [`numeric_occupation_negativity`] keeps it and
/// the two differ once `r > 0` and `β ≠ γ`.
pub fn occupation_negativity(params: &StateParams, r: f64) -> f64 {
    let (s, c) = r.sin_cos();
    let mu = params.mu();
    let root = (mu * mu * s.powi(4) + c * c * singlet_weight(params)).sqrt();
    2.0 * c * c * (mu * mu * s * s - mu * root).abs()
}

/// The six eigenvalues `λ₁ … λ₆` of the partial transpose of
/// [`closed_form_occupation_rho`].
pub fn occupation_pt_spectrum(params: &StateParams, r: f64) -> Vec<f64> {
    let (s, c) = r.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let mu = params.mu();
    let mu2 = mu * mu;
    let root = (mu2 * s2 * s2 + c2 * singlet_weight(params)).sqrt();
    vec![
        mu2 * c2 * c2,
        mu2 * s2 * s2,
        (1.0 - mu2) * c2,
        (1.0 - mu2) * s2,
        c2 * (mu2 * s2 + mu * root),
        c2 * (mu2 * s2 - mu * root),
    ]
}

/// The spin-erased matrix keeping only the `|00⟩⟨11|` coherence:
///
/// `μ²[cos⁴r|00⟩⟨00| + 2sin²r cos²r|01⟩⟨01| + sin⁴r|02⟩⟨02|]
///  + μcos³r[(β−γ)*/√2 |00⟩⟨11| + h.c.]
///  + (1−μ²)[cos²r|11⟩⟨11| + sin²r|12⟩⟨12|]`.
pub fn closed_form_occupation_rho(params: &StateParams, r: f64) -> DensityMatrix {
    let (s, c) = r.sin_cos();
    let mu = params.mu();
    let mu2 = mu * mu;
    let k = |a: u8, b: u8| [Level::Count(a), Level::Count(b)];
    let re = |x: f64| Complex64::new(x, 0.0);
    let mut rho = DensityMatrix::zeros(occupation_basis());
    let coherence = (params.beta() - params.gamma()).conj() * (mu * c.powi(3) * FRAC_1_SQRT_2);
    let entries = [
        (k(0, 0), k(0, 0), re(mu2 * c.powi(4))),
        (k(0, 1), k(0, 1), re(2.0 * mu2 * s * s * c * c)),
        (k(0, 2), k(0, 2), re(mu2 * s.powi(4))),
        (k(0, 0), k(1, 1), coherence),
        (k(1, 1), k(0, 0), coherence.conj()),
        (k(1, 1), k(1, 1), re((1.0 - mu2) * c * c)),
        (k(1, 2), k(1, 2), re((1.0 - mu2) * s * s)),
    ];
    for (ket, bra, v) in entries {
        rho.add_entry(&ket, &bra, v).expect("occupation labels exist");
    }
    rho
}

/// `⟨01|ρⁿ|12⟩ = μ sin²r cos r (γ − β)*`, the coherence that survives spin
/// erasure from the `|0,s⟩⟨s',↑↓|` terms of the reduced state.
pub fn occupation_coherence_01_12(params: &StateParams, r: f64) -> Complex64 {
    let (s, c) = r.sin_cos();
    (params.gamma() - params.beta()).conj() * (params.mu() * s * s * c)
}

/// `(|0,0⟩ + (|↑,↓⟩ − |↓,↑⟩)/√2)/√2`: μ = 1/√2, β = ½, γ = −½.
pub fn maximally_entangled_occupation_state() -> StateParams {
    StateParams::real(0.0, 0.5, -0.5, 0.0).expect("singlet coefficients are normalized")
}

/// Same weights with the `|11⟩` component in `T₀` (β = γ = ½).
pub fn triplet_occupation_state() -> StateParams {
    StateParams::real(0.0, 0.5, 0.5, 0.0).expect("triplet coefficients are normalized")
}
