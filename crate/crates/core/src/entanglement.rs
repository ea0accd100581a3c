//! Alice-Rob state families, negativity and mutual information.
//!
//! Every family is built numerically: the Minkowski state is expanded over
//! Alice ⊗ region I ⊗ region IV through the Bogoliubov operators, projected,
//! and region IV is traced out. Closed forms live alongside as oracles.

use std::fmt;

use num_complex::Complex64;

use crate::basis::{Factor, Level};
use crate::density::{
    partial_trace_region_iv_closed_form, DensityMatrix, MinkowskiProjector, PairState,
};
use crate::error::{Error, Result};
use crate::fock::{apply_creation, ModeState, Slot, Spin, StateVector, Subsystem};
use crate::rindler::{build_rindler_vacuum, minkowski_creation, SqueezingParams};

/// Partial-transpose eigenvalues above `-NEGATIVE_EIGEN_TOL` count as zero.
pub const NEGATIVE_EIGEN_TOL: f64 = 1e-10;
const PARAM_TOL: f64 = 1e-12;

/// Coefficients of `μ|0,0⟩ + α|↑,↑⟩ + β|↑,↓⟩ + γ|↓,↑⟩ + δ|↓,↓⟩`
/// (Alice first, Rob second). `μ` is derived, real and nonnegative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateParams {
    mu: f64,
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
}

impl StateParams {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Result<Self> {
        let coeffs = [alpha, beta, gamma, delta];
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParams("coefficients must be finite".into()));
        }
        let weight: f64 = coeffs.iter().map(|z| z.norm_sqr()).sum();
        if weight > 1.0 + PARAM_TOL {
            return Err(Error::InvalidParams(format!(
                "|α|²+|β|²+|γ|²+|δ|² = {weight} exceeds 1"
            )));
        }
        let mu = (1.0 - weight).max(0.0).sqrt();
        Ok(StateParams { mu, alpha, beta, gamma, delta })
    }

    /// Real-coefficient shorthand.
    pub fn real(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let c = |x| Complex64::new(x, 0.0);
        Self::new(c(alpha), c(beta), c(gamma), c(delta))
    }

    pub fn bell(kind: BellKind) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b, g, d) = match kind {
            BellKind::PhiPlus => (h, 0.0, 0.0, h),
            BellKind::PhiMinus => (h, 0.0, 0.0, -h),
            BellKind::PsiPlus => (0.0, h, h, 0.0),
            BellKind::PsiMinus => (0.0, h, -h, 0.0),
        };
        Self::real(a, b, g, d).expect("Bell coefficients are normalized")
    }

    /// `(|0,0⟩ + |s,s'⟩)/√2`.
    pub fn mode_entangled(pair: SpinPair) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut c = [0.0; 4];
        c[pair as usize] = h;
        Self::real(c[0], c[1], c[2], c[3]).expect("mode coefficients are normalized")
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    /// Amplitude of a Minkowski pair configuration.
    pub fn coefficient(&self, pair: PairState) -> Complex64 {
        match pair {
            PairState::Vacuum => Complex64::new(self.mu, 0.0),
            PairState::Particles(a, r) => match (a, r) {
                (Spin::Up, Spin::Up) => self.alpha,
                (Spin::Up, Spin::Down) => self.beta,
                (Spin::Down, Spin::Up) => self.gamma,
                (Spin::Down, Spin::Down) => self.delta,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        })
    }
}

/// One-particle spin configuration `|s,s'⟩` (Alice's spin first). The
/// discriminant matches the α, β, γ, δ ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinPair {
    UpUp = 0,
    UpDown = 1,
    DownUp = 2,
    DownDown = 3,
}

impl SpinPair {
    pub const ALL: [SpinPair; 4] = [SpinPair::UpUp, SpinPair::UpDown, SpinPair::DownUp, SpinPair::DownDown];

    pub fn spins(self) -> (Spin, Spin) {
        match self {
            SpinPair::UpUp => (Spin::Up, Spin::Up),
            SpinPair::UpDown => (Spin::Up, Spin::Down),
            SpinPair::DownUp => (Spin::Down, Spin::Up),
            SpinPair::DownDown => (Spin::Down, Spin::Down),
        }
    }
}

impl fmt::Display for SpinPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinPair::UpUp => "uu",
            SpinPair::UpDown => "ud",
            SpinPair::DownUp => "du",
            SpinPair::DownDown => "dd",
        })
    }
}

/// The Minkowski state over A ⊗ I ⊗ IV. Rob's Bogoliubov-expanded
/// operator acts first and Alice's creation operator last.
pub fn build_minkowski_state(params: &StateParams, p: &SqueezingParams) -> StateVector {
    let mut state = params.mu * &build_rindler_vacuum(p);
    for pair in SpinPair::ALL {
        let (sa, sr) = pair.spins();
        let amp = params.coefficient(PairState::Particles(sa, sr));
        if amp != Complex64::new(0.0, 0.0) {
            state = &state + &(amp * &pair_state_vector(PairState::Particles(sa, sr), p));
        }
    }
    state
}

/// One Minkowski pair configuration over A ⊗ I ⊗ IV, built the same way as
/// [`build_minkowski_state`].
pub fn pair_state_vector(pair: PairState, p: &SqueezingParams) -> StateVector {
    let vacuum = build_rindler_vacuum(p);
    match pair {
        PairState::Vacuum => vacuum,
        PairState::Particles(sa, sr) => {
            apply_creation(&minkowski_creation(p, sr, &vacuum), Slot::new(Subsystem::AliceMinkowski, sa))
        }
    }
}

/// `Tr_IV |ket⟩⟨bra|` through the numeric pipeline.
pub fn numeric_region_iv_term(term: MinkowskiProjector, p: &SqueezingParams) -> Result<DensityMatrix> {
    DensityMatrix::outer(&pair_state_vector(term.ket, p), &pair_state_vector(term.bra, p))
        .partial_trace(&[Factor::Alice, Factor::RobI])
}

/// Alice ⊗ region-I density matrix from the full pipeline (16-dim).
pub fn build_general_rho_ar(params: &StateParams, p: &SqueezingParams) -> Result<DensityMatrix> {
    DensityMatrix::from_pure(&build_minkowski_state(params, p))?.partial_trace(&[Factor::Alice, Factor::RobI])
}

/// The same matrix assembled from the closed-form region-IV traces of each
/// `|ket⟩⟨bra|` term.
pub fn closed_form_general_rho_ar(params: &StateParams, p: &SqueezingParams) -> Result<DensityMatrix> {
    let mut total: Option<DensityMatrix> = None;
    for (i, &ket) in PairState::ALL.iter().enumerate() {
        for &bra in &PairState::ALL[i..] {
            let weight = params.coefficient(ket) * params.coefficient(bra).conj();
            if weight == Complex64::new(0.0, 0.0) {
                continue;
            }
            let term = partial_trace_region_iv_closed_form(MinkowskiProjector { ket, bra }, p)?.scaled(weight);
            let term = if ket == bra { term } else { term.try_add(&term.adjoint())? };
            total = Some(match total {
                None => term,
                Some(acc) => acc.try_add(&term)?,
            });
        }
    }
    Ok(total.expect("the coefficients cannot all vanish"))
}

fn mode_set(states: &[ModeState]) -> Vec<Level> {
    states.iter().map(|&m| Level::Mode(m)).collect()
}

/// Bell-state `ρ_AR` over Alice {↑,↓} ⊗ Rob {↑,↓,↑↓}.
pub fn bell_rho_ar(kind: BellKind, p: &SqueezingParams) -> Result<DensityMatrix> {
    use ModeState::*;
    build_general_rho_ar(&StateParams::bell(kind), p)?.restrict_to_support(&[
        (Factor::Alice, mode_set(&[Up, Down])),
        (Factor::RobI, mode_set(&[Up, Down, Pair])),
    ])
}

/// `ρ_AR` of `(|0,0⟩ + |s,s'⟩)/√2` over Alice {0,s} ⊗ Rob {0,↑,↓,↑↓}.
pub fn mode_entangled_rho_ar(pair: SpinPair, p: &SqueezingParams) -> Result<DensityMatrix> {
    let alice = ModeState::single(pair.spins().0);
    build_general_rho_ar(&StateParams::mode_entangled(pair), p)?.restrict_to_support(&[
        (Factor::Alice, mode_set(&[ModeState::Empty, alice])),
        (Factor::RobI, mode_set(&ModeState::ALL)),
    ])
}

/// Eigenvalues of the partial transpose over `factor`, ascending.
pub fn pt_spectrum(rho: &DensityMatrix, factor: Factor) -> Result<Vec<f64>> {
    rho.partial_transpose(factor)?.eigenvalues()
}

/// `2 Σ |λ|` over partial-transpose eigenvalues below `-1e-10`; a maximally
/// entangled qubit pair scores 1.
pub fn negativity(rho: &DensityMatrix, factor: Factor) -> Result<f64> {
    Ok(negativity_of_spectrum(&pt_spectrum(rho, factor)?))
}

pub fn negativity_of_spectrum(spectrum: &[f64]) -> f64 {
    2.0 * spectrum.iter().filter(|&&l| l < -NEGATIVE_EIGEN_TOL).fold(0.0, |acc, l| acc + l.abs())
}

fn bipartite_factors(rho: &DensityMatrix) -> Result<(Factor, Factor)> {
    match rho.basis().factors() {
        &[a, b] => Ok((a, b)),
        other => Err(Error::Basis(format!("expected two factors, found {}", other.len()))),
    }
}

/// `S_A + S_R − S_AR` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let (a, b) = bipartite_factors(rho)?;
    let s_a = rho.partial_trace(&[a])?.von_neumann_entropy()?;
    let s_r = rho.partial_trace(&[b])?.von_neumann_entropy()?;
    Ok(s_a + s_r - rho.von_neumann_entropy()?)
}

/// `{½cos²r ×3, ½sin²r ×2, −½cos²r}`.
pub fn closed_form_bell_pt_spectrum(r: f64) -> Vec<f64> {
    let (s, c) = r.sin_cos();
    let (c2, s2) = (c * c / 2.0, s * s / 2.0);
    vec![c2, c2, c2, s2, s2, -c2]
}

/// The eight partial-transpose eigenvalues of the mode-entangled state,
/// `λ₁ … λ₈`.
pub fn closed_form_mode_pt_spectrum(r: f64) -> Vec<f64> {
    let (s, c) = r.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let root56 = (s2 * s2 * c2 * c2 + 4.0 * c2 * c2 * c2).sqrt();
    let root78 = (s2.powi(4) + 4.0 * s2 * s2 * c2).sqrt();
    vec![
        0.5 * c2 * c2,
        0.5 * c2 * s2,
        0.5 * s2,
        0.5 * c2,
        0.25 * (s2 * c2 + root56),
        0.25 * (s2 * c2 - root56),
        0.25 * (s2 * s2 + root78),
        0.25 * (s2 * s2 - root78),
    ]
}

/// Nonzero-support eigenvalues of the mode-entangled `ρ_AR` (two further
/// eigenvalues vanish) and the diagonal of its `ρ_R` over {0,↑,↓,↑↓}.
pub fn closed_form_mode_spectra(r: f64) -> (Vec<f64>, Vec<f64>) {
    let (s, c) = r.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let ar = vec![0.0, 0.0, 0.5 * s2 * c2, 0.5 * s2 * s2, 0.5 * c2 * (1.0 + c2), 0.5 * s2 * (1.0 + c2)];
    let r_diag = vec![0.5 * c2 * c2, 0.5 * s2 * c2, 0.5 * c2 * (s2 + 1.0), 0.5 * s2 * (s2 + 1.0)];
    (ar, r_diag)
}

/// Shannon entropy in bits of a probability list (zeros skipped).
pub fn shannon_bits(probs: &[f64]) -> f64 {
    probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementReport {
    pub r: f64,
    pub negativity: f64,
    /// Partial-transpose spectrum, ascending.
    pub pt_spectrum: Vec<f64>,
    pub entropy_a: f64,
    pub entropy_r: f64,
    pub entropy_ar: f64,
    pub mutual_information: f64,
}

impl EntanglementReport {
    /// Analyses a bipartite `ρ`, transposing its second factor.
    pub fn analyze(rho: &DensityMatrix, r: f64) -> Result<Self> {
        let (a, b) = bipartite_factors(rho)?;
        let pt_spectrum = pt_spectrum(rho, b)?;
        let entropy_a = rho.partial_trace(&[a])?.von_neumann_entropy()?;
        let entropy_r = rho.partial_trace(&[b])?.von_neumann_entropy()?;
        let entropy_ar = rho.von_neumann_entropy()?;
        Ok(EntanglementReport {
            r,
            negativity: negativity_of_spectrum(&pt_spectrum),
            pt_spectrum,
            entropy_a,
            entropy_r,
            entropy_ar,
            mutual_information: entropy_a + entropy_r - entropy_ar,
        })
    }

    pub fn pt_min_eigenvalue(&self) -> f64 {
        self.pt_spectrum.first().copied().unwrap_or(0.0)
    }
}
