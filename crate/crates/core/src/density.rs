//! Density matrices that carry their basis labels.
//!
//! Partial traces and partial transposes are driven by [`Factor`] labels, so
//! the same code serves the Fock product bases and the occupation-number
//! bases used after spin erasure.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::{Basis, Factor, Level};
use crate::error::{Error, Result};
use crate::fock::{FockBasisState, ModeState, Spin, StateVector, Subsystem};
use crate::rindler::SqueezingParams;

/// Eigenvalues above this (and below zero) are numerical dust for entropy.
pub const ENTROPY_CLAMP: f64 = 1e-8;
pub const HERMITIAN_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    basis: Basis,
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(basis: Basis, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(Error::Basis(format!(
                "{}x{} matrix for a basis of dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                basis.dim()
            )));
        }
        Ok(DensityMatrix { basis, matrix })
    }

    pub fn zeros(basis: Basis) -> Self {
        let n = basis.dim();
        DensityMatrix { basis, matrix: DMatrix::zeros(n, n) }
    }

    /// `|ψ⟩⟨ψ|` for amplitudes given over `basis`.
    pub fn from_amplitudes(basis: Basis, amps: &[Complex64]) -> Result<Self> {
        if amps.len() != basis.dim() {
            return Err(Error::Basis(format!("{} amplitudes for dimension {}", amps.len(), basis.dim())));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        let n = amps.len();
        let matrix = DMatrix::from_fn(n, n, |i, j| amps[i] * amps[j].conj());
        Self::new(basis, matrix)
    }

    /// Projector onto a normalized Fock state over the full A⊗I⊗IV basis.
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        Self::from_pure_on(state, &Subsystem::ALL)
    }

    /// Projector over the product basis of the listed subsystems only. Fails if
    /// the state populates a subsystem that is not listed.
    pub fn from_pure_on(state: &StateVector, subsystems: &[Subsystem]) -> Result<Self> {
        if let Some(extra) = state.populated_subsystems().into_iter().find(|s| !subsystems.contains(s)) {
            return Err(Error::OutsideDomain(format!("state populates subsystem {extra}")));
        }
        let factors: Vec<Factor> = subsystems.iter().map(|&s| s.into()).collect();
        let basis = Basis::modes(&factors);
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.dim()];
        for (ket, amp) in state.iter() {
            let levels = fock_levels(ket, subsystems);
            let i = basis.index_of(&levels).expect("mode basis covers every occupation");
            amps[i] += amp;
        }
        Self::from_amplitudes(basis, &amps)
    }

    /// `|ket⟩⟨bra|` over the full A⊗I⊗IV basis; neither side need be normalized.
    pub fn outer(ket: &StateVector, bra: &StateVector) -> Self {
        let basis = Basis::modes(&[Factor::Alice, Factor::RobI, Factor::RobIV]);
        let dense = |v: &StateVector| {
            let mut out = vec![Complex64::new(0.0, 0.0); basis.dim()];
            for (k, amp) in v.iter() {
                out[basis.index_of(&fock_levels(k, &Subsystem::ALL)).expect("full mode basis")] += amp;
            }
            out
        };
        let (k, b) = (dense(ket), dense(bra));
        let n = basis.dim();
        let matrix = DMatrix::from_fn(n, n, |i, j| k[i] * b[j].conj());
        DensityMatrix { basis, matrix }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        hermiticity_error(&self.matrix)
    }

    /// `⟨ket|ρ|bra⟩`; `None` if either label is not in the basis.
    pub fn entry(&self, ket: &[Level], bra: &[Level]) -> Option<Complex64> {
        Some(self.matrix[(self.basis.index_of(ket)?, self.basis.index_of(bra)?)])
    }

    pub(crate) fn add_entry(&mut self, ket: &[Level], bra: &[Level], value: Complex64) -> Result<()> {
        let i = self.basis.index_of(ket).ok_or_else(|| Error::Basis(format!("no ket {ket:?}")))?;
        let j = self.basis.index_of(bra).ok_or_else(|| Error::Basis(format!("no bra {bra:?}")))?;
        self.matrix[(i, j)] += value;
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        DensityMatrix { basis: self.basis.clone(), matrix: self.matrix.adjoint() }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        DensityMatrix { basis: self.basis.clone(), matrix: self.matrix.map(|z| z * c) }
    }

    pub fn try_add(&self, other: &DensityMatrix) -> Result<Self> {
        self.same_basis(other)?;
        Ok(DensityMatrix { basis: self.basis.clone(), matrix: &self.matrix + &other.matrix })
    }

    /// Largest entrywise difference; bases must match.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        self.same_basis(other)?;
        Ok((&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max))
    }

    fn same_basis(&self, other: &DensityMatrix) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Basis("operands use different bases".into()));
        }
        Ok(())
    }

    /// Standard partial trace keeping `keep`; the basis must be a product.
    pub fn partial_trace(&self, keep: &[Factor]) -> Result<Self> {
        for &f in keep {
            self.basis.position(f)?;
        }
        if !self.basis.is_tensor_product() {
            return Err(Error::Basis("partial trace needs a tensor-product basis".into()));
        }
        let parts = self
            .basis
            .factors()
            .iter()
            .filter(|f| keep.contains(f))
            .map(|&f| Ok((f, self.basis.levels(f)?)))
            .collect::<Result<Vec<_>>>()?;
        self.contract_onto(Basis::tensor(&parts)?)
    }

    /// Sums `⟨t|ρ|t⟩` over the levels `t` of every factor missing from
    /// `target`. On a product basis this is the partial trace; on a
    /// constrained direct sum it is the block sum over matching labels.
    pub fn contract_onto(&self, target: Basis) -> Result<Self> {
        let kept: Vec<usize> = target
            .factors()
            .iter()
            .map(|&f| self.basis.position(f))
            .collect::<Result<_>>()?;
        let traced: Vec<usize> = (0..self.basis.factors().len()).filter(|p| !kept.contains(p)).collect();
        let project = |levels: &[Level], positions: &[usize]| -> Vec<Level> {
            positions.iter().map(|&p| levels[p]).collect()
        };

        let mut out = DensityMatrix::zeros(target);
        let states = self.basis.states();
        for (i, si) in states.iter().enumerate() {
            for (j, sj) in states.iter().enumerate() {
                if project(si, &traced) != project(sj, &traced) {
                    continue;
                }
                let value = self.matrix[(i, j)];
                if value == Complex64::new(0.0, 0.0) {
                    continue;
                }
                out.add_entry(&project(si, &kept), &project(sj, &kept), value)?;
            }
        }
        Ok(out)
    }

    /// Transposes the indices of `factor`: `|a r⟩⟨a' r'| → |a r'⟩⟨a' r|`.
    pub fn partial_transpose(&self, factor: Factor) -> Result<Self> {
        let pos = self.basis.position(factor)?;
        if !self.basis.is_tensor_product() {
            return Err(Error::Basis("partial transpose needs a tensor-product basis".into()));
        }
        let mut out = DensityMatrix::zeros(self.basis.clone());
        let states = self.basis.states();
        for (i, si) in states.iter().enumerate() {
            for (j, sj) in states.iter().enumerate() {
                let mut ket = si.clone();
                let mut bra = sj.clone();
                std::mem::swap(&mut ket[pos], &mut bra[pos]);
                out.add_entry(&ket, &bra, self.matrix[(i, j)])?;
            }
        }
        Ok(out)
    }

    /// Restricts to basis elements whose levels lie in the allowed lists.
    /// Fails if anything outside that sub-basis exceeds `1e-12`.
    pub fn restrict_to_support(&self, allowed: &[(Factor, Vec<Level>)]) -> Result<Self> {
        let checks: Vec<(usize, &Vec<Level>)> = allowed
            .iter()
            .map(|(f, levels)| Ok((self.basis.position(*f)?, levels)))
            .collect::<Result<_>>()?;
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&i| {
                let s = &self.basis.states()[i];
                checks.iter().all(|(p, levels)| levels.contains(&s[*p]))
            })
            .collect();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if (!keep.contains(&i) || !keep.contains(&j)) && self.matrix[(i, j)].norm() > 1e-12 {
                    return Err(Error::OutsideDomain(format!(
                        "weight on {}⟨{}",
                        self.basis.label(i),
                        &self.basis.label(j)[1..]
                    )));
                }
            }
        }
        let states = keep.iter().map(|&i| self.basis.states()[i].clone()).collect();
        let basis = Basis::from_states(self.basis.factors().to_vec(), states)?;
        let matrix = DMatrix::from_fn(keep.len(), keep.len(), |a, b| self.matrix[(keep[a], keep[b])]);
        Self::new(basis, matrix)
    }

    /// Replaces the basis by `target` through the isometry `u` (rows indexed by
    /// `target`, columns by the current basis): `ρ → U ρ U†`.
    pub fn transform(&self, u: &DMatrix<Complex64>, target: Basis) -> Result<Self> {
        if u.ncols() != self.dim() || u.nrows() != target.dim() {
            return Err(Error::Basis("isometry shape does not match the bases".into()));
        }
        Self::new(target, u * &self.matrix * u.adjoint())
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn von_neumann_entropy(&self) -> Result<f64> {
        von_neumann_entropy(self)
    }

    /// Minimum eigenvalue is at least `-tol`, trace 1 and Hermitian to `tol`.
    pub fn is_physical(&self, tol: f64) -> Result<bool> {
        if self.hermiticity_error() > tol || (self.trace() - 1.0).norm() > tol {
            return Ok(false);
        }
        Ok(self.eigenvalues()?.first().is_none_or(|&l| l >= -tol))
    }
}

fn fock_levels(ket: FockBasisState, subsystems: &[Subsystem]) -> Vec<Level> {
    subsystems.iter().map(|&s| Level::Mode(ket.mode(s))).collect()
}

fn hermiticity_error(m: &DMatrix<Complex64>) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Free-function form of [`DensityMatrix::partial_trace`].
pub fn partial_trace(rho: &DensityMatrix, keep: &[Factor]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}

/// Free-function form of [`DensityMatrix::partial_transpose`].
pub fn partial_transpose(rho: &DensityMatrix, factor: Factor) -> Result<DensityMatrix> {
    rho.partial_transpose(factor)
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Basis(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
    }
    let err = hermiticity_error(m);
    if err > HERMITIAN_TOL {
        return Err(Error::NotHermitian(err));
    }
    let sym = (m + m.adjoint()).map(|z| z * 0.5);
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| a.total_cmp(b));
    Ok(values)
}

/// `-Σ λ log₂ λ` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let values = rho.eigenvalues()?;
    if let Some(&min) = values.first() {
        if min < -ENTROPY_CLAMP {
            return Err(Error::NegativeEigenvalue(min));
        }
    }
    Ok(values.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum())
}

/// A Minkowski two-mode configuration of Alice and Rob: both empty, or one
/// particle each with the given spins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairState {
    Vacuum,
    Particles(Spin, Spin),
}

impl PairState {
    /// The vacuum followed by the four one-particle pairs ↑↑, ↑↓, ↓↑, ↓↓.
    pub const ALL: [PairState; 5] = [
        PairState::Vacuum,
        PairState::Particles(Spin::Up, Spin::Up),
        PairState::Particles(Spin::Up, Spin::Down),
        PairState::Particles(Spin::Down, Spin::Up),
        PairState::Particles(Spin::Down, Spin::Down),
    ];
}

/// The operator `|ket⟩⟨bra|` written in Minkowski labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinkowskiProjector {
    pub ket: PairState,
    pub bra: PairState,
}

fn ar(alice: ModeState, rob: ModeState) -> [Level; 2] {
    [Level::Mode(alice), Level::Mode(rob)]
}

/// `Tr_IV |ket⟩⟨bra|` in closed form over the A⊗I basis. The Bogoliubov
/// phase cancels, so only `r` matters.
///
/// Accepted shapes are `|0,0⟩⟨0,0|`, `|0,0⟩⟨s,s'|` and `|s₁,s₂⟩⟨s₃,s₄|`;
/// the adjoint shape `|s,s'⟩⟨0,0|` is rejected.
pub fn partial_trace_region_iv_closed_form(
    term: MinkowskiProjector,
    p: &SqueezingParams,
) -> Result<DensityMatrix> {
    use ModeState::{Empty, Pair};
    let (s, c) = p.r().sin_cos();
    let mut out = DensityMatrix::zeros(Basis::modes(&[Factor::Alice, Factor::RobI]));
    let re = |x: f64| Complex64::new(x, 0.0);
    match (term.ket, term.bra) {
        (PairState::Vacuum, PairState::Vacuum) => {
            out.add_entry(&ar(Empty, Empty), &ar(Empty, Empty), re(c.powi(4)))?;
            for m in [ModeState::Up, ModeState::Down] {
                out.add_entry(&ar(Empty, m), &ar(Empty, m), re(s * s * c * c))?;
            }
            out.add_entry(&ar(Empty, Pair), &ar(Empty, Pair), re(s.powi(4)))?;
        }
        (PairState::Vacuum, PairState::Particles(sa, sr)) => {
            let alice = ModeState::single(sa);
            out.add_entry(&ar(Empty, Empty), &ar(alice, ModeState::single(sr)), re(c.powi(3)))?;
            // The IV partner of Rob's spin is the opposite spin in region I.
            let partner = ModeState::single(sr.flip());
            out.add_entry(&ar(Empty, partner), &ar(alice, Pair), re(sr.sign() * s * s * c))?;
        }
        (PairState::Particles(s1, s2), PairState::Particles(s3, s4)) => {
            let (a1, a3) = (ModeState::single(s1), ModeState::single(s3));
            out.add_entry(&ar(a1, ModeState::single(s2)), &ar(a3, ModeState::single(s4)), re(c * c))?;
            if s2 == s4 {
                out.add_entry(&ar(a1, Pair), &ar(a3, Pair), re(s * s))?;
            }
        }
        (PairState::Particles(..), PairState::Vacuum) => {
            return Err(Error::UnsupportedTerm(
                "|s,s'⟩⟨0,0| is the adjoint of |0,0⟩⟨s,s'|; trace that term instead".into(),
            ));
        }
    }
    Ok(out)
}
