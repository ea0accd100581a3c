//! Fermionic occupation-number basis for the single-mode setting.
//!
//! Six fermionic slots exist: one per (subsystem, spin). Basis kets are
//! products of creation operators applied to the vacuum in canonical slot
//! order, lowest slot leftmost:
//!
//! ```text
//! (Alice,↑) < (Alice,↓) < (I,↑) < (I,↓) < (IV,↑) < (IV,↓)
//! ```
//!
//! so a creation operator on slot `s` picks up `(-1)^k`, where `k` counts the
//! occupied slots preceding `s`. Region-IV antiparticle operators are ordinary
//! fermionic operators on the IV slots.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes smaller than this are dropped after arithmetic.
pub const PRUNE_EPS: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subsystem {
    AliceMinkowski,
    RobRegionI,
    RobRegionIV,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [
        Subsystem::AliceMinkowski,
        Subsystem::RobRegionI,
        Subsystem::RobRegionIV,
    ];

    fn offset(self) -> u8 {
        match self {
            Subsystem::AliceMinkowski => 0,
            Subsystem::RobRegionI => 2,
            Subsystem::RobRegionIV => 4,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::AliceMinkowski => "A",
            Subsystem::RobRegionI => "I",
            Subsystem::RobRegionIV => "IV",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const ALL: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    /// +1 for up, -1 for down.
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Up => "↑",
            Spin::Down => "↓",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub subsystem: Subsystem,
    pub spin: Spin,
}

impl Slot {
    /// All slots in canonical order.
    pub const ALL: [Slot; 6] = [
        Slot::new(Subsystem::AliceMinkowski, Spin::Up),
        Slot::new(Subsystem::AliceMinkowski, Spin::Down),
        Slot::new(Subsystem::RobRegionI, Spin::Up),
        Slot::new(Subsystem::RobRegionI, Spin::Down),
        Slot::new(Subsystem::RobRegionIV, Spin::Up),
        Slot::new(Subsystem::RobRegionIV, Spin::Down),
    ];

    pub const fn new(subsystem: Subsystem, spin: Spin) -> Self {
        Slot { subsystem, spin }
    }

    /// Position in the canonical order, also the bit index in [`FockBasisState`].
    pub fn index(self) -> usize {
        let spin = match self.spin {
            Spin::Up => 0,
            Spin::Down => 1,
        };
        (self.subsystem.offset() + spin) as usize
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.subsystem, self.spin)
    }
}

/// Occupation of a single mode: the local basis {0, ↑, ↓, ↑↓}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeState {
    Empty,
    Up,
    Down,
    Pair,
}

impl ModeState {
    pub const ALL: [ModeState; 4] = [ModeState::Empty, ModeState::Up, ModeState::Down, ModeState::Pair];

    /// Index in the local basis {0, ↑, ↓, ↑↓}.
    pub fn index(self) -> usize {
        self.bits() as usize
    }

    fn bits(self) -> u8 {
        match self {
            ModeState::Empty => 0b00,
            ModeState::Up => 0b01,
            ModeState::Down => 0b10,
            ModeState::Pair => 0b11,
        }
    }

    fn from_bits(bits: u8) -> Self {
        match bits & 0b11 {
            0b00 => ModeState::Empty,
            0b01 => ModeState::Up,
            0b10 => ModeState::Down,
            _ => ModeState::Pair,
        }
    }

    pub fn particle_count(self) -> u8 {
        self.bits().count_ones() as u8
    }

    pub fn single(spin: Spin) -> Self {
        match spin {
            Spin::Up => ModeState::Up,
            Spin::Down => ModeState::Down,
        }
    }
}

impl fmt::Display for ModeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeState::Empty => "0",
            ModeState::Up => "↑",
            ModeState::Down => "↓",
            ModeState::Pair => "↑↓",
        })
    }
}

/// Occupation bit pattern over the six slots; bit `i` is slot `Slot::ALL[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FockBasisState(u8);

impl FockBasisState {
    pub const COUNT: usize = 64;

    pub fn vacuum() -> Self {
        FockBasisState(0)
    }

    pub fn from_bits(bits: u8) -> Result<Self> {
        if bits >= 64 {
            return Err(Error::Domain(format!("occupation pattern {bits:#b} uses more than 6 slots")));
        }
        Ok(FockBasisState(bits))
    }

    pub fn from_modes(alice: ModeState, rob_i: ModeState, rob_iv: ModeState) -> Self {
        FockBasisState(alice.bits() | rob_i.bits() << 2 | rob_iv.bits() << 4)
    }

    /// Every basis state, in bit order.
    pub fn all() -> impl Iterator<Item = FockBasisState> {
        (0u8..64).map(FockBasisState)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_occupied(self, slot: Slot) -> bool {
        self.0 >> slot.index() & 1 == 1
    }

    pub fn mode(self, subsystem: Subsystem) -> ModeState {
        ModeState::from_bits(self.0 >> subsystem.offset())
    }

    pub fn particle_count(self) -> u32 {
        self.0.count_ones()
    }

    fn toggled(self, slot: Slot) -> Self {
        FockBasisState(self.0 ^ (1 << slot.index()))
    }
}

impl fmt::Display for FockBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|{}⟩_A|{}⟩_I|{}⟩_IV",
            self.mode(Subsystem::AliceMinkowski),
            self.mode(Subsystem::RobRegionI),
            self.mode(Subsystem::RobRegionIV)
        )
    }
}

/// Sparse superposition of [`FockBasisState`]s. Absent keys have amplitude 0.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct StateVector {
    amps: BTreeMap<FockBasisState, Complex64>,
}

impl StateVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(FockBasisState::vacuum())
    }

    pub fn basis(state: FockBasisState) -> Self {
        Self::from_terms([(state, Complex64::new(1.0, 0.0))])
    }

    /// Sums repeated keys and prunes negligible amplitudes.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (FockBasisState, Complex64)>,
    {
        let mut amps = BTreeMap::new();
        for (state, amp) in terms {
            *amps.entry(state).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        let mut v = StateVector { amps };
        v.prune();
        v
    }

    fn prune(&mut self) {
        self.amps.retain(|_, a| a.norm() >= PRUNE_EPS);
    }

    pub fn amplitude(&self, state: FockBasisState) -> Complex64 {
        self.amps.get(&state).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (FockBasisState, Complex64)> + '_ {
        self.amps.iter().map(|(s, a)| (*s, *a))
    }

    /// Number of stored (nonzero) amplitudes.
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if n < PRUNE_EPS {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.iter().map(|(s, a)| (s, a * c)))
    }

    /// Largest amplitude difference against `other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        (self - other).amps.values().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Subsystems that carry at least one particle in some component.
    pub fn populated_subsystems(&self) -> Vec<Subsystem> {
        Subsystem::ALL
            .into_iter()
            .filter(|&sub| self.amps.keys().any(|b| b.mode(sub) != ModeState::Empty))
            .collect()
    }
}

impl Add for &StateVector {
    type Output = StateVector;
    fn add(self, rhs: &StateVector) -> StateVector {
        StateVector::from_terms(self.iter().chain(rhs.iter()))
    }
}

impl Sub for &StateVector {
    type Output = StateVector;
    fn sub(self, rhs: &StateVector) -> StateVector {
        StateVector::from_terms(self.iter().chain(rhs.iter().map(|(s, a)| (s, -a))))
    }
}

impl Neg for &StateVector {
    type Output = StateVector;
    fn neg(self) -> StateVector {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<&StateVector> for Complex64 {
    type Output = StateVector;
    fn mul(self, rhs: &StateVector) -> StateVector {
        rhs.scale(self)
    }
}

impl Mul<&StateVector> for f64 {
    type Output = StateVector;
    fn mul(self, rhs: &StateVector) -> StateVector {
        rhs.scale(Complex64::new(self, 0.0))
    }
}

/// Slot ordering that fixes the anticommutation signs.
///
/// Everything in the crate uses [`SignConvention::canonical`]; other orderings
/// exist so that a convention mismatch can be injected and detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignConvention {
    rank: [usize; 6],
}

impl Default for SignConvention {
    fn default() -> Self {
        Self::canonical()
    }
}

impl SignConvention {
    pub fn canonical() -> Self {
        SignConvention { rank: [0, 1, 2, 3, 4, 5] }
    }

    /// Convention in which `order[0]` is the leftmost operator.
    pub fn from_order(order: [Slot; 6]) -> Result<Self> {
        let mut rank = [usize::MAX; 6];
        for (pos, slot) in order.iter().enumerate() {
            if rank[slot.index()] != usize::MAX {
                return Err(Error::Domain(format!("slot {slot} appears twice in ordering")));
            }
            rank[slot.index()] = pos;
        }
        Ok(SignConvention { rank })
    }

    fn sign(&self, state: FockBasisState, slot: Slot) -> f64 {
        let own = self.rank[slot.index()];
        let preceding = Slot::ALL
            .iter()
            .filter(|s| state.is_occupied(**s) && self.rank[s.index()] < own)
            .count();
        if preceding % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn create(&self, state: &StateVector, slot: Slot) -> StateVector {
        StateVector::from_terms(
            state
                .iter()
                .filter(|(b, _)| !b.is_occupied(slot))
                .map(|(b, a)| (b.toggled(slot), a * self.sign(b, slot))),
        )
    }

    pub fn annihilate(&self, state: &StateVector, slot: Slot) -> StateVector {
        StateVector::from_terms(
            state
                .iter()
                .filter(|(b, _)| b.is_occupied(slot))
                .map(|(b, a)| (b.toggled(slot), a * self.sign(b, slot))),
        )
    }
}

/// Creation operator on `slot` in the canonical convention.
pub fn apply_creation(state: &StateVector, slot: Slot) -> StateVector {
    SignConvention::canonical().create(state, slot)
}

/// Annihilation operator on `slot`; the adjoint of [`apply_creation`].
pub fn apply_annihilation(state: &StateVector, slot: Slot) -> StateVector {
    SignConvention::canonical().annihilate(state, slot)
}

/// ⟨a|b⟩, conjugate-linear in `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Complex64 {
    a.iter().map(|(s, x)| x.conj() * b.amplitude(s)).sum()
}

/// Applies creation operators right to left: `create_all(&[s1, s2], v)` is `c†_{s1} c†_{s2} v`.
pub fn create_all(slots: &[Slot], state: &StateVector) -> StateVector {
    slots.iter().rev().fold(state.clone(), |acc, &s| apply_creation(&acc, s))
}
