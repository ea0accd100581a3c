//! Subsystem-labeled orthonormal bases.
//!
//! Every basis element is a tuple of levels, one per [`Factor`]. Partial
//! operations address factors by label, never by raw index arithmetic.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fock::{ModeState, Subsystem};
use crate::spintrace::TotalSpin;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// Alice's Minkowski mode, levels {0, ↑, ↓, ↑↓}.
    Alice,
    /// Rob's mode in Rindler region I.
    RobI,
    /// Rob's mode in Rindler region IV.
    RobIV,
    /// Alice's occupation number.
    AliceOccupation,
    /// Rob's occupation number.
    RobOccupation,
    /// Total spin of the Alice-Rob system.
    TotalSpin,
}

impl From<Subsystem> for Factor {
    fn from(s: Subsystem) -> Self {
        match s {
            Subsystem::AliceMinkowski => Factor::Alice,
            Subsystem::RobRegionI => Factor::RobI,
            Subsystem::RobRegionIV => Factor::RobIV,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::Alice => "A",
            Factor::RobI => "I",
            Factor::RobIV => "IV",
            Factor::AliceOccupation => "n_A",
            Factor::RobOccupation => "n_R",
            Factor::TotalSpin => "J",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Mode(ModeState),
    Count(u8),
    Spin(TotalSpin),
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Mode(m) => write!(f, "{m}"),
            Level::Count(n) => write!(f, "{n}"),
            Level::Spin(j) => write!(f, "{j}"),
        }
    }
}

pub fn mode_levels() -> Vec<Level> {
    ModeState::ALL.iter().map(|&m| Level::Mode(m)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    factors: Vec<Factor>,
    states: Vec<Vec<Level>>,
    index: HashMap<Vec<Level>, usize>,
}

impl Basis {
    /// Product basis, first factor varying slowest.
    pub fn tensor(parts: &[(Factor, Vec<Level>)]) -> Result<Self> {
        let mut states: Vec<Vec<Level>> = vec![Vec::new()];
        for (_, levels) in parts {
            states = states
                .into_iter()
                .flat_map(|prefix| {
                    levels.iter().map(move |l| {
                        let mut next = prefix.clone();
                        next.push(*l);
                        next
                    })
                })
                .collect();
        }
        Self::from_states(parts.iter().map(|(f, _)| *f).collect(), states)
    }

    /// Full {0, ↑, ↓, ↑↓} product basis over the given Fock factors.
    pub fn modes(factors: &[Factor]) -> Self {
        let parts: Vec<_> = factors.iter().map(|&f| (f, mode_levels())).collect();
        Self::tensor(&parts).expect("mode product basis is well formed")
    }

    pub fn from_states(factors: Vec<Factor>, states: Vec<Vec<Level>>) -> Result<Self> {
        for (i, f) in factors.iter().enumerate() {
            if factors[..i].contains(f) {
                return Err(Error::Basis(format!("factor {f} listed twice")));
            }
        }
        let mut index = HashMap::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            if s.len() != factors.len() {
                return Err(Error::Basis(format!(
                    "basis element {i} has {} labels for {} factors",
                    s.len(),
                    factors.len()
                )));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::Basis(format!("duplicate basis element {}", label(s))));
            }
        }
        Ok(Basis { factors, states, index })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn states(&self) -> &[Vec<Level>] {
        &self.states
    }

    pub fn index_of(&self, levels: &[Level]) -> Option<usize> {
        self.index.get(levels).copied()
    }

    pub fn position(&self, factor: Factor) -> Result<usize> {
        self.factors
            .iter()
            .position(|&f| f == factor)
            .ok_or_else(|| Error::MissingFactor(factor.to_string()))
    }

    /// Distinct levels of `factor`, in order of first appearance.
    pub fn levels(&self, factor: Factor) -> Result<Vec<Level>> {
        let pos = self.position(factor)?;
        let mut out: Vec<Level> = Vec::new();
        for s in &self.states {
            if !out.contains(&s[pos]) {
                out.push(s[pos]);
            }
        }
        Ok(out)
    }

    /// True when the elements are exactly the product of each factor's levels.
    pub fn is_tensor_product(&self) -> bool {
        let product: usize = self
            .factors
            .iter()
            .map(|&f| self.levels(f).map(|l| l.len()).unwrap_or(0))
            .product();
        product == self.dim()
    }

    /// Human-readable ket label such as `|↑,↑↓⟩`.
    pub fn label(&self, i: usize) -> String {
        label(&self.states[i])
    }
}

fn label(levels: &[Level]) -> String {
    let parts: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
    format!("|{}⟩", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_basis_is_row_major() {
        let b = Basis::modes(&[Factor::Alice, Factor::RobI]);
        assert_eq!(b.dim(), 16);
        assert_eq!(b.states()[1], vec![Level::Mode(ModeState::Empty), Level::Mode(ModeState::Up)]);
        assert_eq!(b.states()[4], vec![Level::Mode(ModeState::Up), Level::Mode(ModeState::Empty)]);
        assert!(b.is_tensor_product());
        assert_eq!(b.index_of(&b.states()[7].clone()), Some(7));
    }

    #[test]
    fn non_product_basis_is_detected() {
        let b = Basis::from_states(
            vec![Factor::AliceOccupation, Factor::RobOccupation],
            vec![vec![Level::Count(0), Level::Count(0)], vec![Level::Count(1), Level::Count(1)]],
        )
        .unwrap();
        assert!(!b.is_tensor_product());
    }

    #[test]
    fn malformed_bases_are_rejected() {
        assert!(Basis::from_states(vec![Factor::Alice, Factor::Alice], vec![]).is_err());
        assert!(Basis::from_states(vec![Factor::Alice], vec![vec![]]).is_err());
        let dup = vec![vec![Level::Count(0)], vec![Level::Count(0)]];
        assert!(Basis::from_states(vec![Factor::RobOccupation], dup).is_err());
        assert!(Basis::modes(&[Factor::Alice]).position(Factor::RobI).is_err());
    }
}
