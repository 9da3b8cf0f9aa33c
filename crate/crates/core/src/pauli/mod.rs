//! Pauli-string algebra and real-weighted Pauli Hamiltonians.
//!
//! A [`PauliString`] is stored in symplectic form: one X bit and one Z bit per
//! qubit plus a phase in `{+1, +i, -1, -i}`. Qubit 0 is the leftmost symbol
//! of the text form everywhere in this crate.

mod hamiltonian;
mod models;

pub use hamiltonian::{Hamiltonian, Term, COEFF_DROP_THRESHOLD};
pub use models::{build_hamiltonian, HamiltonianKind};

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::bits;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PauliError {
    #[error("invalid Pauli symbol {symbol:?} at index {index}")]
    InvalidSymbol { index: usize, symbol: char },
    #[error("empty Pauli string")]
    Empty,
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("Hamiltonian term {0} has an imaginary phase")]
    NonHermitianTerm(String),
    #[error("coefficient {0} is not finite")]
    NonFiniteCoefficient(f64),
    #[error("{0} qubits requested, at least 2 are required")]
    TooFewQubits(usize),
    #[error("scrambled Hamiltonian needs a seed")]
    MissingSeed,
    #[error("scrambled Hamiltonian needs a brickwall depth")]
    MissingDepth,
    #[error("seed and depth only apply to the scrambled Hamiltonian")]
    UnexpectedScrambleParameters,
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Power of `i` multiplying a Pauli string: `0 → +1`, `1 → +i`, `2 → -1`, `3 → -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(e: u8) -> Self {
        Phase(e & 3)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 & 1 == 0
    }

    /// `+1.0` or `-1.0` for real phases.
    pub fn sign(self) -> Option<f64> {
        match self.0 {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }
}

impl core::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) & 3)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// An N-qubit Pauli operator with phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = bits::words_for(n_qubits);
        PauliString { n_qubits, x: vec![0; w], z: vec![0; w], phase: Phase::ONE }
    }

    /// Parses a symbol string such as `"XZI"`; qubit 0 is the leftmost symbol.
    pub fn from_text(s: &str) -> Result<Self, PauliError> {
        let symbols: Vec<char> = s.chars().collect();
        if symbols.is_empty() {
            return Err(PauliError::Empty);
        }
        let mut p = PauliString::identity(symbols.len());
        for (index, &symbol) in symbols.iter().enumerate() {
            let op = Pauli::from_symbol(symbol).ok_or(PauliError::InvalidSymbol { index, symbol })?;
            p.set(index, op);
        }
        Ok(p)
    }

    /// Builds a string from `(qubit, op)` pairs; unlisted qubits are identity.
    pub fn from_ops(n_qubits: usize, ops: &[(usize, Pauli)]) -> Result<Self, PauliError> {
        let mut p = PauliString::identity(n_qubits);
        for &(q, op) in ops {
            if q >= n_qubits {
                return Err(PauliError::QubitOutOfRange { qubit: q, n_qubits });
            }
            p.set(q, op);
        }
        Ok(p)
    }

    pub(crate) fn from_raw(n_qubits: usize, x: Vec<u64>, z: Vec<u64>, phase: Phase) -> Self {
        PauliString { n_qubits, x, z, phase }
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn x_bit(&self, q: usize) -> bool {
        bits::get(&self.x, q)
    }

    pub fn z_bit(&self, q: usize) -> bool {
        bits::get(&self.z, q)
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, op: Pauli) {
        let (x, z) = op.bits();
        bits::set(&mut self.x, q, x);
        bits::set(&mut self.z, q, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|&w| w == 0)
    }

    /// Qubits on which the string acts nontrivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits).filter(|&q| self.x_bit(q) || self.z_bit(q)).collect()
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    /// The same operator with phase `+1`.
    pub fn phase_free(&self) -> PauliString {
        PauliString { phase: Phase::ONE, ..self.clone() }
    }

    fn check_width(&self, other: &PauliString) -> Result<(), PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::SizeMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(())
    }

    /// `self · other` with the accumulated phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        self.check_width(other)?;
        let e = bits::product_exponent(&self.x, &self.z, &other.x, &other.z);
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            phase: self.phase * other.phase * Phase::from_exponent(e),
        })
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        self.check_width(other)?;
        Ok(!bits::anticommute(&self.x, &self.z, &other.x, &other.z))
    }

    /// Symbols only, without the phase prefix.
    pub fn symbols(&self) -> String {
        (0..self.n_qubits).map(|q| self.get(q).symbol()).collect()
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by width, then qubit by qubit from qubit 0 with `I < X < Y < Z`,
/// then by phase.
impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qubits
            .cmp(&other.n_qubits)
            .then_with(|| {
                (0..self.n_qubits)
                    .map(|q| self.get(q).cmp(&other.get(q)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != Phase::ONE {
            write!(f, "{}", self.phase)?;
        }
        f.write_str(&self.symbols())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl core::str::FromStr for PauliString {
    type Err = PauliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PauliString::from_text(s)
    }
}
