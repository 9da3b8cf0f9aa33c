use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{PauliError, PauliString};

/// Coefficients with magnitude below this are dropped on construction.
pub const COEFF_DROP_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub pauli: PauliString,
}

/// `H = Σ_j λ_j h_j` with real coefficients and phase-free Pauli strings.
///
/// Terms are kept merged, sorted, and free of near-zero coefficients, so two
/// Hamiltonians describing the same operator compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    n_qubits: usize,
    terms: Vec<Term>,
    l1_norm: f64,
}

impl Hamiltonian {
    /// Merges duplicate strings and drops coefficients below
    /// [`COEFF_DROP_THRESHOLD`]. A `-1` phase on a string is folded into its
    /// coefficient; imaginary phases are rejected.
    pub fn new<I>(n_qubits: usize, terms: I) -> Result<Self, PauliError>
    where
        I: IntoIterator<Item = (f64, PauliString)>,
    {
        let mut merged: BTreeMap<PauliString, f64> = BTreeMap::new();
        for (coeff, pauli) in terms {
            if !coeff.is_finite() {
                return Err(PauliError::NonFiniteCoefficient(coeff));
            }
            if pauli.n_qubits() != n_qubits {
                return Err(PauliError::SizeMismatch { left: n_qubits, right: pauli.n_qubits() });
            }
            let sign = pauli
                .phase()
                .sign()
                .ok_or_else(|| PauliError::NonHermitianTerm(pauli.to_string()))?;
            *merged.entry(pauli.phase_free()).or_insert(0.0) += sign * coeff;
        }
        Ok(Self::from_merged(n_qubits, merged))
    }

    pub(crate) fn from_merged(n_qubits: usize, merged: BTreeMap<PauliString, f64>) -> Self {
        let terms: Vec<Term> = merged
            .into_iter()
            .filter(|(_, c)| c.abs() >= COEFF_DROP_THRESHOLD)
            .map(|(pauli, coeff)| Term { coeff, pauli })
            .collect();
        let l1_norm = terms.iter().map(|t| t.coeff.abs()).sum();
        Hamiltonian { n_qubits, terms, l1_norm }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `‖λ‖₁ = Σ_j |λ_j|`.
    pub fn l1_norm(&self) -> f64 {
        self.l1_norm
    }

    /// Every coefficient multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Hamiltonian {
        let merged = self.terms.iter().map(|t| (t.pauli.clone(), c * t.coeff)).collect();
        Self::from_merged(self.n_qubits, merged)
    }

    /// Coefficients divided by `‖λ‖₁`, in term order.
    pub fn normalized_coefficients(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.coeff / self.l1_norm).collect()
    }
}
