//! Verification backend: dense statevector simulation, gradients, Adam
//! training, and exact ground energies for small registers.

mod gradient;
mod ground;
mod statevector;
mod train;

pub use gradient::gradient;
pub use ground::{exact_ground_energy, GROUND_RESIDUAL_TOL};
pub use statevector::{energy, pauli_expectation, simulate, State, MAX_DENSE_QUBITS};
pub use train::{train, train_with_budget, RestartOutcome, TrainConfig, TrainResult};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VqeError {
    #[error("{n_qubits} qubits exceed the dense simulation limit of {max}")]
    TooWide { n_qubits: usize, max: usize },
    #[error("expected {expected} parameters, got {got}")]
    ParamLength { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid training configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("ground-state solver did not converge (residual {residual:e})")]
    NotConverged { residual: f64 },
    #[error("time budget expired before any restart finished")]
    BudgetExpired,
}

/// Loss evaluator reused across many parameter vectors.
pub(crate) struct DenseEvaluator {
    circuit: statevector::DenseCircuit,
    hamiltonian: statevector::DenseHamiltonian,
}

impl DenseEvaluator {
    pub fn new(c: &crate::circuit::Circuit, h: &crate::pauli::Hamiltonian) -> Result<Self, VqeError> {
        let circuit = statevector::DenseCircuit::new(c)?;
        let hamiltonian = statevector::DenseHamiltonian::new(h)?;
        gradient::check_pair(&circuit, &hamiltonian)?;
        Ok(DenseEvaluator { circuit, hamiltonian })
    }

    pub fn energy(&self, params: &[f64]) -> f64 {
        self.hamiltonian.energy(&self.circuit.run(params).expect("parameter count checked by caller"))
    }
}
