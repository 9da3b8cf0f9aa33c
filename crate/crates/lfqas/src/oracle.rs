//! Cross-check of the quarter-turn predictor against continuous-angle
//! sampling: both estimate the same landscape variance, so the exact
//! enumeration must fall within three standard errors of the Monte Carlo
//! estimate.

use lfqas_core::circuit::{Circuit, GateSet};
use lfqas_core::fluctuation::{continuous_rf_montecarlo, exact_rf_enumeration, FluctuationError};
use lfqas_core::layergen::{build_layer_pool, interaction_graph};
use lfqas_core::pauli::{build_hamiltonian, Hamiltonian, HamiltonianKind};
use lfqas_core::rng;
use rand::Rng;
use serde::Serialize;

const ORACLE_KEY: u64 = 0x4f52_4143;
pub const MAX_QUBITS: usize = 4;
pub const MAX_PARAMS: usize = 6;
/// Absolute slack added to the 3σ bound so that exactly zero variances
/// compare equal despite rounding.
pub const FLOAT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct OracleCase {
    pub gate_set: GateSet,
    pub kind: HamiltonianKind,
    pub hamiltonian: Hamiltonian,
    pub circuit: Circuit,
}

/// Trial `trial` of `seed`: a benchmark Hamiltonian on 2 to 4 qubits and a
/// circuit of 1 to 4 random layers from its native-gate-set pool, with
/// between 1 and 6 parameters.
pub fn random_case(seed: u64, trial: u64) -> OracleCase {
    let mut r = rng::stream(rng::derive_seed(seed, &[ORACLE_KEY]), trial);
    let sets = [GateSet::Rxyz2xyz, GateSet::Rxyz, GateSet::ZzRy];
    let kinds = [HamiltonianKind::Cluster, HamiltonianKind::Heisenberg, HamiltonianKind::Ising];
    loop {
        let n = r.random_range(2..=MAX_QUBITS);
        let gate_set = sets[r.random_range(0..sets.len())];
        let kind = kinds[r.random_range(0..kinds.len())];
        let hamiltonian = build_hamiltonian(kind, n, None, None).expect("n >= 2");
        let pool = build_layer_pool(gate_set, &interaction_graph(&hamiltonian)).expect("chains have edges");
        let depth = r.random_range(1..=4);
        let circuit = (0..depth).fold(Circuit::new(n), |c, _| {
            c.append_layer(&pool.templates()[r.random_range(0..pool.len())]).expect("pool templates fit")
        });
        if (1..=MAX_PARAMS).contains(&circuit.param_count()) {
            return OracleCase { gate_set, kind, hamiltonian, circuit };
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleTrial {
    pub trial: u64,
    pub n_qubits: usize,
    pub gate_set: GateSet,
    pub hamiltonian: HamiltonianKind,
    pub param_count: usize,
    pub gate_count: usize,
    pub exact_rf: f64,
    pub continuous_rf: f64,
    pub stderr: f64,
    pub within: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub n_trials: u64,
    pub seed: u64,
    pub samples: usize,
    pub passed: u64,
    pub failed: u64,
    pub failure_rate: f64,
    pub trials: Vec<OracleTrial>,
}

pub fn check_case(case: &OracleCase, samples: usize, seed: u64, trial: u64) -> Result<OracleTrial, FluctuationError> {
    let exact = exact_rf_enumeration(&case.circuit, &case.hamiltonian)?;
    let mc_seed = rng::derive_seed(seed, &[ORACLE_KEY, trial]);
    let (rf, stderr) = continuous_rf_montecarlo(&case.circuit, &case.hamiltonian, samples, mc_seed)?;
    Ok(OracleTrial {
        trial,
        n_qubits: case.circuit.n_qubits(),
        gate_set: case.gate_set,
        hamiltonian: case.kind,
        param_count: case.circuit.param_count(),
        gate_count: case.circuit.gate_count(),
        exact_rf: exact,
        continuous_rf: rf,
        stderr,
        within: (exact - rf).abs() <= 3.0 * stderr + FLOAT_SLACK,
    })
}

pub fn oracle_check(n_trials: u64, seed: u64, samples: usize) -> Result<OracleSummary, FluctuationError> {
    let trials = (0..n_trials)
        .map(|t| check_case(&random_case(seed, t), samples, seed, t))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = trials.iter().filter(|t| t.within).count() as u64;
    let failed = n_trials - passed;
    Ok(OracleSummary {
        n_trials,
        seed,
        samples,
        passed,
        failed,
        failure_rate: if n_trials == 0 { 0.0 } else { failed as f64 / n_trials as f64 },
        trials,
    })
}
