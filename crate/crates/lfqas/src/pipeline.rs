//! End-to-end run: layer pool, layer-wise search, redundant-gate
//! elimination and training, collected into one report.

use std::path::PathBuf;
use std::time::Instant;

use lfqas_core::budget::Budget;
use lfqas_core::circuit::{Circuit, GateSet, LayerTemplate};
use lfqas_core::layergen::{build_layer_pool, interaction_graph};
use lfqas_core::pauli::{build_hamiltonian, Hamiltonian, HamiltonianKind, PauliError};
use lfqas_core::search::{
    eliminate_redundancy_with_budget, layerwise_search_with_budget, EliminationStop, EliminationTrace, SearchConfig,
    SearchError, SearchStop, SearchTrace,
};
use lfqas_core::vqe::{train_with_budget, TrainConfig, TrainResult, VqeError};
use serde::{Deserialize, Serialize};

use crate::hamiltonian_file::{read_hamiltonian, HamiltonianFileError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum HamiltonianSource {
    Builtin {
        kind: HamiltonianKind,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        depth: Option<usize>,
    },
    File {
        path: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum SourceError {
    #[error(transparent)]
    Builtin(#[from] PauliError),
    #[error(transparent)]
    File(#[from] HamiltonianFileError),
}

impl HamiltonianSource {
    pub fn load(&self) -> Result<Hamiltonian, SourceError> {
        match self {
            HamiltonianSource::Builtin { kind, n, seed, depth } => Ok(build_hamiltonian(*kind, *n, *seed, *depth)?),
            HamiltonianSource::File { path } => Ok(read_hamiltonian(path)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianDescriptor {
    #[serde(flatten)]
    pub source: HamiltonianSource,
    pub n_qubits: usize,
    pub n_terms: usize,
    pub l1_norm: f64,
}

impl HamiltonianDescriptor {
    pub fn new(source: HamiltonianSource, h: &Hamiltonian) -> Self {
        HamiltonianDescriptor { source, n_qubits: h.n_qubits(), n_terms: h.len(), l1_norm: h.l1_norm() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub gate_set: GateSet,
    pub search: SearchConfig,
    pub train: TrainConfig,
    pub skip_train: bool,
}

impl PipelineConfig {
    /// Library defaults with both seeds set to `seed`.
    pub fn with_seed(gate_set: GateSet, seed: u64) -> Self {
        PipelineConfig {
            gate_set,
            search: SearchConfig { seed, ..Default::default() },
            train: TrainConfig { seed, ..Default::default() },
            skip_train: false,
        }
    }
}

/// Last phase entered. On success this is `Done`; otherwise it names the
/// phase that failed or ran out of time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Layers,
    Search,
    Elimination,
    Training,
    Done,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "ok")]
    Ok,
    /// The wall-clock budget expired.
    #[serde(rename = "O.O.T.")]
    OutOfTime,
    #[serde(rename = "failed")]
    Failed,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub layers_secs: f64,
    pub search_secs: f64,
    pub elimination_secs: f64,
    pub training_secs: f64,
    pub total_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoolSummary {
    pub first_pairs: Vec<(usize, usize)>,
    pub second_pairs: Vec<(usize, usize)>,
    pub templates: Vec<LayerTemplate>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub status: Status,
    pub phase: Phase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub hamiltonian: HamiltonianDescriptor,
    pub config: PipelineConfig,
    pub pool: Option<PoolSummary>,
    /// Chosen candidate's relative fluctuation at each search step.
    pub rf_history: Vec<f64>,
    pub search: Option<SearchTrace>,
    pub searched_circuit: Option<Circuit>,
    pub searched_gate_count: Option<usize>,
    pub elimination: Option<EliminationTrace>,
    /// The circuit after elimination.
    pub circuit: Option<Circuit>,
    pub gate_count: Option<usize>,
    pub param_count: Option<usize>,
    pub training: Option<TrainResult>,
    /// Best-restart `E/E₀`, copied from `training`.
    pub e_ratio: Option<f64>,
    pub timings: Timings,
}

impl PipelineReport {
    fn new(hamiltonian: HamiltonianDescriptor, config: PipelineConfig) -> Self {
        PipelineReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            status: Status::Ok,
            phase: Phase::Layers,
            error: None,
            hamiltonian,
            config,
            pool: None,
            rf_history: Vec::new(),
            search: None,
            searched_circuit: None,
            searched_gate_count: None,
            elimination: None,
            circuit: None,
            gate_count: None,
            param_count: None,
            training: None,
            e_ratio: None,
            timings: Timings::default(),
        }
    }

    fn fail(mut self, error: impl ToString) -> Self {
        self.status = Status::Failed;
        self.error = Some(error.to_string());
        self
    }

    fn out_of_time(mut self) -> Self {
        self.status = Status::OutOfTime;
        self.error = Some("wall-clock budget expired".into());
        self
    }
}

/// Runs every phase in order and stops at the first failure or expiry.
/// The report always describes how far the run got.
pub fn run_pipeline(
    h: &Hamiltonian,
    hamiltonian: HamiltonianDescriptor,
    cfg: &PipelineConfig,
    budget: &dyn Budget,
) -> PipelineReport {
    let started = Instant::now();
    let mut report = run_phases(h, PipelineReport::new(hamiltonian, cfg.clone()), cfg, budget);
    report.timings.total_secs = started.elapsed().as_secs_f64();
    report
}

fn run_phases(h: &Hamiltonian, mut report: PipelineReport, cfg: &PipelineConfig, budget: &dyn Budget) -> PipelineReport {
    let clock = Instant::now();
    let pool = match build_layer_pool(cfg.gate_set, &interaction_graph(h))
        .and_then(|p| p.require_two_qubit_layers(cfg.gate_set).map(|()| p))
    {
        Ok(p) => p,
        Err(e) => return report.fail(e),
    };
    let (first, second) = pool.pairs();
    report.pool =
        Some(PoolSummary { first_pairs: first.to_vec(), second_pairs: second.to_vec(), templates: pool.templates().to_vec() });
    report.timings.layers_secs = clock.elapsed().as_secs_f64();

    report.phase = Phase::Search;
    let clock = Instant::now();
    let searched = layerwise_search_with_budget(h, &pool, &cfg.search, budget);
    report.timings.search_secs = clock.elapsed().as_secs_f64();
    let (circuit, trace) = match searched {
        Ok(r) => r,
        Err(SearchError::BudgetExpired) => return report.out_of_time(),
        Err(e) => return report.fail(e),
    };
    report.rf_history = trace.steps.iter().filter_map(|s| s.candidates[s.chosen].rf).collect();
    let expired = trace.stop == SearchStop::BudgetExpired;
    report.search = Some(trace);
    report.searched_gate_count = Some(circuit.gate_count());
    report.searched_circuit = Some(circuit.clone());
    if expired {
        return report.out_of_time();
    }

    report.phase = Phase::Elimination;
    let clock = Instant::now();
    let eliminated = eliminate_redundancy_with_budget(&circuit, h, &cfg.search, budget);
    report.timings.elimination_secs = clock.elapsed().as_secs_f64();
    let (circuit, log) = match eliminated {
        Ok(r) => r,
        Err(e) => return report.fail(e),
    };
    let expired = log.stop == EliminationStop::BudgetExpired;
    report.elimination = Some(log);
    report.gate_count = Some(circuit.gate_count());
    report.param_count = Some(circuit.param_count());
    report.circuit = Some(circuit.clone());
    if expired {
        return report.out_of_time();
    }
    if cfg.skip_train {
        report.phase = Phase::Done;
        return report;
    }

    report.phase = Phase::Training;
    let clock = Instant::now();
    let trained = train_with_budget(&circuit, h, &cfg.train, budget);
    report.timings.training_secs = clock.elapsed().as_secs_f64();
    match trained {
        Ok(result) => {
            let interrupted = result.interrupted;
            report.e_ratio = Some(result.e_ratio);
            report.training = Some(result);
            if interrupted {
                return report.out_of_time();
            }
        }
        Err(VqeError::BudgetExpired) => return report.out_of_time(),
        Err(e) => return report.fail(e),
    }
    report.phase = Phase::Done;
    report
}
