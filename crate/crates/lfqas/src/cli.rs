//! `lfqas` command line. Exit status is 0 on success, 1 on runtime failure
//! (including an expired wall-clock budget) and 2 on usage errors, which
//! include unreadable or malformed input files.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lfqas_core::circuit::{Circuit, GateSet};
use lfqas_core::fluctuation::estimate_rf;
use lfqas_core::layergen::{build_layer_pool, interaction_graph};
use lfqas_core::pauli::{Hamiltonian, HamiltonianKind};
use lfqas_core::search::{
    eliminate_redundancy_with_budget, layerwise_search_with_budget, EliminationStop, SearchConfig, SearchError,
    SearchStop, TolDrop,
};
use lfqas_core::vqe::{train_with_budget, TrainConfig, VqeError};
use serde::{Deserialize, Serialize};

use crate::circuit_file::{circuit_to_json, read_circuit};
use crate::deadline::Deadline;
use crate::hamiltonian_file::format_hamiltonian;
use crate::oracle::oracle_check;
use crate::pipeline::{run_pipeline, HamiltonianDescriptor, HamiltonianSource, PipelineConfig, Status};
use crate::tables::{write_elimination_trace, write_search_trace, write_training_curves};

#[derive(Debug, Parser)]
#[command(name = "lfqas", version, about = "Training-free quantum architecture search by relative landscape fluctuation")]
struct Cli {
    /// Worker threads for predictor sampling and training restarts [default: all cores]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a benchmark Hamiltonian in the text format
    Hamiltonian(HamiltonianCmd),
    /// Show the interaction graph, matchings and layer pool
    Layers(LayersCmd),
    /// Estimate the relative fluctuation of a circuit
    Score(ScoreCmd),
    /// Grow a circuit layer by layer
    Search(SearchCmd),
    /// Remove redundant gates from a circuit
    Eliminate(EliminateCmd),
    /// Train a circuit with Adam from random restarts
    Train(TrainCmd),
    /// Run layer pool, search, elimination and training end to end
    Pipeline(PipelineCmd),
    /// Compare quarter-turn enumeration against continuous-angle sampling
    OracleCheck(OracleCmd),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Cluster,
    Heisenberg,
    Ising,
    Scrambled,
}

impl From<KindArg> for HamiltonianKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Cluster => HamiltonianKind::Cluster,
            KindArg::Heisenberg => HamiltonianKind::Heisenberg,
            KindArg::Ising => HamiltonianKind::Ising,
            KindArg::Scrambled => HamiltonianKind::Scrambled,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GateSetArg {
    Rxyz2xyz,
    Rxyz,
    #[value(name = "zz_ry")]
    ZzRy,
}

impl From<GateSetArg> for GateSet {
    fn from(g: GateSetArg) -> Self {
        match g {
            GateSetArg::Rxyz2xyz => GateSet::Rxyz2xyz,
            GateSetArg::Rxyz => GateSet::Rxyz,
            GateSetArg::ZzRy => GateSet::ZzRy,
        }
    }
}

/// Brickwall depth used for scrambled Hamiltonians when none is given.
const DEFAULT_SCRAMBLE_DEPTH: usize = 1;

#[derive(Debug, Args)]
struct HamiltonianCmd {
    /// Benchmark model
    #[arg(long)]
    kind: KindArg,
    /// Number of qubits (at least 2)
    #[arg(long)]
    n: usize,
    /// Scrambling seed; required for `scrambled`
    #[arg(long)]
    seed: Option<u64>,
    /// Scrambling brickwall depth [default: 1]
    #[arg(long)]
    depth: Option<usize>,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HamiltonianArgs {
    /// Hamiltonian text file
    #[arg(long, conflicts_with = "kind")]
    hamiltonian: Option<PathBuf>,
    /// Benchmark model instead of a file
    #[arg(long)]
    kind: Option<KindArg>,
    /// Number of qubits for --kind
    #[arg(long, requires = "kind")]
    n: Option<usize>,
    /// Scrambling seed for --kind scrambled
    #[arg(long, requires = "kind")]
    ham_seed: Option<u64>,
    /// Scrambling brickwall depth for --kind scrambled [default: 1]
    #[arg(long, requires = "kind")]
    depth: Option<usize>,
}

#[derive(Debug, Args)]
struct SeedArg {
    /// Master seed for sampling, search and training
    #[arg(long, env = "LFQAS_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct TimeoutArg {
    /// Wall-clock budget in seconds; on expiry partial results are written and the exit status is 1
    #[arg(long, default_value_t = 3000.0)]
    timeout_secs: f64,
}

impl TimeoutArg {
    fn deadline(&self) -> Result<Deadline, Failure> {
        let limit = Duration::try_from_secs_f64(self.timeout_secs)
            .map_err(|_| Failure::Usage(format!("--timeout-secs must be a non-negative number, got {}", self.timeout_secs)))?;
        Ok(Deadline::new(Some(limit)))
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Repetition decay base in (0, 1]
    #[arg(long, default_value_t = SearchConfig::default().delta)]
    delta: f64,
    /// Trailing layers inspected for repetitions
    #[arg(long, default_value_t = SearchConfig::default().window)]
    window: usize,
    /// Growth stops once the chosen score exceeds 1 - epsilon
    #[arg(long, default_value_t = SearchConfig::default().epsilon)]
    epsilon: f64,
    /// Minimum number of layers before growth may stop
    #[arg(long, default_value_t = SearchConfig::default().l_min)]
    l_min: usize,
    /// Maximum number of layers
    #[arg(long, default_value_t = SearchConfig::default().l_max)]
    l_max: usize,
    /// Quarter-turn samples per estimate
    #[arg(long, default_value_t = SearchConfig::default().n_samples)]
    samples: usize,
    /// Fraction of gates elimination may remove, in [0, 1)
    #[arg(long, default_value_t = SearchConfig::default().elimination_ratio)]
    elimination_ratio: f64,
    /// Cap on elimination rounds [default: implied by the ratio]
    #[arg(long)]
    elimination_rounds: Option<usize>,
    /// Allowed score drop per removal: `stderr`, `disabled`, or a number
    #[arg(long, default_value = "stderr", value_parser = parse_tol_drop)]
    tol_drop: TolDrop,
}

fn parse_tol_drop(s: &str) -> Result<TolDrop, String> {
    match s {
        "stderr" => Ok(TolDrop::Stderr),
        "disabled" => Ok(TolDrop::Disabled),
        _ => s
            .parse::<f64>()
            .map(TolDrop::Fixed)
            .map_err(|_| format!("expected `stderr`, `disabled` or a number, got {s:?}")),
    }
}

impl SearchArgs {
    fn config(&self, seed: u64) -> Result<SearchConfig, Failure> {
        let cfg = SearchConfig {
            delta: self.delta,
            window: self.window,
            epsilon: self.epsilon,
            l_min: self.l_min,
            l_max: self.l_max,
            n_samples: self.samples,
            seed,
            elimination_ratio: self.elimination_ratio,
            elimination_rounds: self.elimination_rounds,
            tol_drop: self.tol_drop,
        };
        cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Adam learning rate
    #[arg(long, default_value_t = TrainConfig::default().learning_rate)]
    lr: f64,
    /// Iteration cap per restart
    #[arg(long, default_value_t = TrainConfig::default().max_iters)]
    max_iters: usize,
    /// Independent random restarts
    #[arg(long, default_value_t = TrainConfig::default().n_restarts)]
    restarts: usize,
    /// Loss-change threshold for the plateau stop
    #[arg(long, default_value_t = TrainConfig::default().tol)]
    tol: f64,
    /// Seed for restart initializations [default: --seed]
    #[arg(long)]
    train_seed: Option<u64>,
}

impl TrainArgs {
    fn config(&self, seed: u64) -> Result<TrainConfig, Failure> {
        if self.restarts == 0 {
            return Err(Failure::Usage("--restarts must be at least 1".into()));
        }
        if !(self.lr > 0.0 && self.lr.is_finite()) {
            return Err(Failure::Usage("--lr must be positive".into()));
        }
        if !(self.tol >= 0.0) {
            return Err(Failure::Usage("--tol must be non-negative".into()));
        }
        Ok(TrainConfig {
            learning_rate: self.lr,
            max_iters: self.max_iters,
            n_restarts: self.restarts,
            tol: self.tol,
            seed: self.train_seed.unwrap_or(seed),
        })
    }
}

#[derive(Debug, Args)]
struct LayersCmd {
    #[command(flatten)]
    ham: HamiltonianArgs,
    /// Native gate set
    #[arg(long, value_enum, default_value = "rxyz2xyz")]
    gate_set: GateSetArg,
    /// Output JSON file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScoreCmd {
    /// Circuit JSON file
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    ham: HamiltonianArgs,
    /// Quarter-turn samples
    #[arg(long, default_value_t = SearchConfig::default().n_samples)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// Output JSON file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchCmd {
    #[command(flatten)]
    ham: HamiltonianArgs,
    /// Native gate set
    #[arg(long, value_enum, default_value = "rxyz2xyz")]
    gate_set: GateSetArg,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    timeout: TimeoutArg,
    /// Output circuit JSON file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-candidate CSV trace
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Full JSON trace
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EliminateCmd {
    /// Circuit JSON file
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    ham: HamiltonianArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    timeout: TimeoutArg,
    /// Output circuit JSON file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-candidate CSV trace
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Full JSON log
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TrainCmd {
    /// Circuit JSON file
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    ham: HamiltonianArgs,
    #[command(flatten)]
    train: TrainArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    timeout: TimeoutArg,
    /// Output result JSON file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Training curves CSV (restart, iteration, energy)
    #[arg(long)]
    curve: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PipelineCmd {
    #[command(flatten)]
    ham: HamiltonianArgs,
    /// Native gate set
    #[arg(long, value_enum, default_value = "rxyz2xyz")]
    gate_set: GateSetArg,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    train: TrainArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    timeout: TimeoutArg,
    /// Stop after elimination
    #[arg(long)]
    skip_train: bool,
    /// Rerun with the Hamiltonian and configuration recorded in a report;
    /// other Hamiltonian and configuration flags are ignored
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Directory for report.json, circuit JSON files and CSV traces
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct OracleCmd {
    /// Number of random circuits
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    n_trials: u64,
    /// Continuous-angle samples per circuit
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// Output JSON file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    fn out_of_time(what: &str) -> Self {
        Failure::Runtime(format!("O.O.T.: wall-clock budget expired during {what}; partial results written"))
    }
}

impl HamiltonianArgs {
    fn source(&self) -> Result<HamiltonianSource, Failure> {
        match (&self.hamiltonian, self.kind) {
            (Some(path), None) => Ok(HamiltonianSource::File { path: path.clone() }),
            (None, Some(kind)) => {
                let n = self.n.ok_or_else(|| Failure::Usage("--kind needs --n".into()))?;
                let (seed, depth) = match kind {
                    KindArg::Scrambled => {
                        let seed = self
                            .ham_seed
                            .ok_or_else(|| Failure::Usage("--kind scrambled needs --ham-seed".into()))?;
                        (Some(seed), Some(self.depth.unwrap_or(DEFAULT_SCRAMBLE_DEPTH)))
                    }
                    _ if self.ham_seed.is_some() || self.depth.is_some() => {
                        return Err(Failure::Usage("--ham-seed and --depth only apply to --kind scrambled".into()))
                    }
                    _ => (None, None),
                };
                Ok(HamiltonianSource::Builtin { kind: kind.into(), n, seed, depth })
            }
            _ => Err(Failure::Usage("give either --hamiltonian <file> or --kind with --n".into())),
        }
    }

    fn load(&self) -> Result<(Hamiltonian, HamiltonianDescriptor), Failure> {
        load_source(self.source()?)
    }
}

fn load_source(source: HamiltonianSource) -> Result<(Hamiltonian, HamiltonianDescriptor), Failure> {
    let h = source.load().map_err(|e| Failure::Usage(e.to_string()))?;
    let d = HamiltonianDescriptor::new(source, &h);
    Ok((h, d))
}

fn load_circuit(path: &Path, h: &Hamiltonian) -> Result<Circuit, Failure> {
    let c = read_circuit(path).map_err(|e| Failure::Usage(e.to_string()))?;
    if c.n_qubits() != h.n_qubits() {
        return Err(Failure::Usage(format!(
            "circuit has {} qubits but the Hamiltonian has {}",
            c.n_qubits(),
            h.n_qubits()
        )));
    }
    Ok(c)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// Writes `text` to `out`, or to stdout when no path is given.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_file(p, text.as_bytes()),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Runtime(format!("cannot write to stdout: {e}"))),
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> csv::Result<()>) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    f(&mut buf).map_err(|e| Failure::Runtime(e.to_string()))?;
    Ok(buf)
}

fn cmd_hamiltonian(cmd: HamiltonianCmd) -> Result<(), Failure> {
    let args = HamiltonianArgs {
        hamiltonian: None,
        kind: Some(cmd.kind),
        n: Some(cmd.n),
        ham_seed: cmd.seed,
        depth: cmd.depth,
    };
    let source = args.source().map_err(|e| match e {
        Failure::Usage(m) => Failure::Usage(m.replace("--ham-seed", "--seed")),
        other => other,
    })?;
    let (h, _) = load_source(source)?;
    emit(cmd.out.as_deref(), &format_hamiltonian(&h))
}

#[derive(Serialize)]
struct LayersOutput {
    n_qubits: usize,
    gate_set: GateSet,
    edges: Vec<(usize, usize, f64)>,
    first_pairs: Vec<(usize, usize)>,
    second_pairs: Vec<(usize, usize)>,
    templates: Vec<lfqas_core::circuit::LayerTemplate>,
}

fn cmd_layers(cmd: LayersCmd) -> Result<(), Failure> {
    let (h, _) = cmd.ham.load()?;
    let g = interaction_graph(&h);
    let pool = build_layer_pool(cmd.gate_set.into(), &g).map_err(|e| Failure::Runtime(e.to_string()))?;
    let (first, second) = pool.pairs();
    let out = LayersOutput {
        n_qubits: h.n_qubits(),
        gate_set: cmd.gate_set.into(),
        edges: g.edges().to_vec(),
        first_pairs: first.to_vec(),
        second_pairs: second.to_vec(),
        templates: pool.templates().to_vec(),
    };
    emit(cmd.out.as_deref(), &to_json(&out))
}

#[derive(Serialize)]
struct ScoreOutput {
    sigma: f64,
    sigma0: f64,
    rf: f64,
    stderr: f64,
    n_samples: usize,
    seed: u64,
}

fn cmd_score(cmd: ScoreCmd) -> Result<(), Failure> {
    let (h, _) = cmd.ham.load()?;
    let c = load_circuit(&cmd.circuit, &h)?;
    if cmd.samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    let e = estimate_rf(&c, &h, cmd.samples, cmd.seed.seed).map_err(|e| Failure::Runtime(e.to_string()))?;
    let out = ScoreOutput { sigma: e.sigma, sigma0: e.sigma0, rf: e.rf, stderr: e.stderr_rf, n_samples: e.n_samples, seed: e.seed };
    emit(cmd.out.as_deref(), &to_json(&out))
}

fn cmd_search(cmd: SearchCmd) -> Result<(), Failure> {
    let (h, _) = cmd.ham.load()?;
    let cfg = cmd.search.config(cmd.seed.seed)?;
    let deadline = cmd.timeout.deadline()?;
    let gate_set: GateSet = cmd.gate_set.into();
    let pool = build_layer_pool(gate_set, &interaction_graph(&h))
        .and_then(|p| p.require_two_qubit_layers(gate_set).map(|()| p))
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let (c, trace) = match layerwise_search_with_budget(&h, &pool, &cfg, &deadline) {
        Ok(r) => r,
        Err(SearchError::BudgetExpired) => return Err(Failure::out_of_time("search")),
        Err(e) => return Err(Failure::Runtime(e.to_string())),
    };
    if let Some(p) = &cmd.trace {
        write_file(p, &csv_bytes(|b| write_search_trace(&trace, b))?)?;
    }
    if let Some(p) = &cmd.log {
        write_file(p, to_json(&trace).as_bytes())?;
    }
    emit(cmd.out.as_deref(), &circuit_to_json(&c))?;
    if trace.stop == SearchStop::BudgetExpired {
        return Err(Failure::out_of_time("search"));
    }
    Ok(())
}

fn cmd_eliminate(cmd: EliminateCmd) -> Result<(), Failure> {
    let (h, _) = cmd.ham.load()?;
    let c = load_circuit(&cmd.circuit, &h)?;
    let cfg = cmd.search.config(cmd.seed.seed)?;
    let deadline = cmd.timeout.deadline()?;
    let (pruned, log) =
        eliminate_redundancy_with_budget(&c, &h, &cfg, &deadline).map_err(|e| Failure::Runtime(e.to_string()))?;
    if let Some(p) = &cmd.trace {
        write_file(p, &csv_bytes(|b| write_elimination_trace(&log, b))?)?;
    }
    if let Some(p) = &cmd.log {
        write_file(p, to_json(&log).as_bytes())?;
    }
    emit(cmd.out.as_deref(), &circuit_to_json(&pruned))?;
    if log.stop == EliminationStop::BudgetExpired {
        return Err(Failure::out_of_time("elimination"));
    }
    Ok(())
}

fn cmd_train(cmd: TrainCmd) -> Result<(), Failure> {
    let (h, _) = cmd.ham.load()?;
    let c = load_circuit(&cmd.circuit, &h)?;
    let cfg = cmd.train.config(cmd.seed.seed)?;
    let deadline = cmd.timeout.deadline()?;
    let result = match train_with_budget(&c, &h, &cfg, &deadline) {
        Ok(r) => r,
        Err(VqeError::BudgetExpired) => return Err(Failure::out_of_time("training")),
        Err(e) => return Err(Failure::Runtime(e.to_string())),
    };
    if let Some(p) = &cmd.curve {
        write_file(p, &csv_bytes(|b| write_training_curves(&result, b))?)?;
    }
    emit(cmd.out.as_deref(), &to_json(&result))?;
    if result.interrupted {
        return Err(Failure::out_of_time("training"));
    }
    Ok(())
}

/// The part of a report needed to rerun it.
#[derive(Deserialize)]
struct ReplayInput {
    hamiltonian: HamiltonianDescriptor,
    config: PipelineConfig,
}

fn cmd_pipeline(cmd: PipelineCmd) -> Result<(), Failure> {
    let (source, cfg) = match &cmd.replay {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let r: ReplayInput = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{} is not a pipeline report: {e}", path.display())))?;
            r.config.search.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            (r.hamiltonian.source, r.config)
        }
        None => {
            let seed = cmd.seed.seed;
            let cfg = PipelineConfig {
                gate_set: cmd.gate_set.into(),
                search: cmd.search.config(seed)?,
                train: cmd.train.config(seed)?,
                skip_train: cmd.skip_train,
            };
            (cmd.ham.source()?, cfg)
        }
    };
    let (h, descriptor) = load_source(source)?;
    let deadline = cmd.timeout.deadline()?;
    let report = run_pipeline(&h, descriptor, &cfg, &deadline);

    let dir = &cmd.out_dir;
    fs::create_dir_all(dir).map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", dir.display())))?;
    write_file(&dir.join("report.json"), to_json(&report).as_bytes())?;
    if let Some(c) = &report.searched_circuit {
        write_file(&dir.join("searched_circuit.json"), circuit_to_json(c).as_bytes())?;
    }
    if let Some(c) = &report.circuit {
        write_file(&dir.join("circuit.json"), circuit_to_json(c).as_bytes())?;
    }
    if let Some(t) = &report.search {
        write_file(&dir.join("search_trace.csv"), &csv_bytes(|b| write_search_trace(t, b))?)?;
    }
    if let Some(t) = &report.elimination {
        write_file(&dir.join("elimination.csv"), &csv_bytes(|b| write_elimination_trace(t, b))?)?;
    }
    if let Some(t) = &report.training {
        write_file(&dir.join("training_curve.csv"), &csv_bytes(|b| write_training_curves(t, b))?)?;
    }
    let phase = serde_json::to_value(report.phase).expect("phase serializes");
    match report.status {
        Status::Ok => {
            let summary = match (report.gate_count, report.e_ratio) {
                (Some(g), Some(e)) => format!("gates {g}, E/E0 {e:.4}"),
                (Some(g), None) => format!("gates {g}"),
                _ => String::new(),
            };
            println!("pipeline finished: {summary}");
            Ok(())
        }
        Status::OutOfTime => Err(Failure::out_of_time(phase.as_str().unwrap_or("pipeline"))),
        Status::Failed => Err(Failure::Runtime(format!(
            "{} phase failed: {}",
            phase.as_str().unwrap_or("pipeline"),
            report.error.as_deref().unwrap_or("unknown error")
        ))),
    }
}

fn cmd_oracle(cmd: OracleCmd) -> Result<(), Failure> {
    if cmd.samples < lfqas_core::fluctuation::MIN_CONTINUOUS_SAMPLES {
        return Err(Failure::Usage(format!(
            "--samples must be at least {}",
            lfqas_core::fluctuation::MIN_CONTINUOUS_SAMPLES
        )));
    }
    let summary = oracle_check(cmd.n_trials, cmd.seed.seed, cmd.samples).map_err(|e| Failure::Runtime(e.to_string()))?;
    emit(cmd.out.as_deref(), &to_json(&summary))?;
    eprintln!("oracle check: {}/{} trials within 3 standard errors", summary.passed, summary.n_trials);
    // Three standard errors leave about 0.3% false alarms; more than 1% is a failure.
    if summary.failure_rate > 0.01 {
        return Err(Failure::Runtime(format!("failure rate {:.3} exceeds 0.01", summary.failure_rate)));
    }
    Ok(())
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Hamiltonian(c) => cmd_hamiltonian(c),
        Command::Layers(c) => cmd_layers(c),
        Command::Score(c) => cmd_score(c),
        Command::Search(c) => cmd_search(c),
        Command::Eliminate(c) => cmd_eliminate(c),
        Command::Train(c) => cmd_train(c),
        Command::Pipeline(c) => cmd_pipeline(c),
        Command::OracleCheck(c) => cmd_oracle(c),
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w as usize).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(Failure::Runtime(format!("cannot start {w} workers: {e}"))),
        },
        None => dispatch(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
