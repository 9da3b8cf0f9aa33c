//! Layer-wise circuit growth scored by relative fluctuation with a
//! repetition decay, followed by greedy redundant-gate elimination.

use alloc::string::String;
use alloc::vec::Vec;

use crate::budget::{Budget, Unlimited};
use crate::circuit::{Circuit, CircuitError, GateKind, GatePosition, LayerTemplate};
use crate::fluctuation::{estimate_rf, FluctuationError};
use crate::layergen::LayerPool;
use crate::math;
use crate::pauli::Hamiltonian;
use crate::rng;

const SEARCH_KEY: u64 = 0x5345_4152_4348;
const ELIMINATION_KEY: u64 = 0x454c_494d;
/// Counter slot for the current circuit's estimate in an elimination round.
const CURRENT_SLOT: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("layer pool is empty")]
    EmptyPool,
    #[error("no template in the pool can be scored at step {step}")]
    NoEligibleCandidate { step: usize },
    #[error("time budget expired before the first layer was chosen")]
    BudgetExpired,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Fluctuation(#[from] FluctuationError),
}

/// Allowed drop in the elimination score before removals stop.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TolDrop {
    /// One bootstrap standard error of the current circuit's estimate.
    Stderr,
    Fixed(f64),
    /// Never stop early; remove the full budget.
    Disabled,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchConfig {
    /// Decay base `δ ∈ (0, 1]`.
    pub delta: f64,
    /// Number of trailing layers inspected for repetitions.
    pub window: usize,
    /// Growth stops once the chosen score exceeds `1 - epsilon`.
    pub epsilon: f64,
    pub l_min: usize,
    pub l_max: usize,
    pub n_samples: usize,
    pub seed: u64,
    /// Fraction of gates elimination may remove, in `[0, 1)`.
    pub elimination_ratio: f64,
    /// Cap on removal rounds; `None` means the budget implied by the ratio.
    pub elimination_rounds: Option<usize>,
    pub tol_drop: TolDrop,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            delta: 0.8,
            window: 5,
            epsilon: 0.05,
            l_min: 4,
            l_max: 10,
            n_samples: 1000,
            seed: 0,
            elimination_ratio: 0.2,
            elimination_rounds: None,
            tol_drop: TolDrop::Stderr,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(SearchError::InvalidConfig("delta must lie in (0, 1]"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(SearchError::InvalidConfig("epsilon must lie in (0, 1)"));
        }
        if self.l_max == 0 || self.l_min > self.l_max {
            return Err(SearchError::InvalidConfig("layer bounds need 1 <= l_max and l_min <= l_max"));
        }
        if self.n_samples < 2 {
            return Err(SearchError::InvalidConfig("n_samples must be at least 2"));
        }
        if !(self.elimination_ratio >= 0.0 && self.elimination_ratio < 1.0) {
            return Err(SearchError::InvalidConfig("elimination_ratio must lie in [0, 1)"));
        }
        if let TolDrop::Fixed(t) = self.tol_drop {
            if !(t >= 0.0) {
                return Err(SearchError::InvalidConfig("tol_drop must be non-negative"));
            }
        }
        Ok(())
    }
}

/// `max(0, min(rf, 2 - rf))`: rewards closeness to 1 from either side.
pub fn penalized_rf(rf: f64) -> f64 {
    rf.min(2.0 - rf).max(0.0)
}

/// `δ^d` where `d` counts `label` among the last `window` layer labels.
pub fn decay_factor(c: &Circuit, label: &str, cfg: &SearchConfig) -> f64 {
    let labels: Vec<&str> = c.labels().collect();
    let start = labels.len().saturating_sub(cfg.window);
    let d = labels[start..].iter().filter(|l| **l == label).count();
    math::powi(cfg.delta, d as u32)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CandidateScore {
    pub label: String,
    pub alpha: f64,
    /// `None` when the appended circuit has no parameters.
    pub rf: Option<f64>,
    pub stderr_rf: Option<f64>,
    /// Raw score `rf · alpha`.
    pub score: Option<f64>,
    /// Ranking score `penalized_rf(rf) · alpha`.
    pub penalized: Option<f64>,
    pub seed: u64,
}

/// Scores `c + template`. `step` and `index` select the predictor seed.
pub fn score_candidate(
    c: &Circuit,
    template: &LayerTemplate,
    h: &Hamiltonian,
    cfg: &SearchConfig,
    step: usize,
    index: usize,
) -> Result<CandidateScore, SearchError> {
    let seed = rng::derive_seed(cfg.seed, &[SEARCH_KEY, step as u64, index as u64]);
    let next = c.append_layer(template)?;
    let alpha = decay_factor(c, &template.label, cfg);
    let est = estimate_rf(&next, h, cfg.n_samples, seed)?;
    Ok(CandidateScore {
        label: template.label.clone(),
        alpha,
        rf: Some(est.rf),
        stderr_rf: Some(est.stderr_rf),
        score: Some(est.rf * alpha),
        penalized: Some(penalized_rf(est.rf) * alpha),
        seed,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchStep {
    pub step: usize,
    /// One entry per pool template, in pool order.
    pub candidates: Vec<CandidateScore>,
    pub chosen: usize,
    pub chosen_label: String,
    pub gate_count: usize,
    pub param_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SearchStop {
    Converged,
    MaxDepth,
    BudgetExpired,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchTrace {
    pub steps: Vec<SearchStep>,
    pub stop: SearchStop,
}

impl SearchTrace {
    pub fn chosen_labels(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.chosen_label.as_str()).collect()
    }

    /// Decay factor of each chosen layer.
    pub fn alphas(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.candidates[s.chosen].alpha).collect()
    }

    /// Rebuilds the searched circuit from the recorded choices.
    pub fn replay(&self, pool: &LayerPool, n_qubits: usize) -> Result<Circuit, CircuitError> {
        self.steps.iter().try_fold(Circuit::new(n_qubits), |c, s| c.append_layer(&pool.templates()[s.chosen]))
    }
}

fn scored<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// First index holding the largest value; `None` entries never win.
fn argmax(values: impl Iterator<Item = Option<f64>>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.enumerate() {
        if let Some(v) = v {
            if best.map_or(true, |(_, b)| v > b) {
                best = Some((i, v));
            }
        }
    }
    best.map(|(i, _)| i)
}

/// Grows a circuit from empty, one pool template per step.
///
/// Each step scores every template appended to the current circuit and
/// keeps the best by `penalized_rf(rf) · alpha` (first in pool order on
/// ties). Templates that would leave the circuit without parameters are
/// recorded unscored. Growth stops at `l_max` layers, or once the chosen
/// score exceeds `1 - epsilon` with at least `l_min` layers.
pub fn layerwise_search(h: &Hamiltonian, pool: &LayerPool, cfg: &SearchConfig) -> Result<(Circuit, SearchTrace), SearchError> {
    layerwise_search_with_budget(h, pool, cfg, &Unlimited)
}

/// [`layerwise_search`] that returns the circuit grown so far once `budget`
/// expires.
pub fn layerwise_search_with_budget(
    h: &Hamiltonian,
    pool: &LayerPool,
    cfg: &SearchConfig,
    budget: &dyn Budget,
) -> Result<(Circuit, SearchTrace), SearchError> {
    cfg.validate()?;
    if pool.is_empty() {
        return Err(SearchError::EmptyPool);
    }
    let mut c = Circuit::new(h.n_qubits());
    let mut steps = Vec::new();
    let stop = loop {
        if c.depth() >= cfg.l_max {
            break SearchStop::MaxDepth;
        }
        if budget.expired() {
            if steps.is_empty() {
                return Err(SearchError::BudgetExpired);
            }
            break SearchStop::BudgetExpired;
        }
        let step = steps.len();
        let templates = pool.templates();
        let candidates = scored(templates.len(), |i| {
            let t = &templates[i];
            if c.param_count() + t.param_count() == 0 {
                return Ok(CandidateScore {
                    label: t.label.clone(),
                    alpha: decay_factor(&c, &t.label, cfg),
                    rf: None,
                    stderr_rf: None,
                    score: None,
                    penalized: None,
                    seed: 0,
                });
            }
            score_candidate(&c, t, h, cfg, step, i)
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
        let chosen = argmax(candidates.iter().map(|s| s.penalized)).ok_or(SearchError::NoEligibleCandidate { step })?;
        c = c.append_layer(&templates[chosen])?;
        let best = candidates[chosen].penalized.expect("chosen candidate is scored");
        steps.push(SearchStep {
            step,
            chosen_label: templates[chosen].label.clone(),
            candidates,
            chosen,
            gate_count: c.gate_count(),
            param_count: c.param_count(),
        });
        if best > 1.0 - cfg.epsilon && c.depth() >= cfg.l_min {
            break SearchStop::Converged;
        }
    };
    Ok((c, SearchTrace { steps, stop }))
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RemovalCandidate {
    pub position: GatePosition,
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub rf: f64,
    pub penalized: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EliminationRound {
    pub round: usize,
    pub current_rf: f64,
    pub current_stderr: f64,
    /// Every removable gate, in circuit order.
    pub candidates: Vec<RemovalCandidate>,
    /// Index into `candidates` of the removed gate, if any.
    pub removed: Option<usize>,
    pub gate_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EliminationStop {
    BudgetReached,
    NoAcceptableRemoval,
    NoCandidates,
    BudgetExpired,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EliminationTrace {
    /// Maximum number of removals, `⌈ratio · gate_count⌉` capped by the
    /// configured round limit.
    pub budget: usize,
    pub rounds: Vec<EliminationRound>,
    pub stop: EliminationStop,
}

impl EliminationTrace {
    pub fn removed(&self) -> Vec<&RemovalCandidate> {
        self.rounds.iter().filter_map(|r| r.removed.map(|i| &r.candidates[i])).collect()
    }
}

fn removal_budget(c: &Circuit, cfg: &SearchConfig) -> usize {
    let by_ratio = libm::ceil(cfg.elimination_ratio * c.gate_count() as f64) as usize;
    cfg.elimination_rounds.map_or(by_ratio, |k| k.min(by_ratio))
}

/// Greedily removes gates whose deletion gives the best ranking score.
///
/// Each round estimates the current circuit and every single-gate deletion
/// (except the last parameterized gate), removes the best deletion (earliest
/// position on ties), and stops when the budget is spent or the best
/// deletion scores below the current circuit by more than the tolerance.
pub fn eliminate_redundancy(c: &Circuit, h: &Hamiltonian, cfg: &SearchConfig) -> Result<(Circuit, EliminationTrace), SearchError> {
    eliminate_redundancy_with_budget(c, h, cfg, &Unlimited)
}

pub fn eliminate_redundancy_with_budget(
    c: &Circuit,
    h: &Hamiltonian,
    cfg: &SearchConfig,
    budget: &dyn Budget,
) -> Result<(Circuit, EliminationTrace), SearchError> {
    cfg.validate()?;
    let limit = removal_budget(c, cfg);
    let mut current = c.clone();
    let mut rounds = Vec::new();
    let stop = loop {
        if rounds.len() >= limit {
            break EliminationStop::BudgetReached;
        }
        if budget.expired() {
            break EliminationStop::BudgetExpired;
        }
        let round = rounds.len();
        let positions: Vec<(GatePosition, GateKind, Vec<usize>)> = current
            .gates()
            .filter(|(_, g)| g.param.is_none() || current.param_count() > 1)
            .map(|(p, g)| (p, g.kind, g.qubits.clone()))
            .collect();
        if positions.is_empty() {
            break EliminationStop::NoCandidates;
        }
        let seed = |slot: u64| rng::derive_seed(cfg.seed, &[ELIMINATION_KEY, round as u64, slot]);
        let here = estimate_rf(&current, h, cfg.n_samples, seed(CURRENT_SLOT))?;
        let candidates = scored(positions.len(), |i| -> Result<RemovalCandidate, SearchError> {
            let (position, kind, ref qubits) = positions[i];
            let est = estimate_rf(&current.remove_gate(position)?, h, cfg.n_samples, seed(i as u64))?;
            Ok(RemovalCandidate { position, kind, qubits: qubits.clone(), rf: est.rf, penalized: penalized_rf(est.rf) })
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
        let best = argmax(candidates.iter().map(|r| Some(r.penalized))).expect("non-empty candidates");
        let tol = match cfg.tol_drop {
            TolDrop::Stderr => here.stderr_rf,
            TolDrop::Fixed(t) => t,
            TolDrop::Disabled => f64::INFINITY,
        };
        let accept = candidates[best].penalized >= penalized_rf(here.rf) - tol;
        if accept {
            current = current.remove_gate(candidates[best].position)?;
        }
        rounds.push(EliminationRound {
            round,
            current_rf: here.rf,
            current_stderr: here.stderr_rf,
            candidates,
            removed: accept.then_some(best),
            gate_count: current.gate_count(),
        });
        if !accept {
            break EliminationStop::NoAcceptableRemoval;
        }
    };
    Ok((current, EliminationTrace { budget: limit, rounds, stop }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateSet;
    use crate::fluctuation::exact_rf_enumeration;
    use crate::layergen::{build_layer_pool, interaction_graph};
    use crate::pauli::{build_hamiltonian, HamiltonianKind, PauliString};
    use alloc::vec;

    fn minus_z() -> Hamiltonian {
        Hamiltonian::new(1, [(-1.0, PauliString::from_text("Z").unwrap())]).unwrap()
    }

    fn ry_pool(n: usize) -> LayerPool {
        LayerPool::from_templates(vec![LayerTemplate::transversal("ry", GateKind::Ry, n)])
    }

    #[test]
    fn decay_examples() {
        let cfg = SearchConfig::default();
        let c = Circuit::new(2);
        assert_eq!(decay_factor(&c, "ry", &cfg), 1.0);
        let ry = LayerTemplate::transversal("ry", GateKind::Ry, 2);
        let rx = LayerTemplate::transversal("rx", GateKind::Rx, 2);
        let c = c.append_layer(&ry).unwrap().append_layer(&rx).unwrap().append_layer(&ry).unwrap();
        assert!((decay_factor(&c, "ry", &cfg) - 0.64).abs() < 1e-15);
        assert_eq!(decay_factor(&c, "cz-1", &cfg), 1.0);
        // Older occurrences fall out of the window.
        let mut long = c.clone();
        for _ in 0..5 {
            long = long.append_layer(&rx).unwrap();
        }
        assert_eq!(decay_factor(&long, "ry", &cfg), 1.0);
    }

    #[test]
    fn score_examples() {
        let cfg = SearchConfig { n_samples: 200, ..Default::default() };
        let h2 = Hamiltonian::new(2, [(-1.0, PauliString::from_text("ZZ").unwrap())]).unwrap();
        let ry = LayerTemplate::transversal("ry", GateKind::Ry, 2);
        let first = score_candidate(&Circuit::new(2), &ry, &h2, &cfg, 0, 0).unwrap();
        assert_eq!(first.alpha, 1.0);
        assert_eq!(first.score, first.rf);

        let c = (0..3).fold(Circuit::new(2), |c, _| c.append_layer(&ry).unwrap());
        let s = score_candidate(&c, &ry, &h2, &cfg, 3, 0).unwrap();
        assert!((s.alpha - 0.512).abs() < 1e-15);
        assert!((s.score.unwrap() - s.rf.unwrap() * 0.512).abs() < 1e-15);

        let cz = LayerTemplate::new("cz-1", GateKind::Cz, vec![vec![0, 1]]);
        assert!(matches!(
            score_candidate(&Circuit::new(2), &cz, &h2, &cfg, 0, 0),
            Err(SearchError::Fluctuation(FluctuationError::NoParameters))
        ));
    }

    #[test]
    fn forced_trajectory() {
        let cfg = SearchConfig { l_min: 3, l_max: 3, n_samples: 100, ..Default::default() };
        let (c, trace) = layerwise_search(&minus_z(), &ry_pool(1), &cfg).unwrap();
        assert_eq!(c.depth(), 3);
        assert!(c.labels().all(|l| l == "ry"));
        let alphas = trace.alphas();
        assert_eq!(alphas.len(), 3);
        for (a, e) in alphas.iter().zip([1.0, 0.8, 0.64]) {
            assert!((a - e).abs() < 1e-15);
        }
        assert_eq!(trace.stop, SearchStop::MaxDepth);
    }

    #[test]
    fn single_layer_is_pool_argmax() {
        let h = build_hamiltonian(HamiltonianKind::Ising, 4, None, None).unwrap();
        let pool = build_layer_pool(GateSet::Rxyz2xyz, &interaction_graph(&h)).unwrap();
        let cfg = SearchConfig { l_min: 1, l_max: 1, n_samples: 200, seed: 3, ..Default::default() };
        let (c, trace) = layerwise_search(&h, &pool, &cfg).unwrap();
        assert_eq!(c.depth(), 1);
        let step = &trace.steps[0];
        assert_eq!(step.candidates.len(), pool.len());
        let best = step.candidates.iter().filter_map(|s| s.penalized).fold(f64::MIN, f64::max);
        assert_eq!(step.candidates[step.chosen].penalized, Some(best));
        // Fixed gates alone cannot be scored on an empty circuit.
        assert!(step.candidates.iter().filter(|s| s.label.starts_with("cz")).all(|s| s.rf.is_none()));
    }

    #[test]
    fn trace_replays_and_is_deterministic() {
        let h = build_hamiltonian(HamiltonianKind::Cluster, 4, None, None).unwrap();
        let pool = build_layer_pool(GateSet::Rxyz2xyz, &interaction_graph(&h)).unwrap();
        let cfg = SearchConfig { l_max: 6, n_samples: 200, seed: 1, ..Default::default() };
        let (c, trace) = layerwise_search(&h, &pool, &cfg).unwrap();
        assert!(c.depth() <= 6);
        assert_eq!(trace.replay(&pool, 4).unwrap(), c);
        assert!(trace.steps.iter().all(|s| s.candidates.len() == pool.len()));
        assert_eq!(layerwise_search(&h, &pool, &cfg).unwrap(), (c, trace));
    }

    #[test]
    fn config_validation() {
        let bad = [
            SearchConfig { delta: 0.0, ..Default::default() },
            SearchConfig { epsilon: 1.0, ..Default::default() },
            SearchConfig { l_min: 5, l_max: 4, ..Default::default() },
            SearchConfig { elimination_ratio: 1.0, ..Default::default() },
            SearchConfig { n_samples: 1, ..Default::default() },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(SearchError::InvalidConfig(_))));
        }
    }

    #[test]
    fn idle_rotation_is_removed_first() {
        // RZ on |0⟩ only adds a parameter; RY carries all the variance.
        let c = Circuit::new(1)
            .append_layer(&LayerTemplate::transversal("rz", GateKind::Rz, 1))
            .unwrap()
            .append_layer(&LayerTemplate::transversal("ry", GateKind::Ry, 1))
            .unwrap();
        let h = minus_z();
        let before = exact_rf_enumeration(&c, &h).unwrap();
        let after = exact_rf_enumeration(&c.remove_gate(GatePosition { layer: 0, index: 0 }).unwrap(), &h).unwrap();
        // Dropping the idle parameter shrinks rf by √((M-1)/M) and moves it to 1.
        assert!((before - core::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((after - 1.0).abs() < 1e-12);
        assert!(penalized_rf(after) > penalized_rf(before));

        let cfg = SearchConfig { elimination_ratio: 0.5, n_samples: 500, ..Default::default() };
        let (out, trace) = eliminate_redundancy(&c, &h, &cfg).unwrap();
        assert_eq!(trace.budget, 1);
        assert_eq!(trace.removed()[0].kind, GateKind::Rz);
        assert_eq!(out.gate_count(), 1);
        assert_eq!(out.layers()[0].label, "ry");
    }

    #[test]
    fn zero_ratio_keeps_circuit() {
        let c = Circuit::new(1).append_layer(&LayerTemplate::transversal("ry", GateKind::Ry, 1)).unwrap();
        let cfg = SearchConfig { elimination_ratio: 0.0, ..Default::default() };
        let (out, trace) = eliminate_redundancy(&c, &minus_z(), &cfg).unwrap();
        assert_eq!(out, c);
        assert!(trace.rounds.is_empty());
    }

    #[test]
    fn last_parameter_is_never_removed() {
        let c = Circuit::new(2)
            .append_layer(&LayerTemplate::new("ry", GateKind::Ry, vec![vec![0]]))
            .unwrap()
            .append_layer(&LayerTemplate::new("cz-1", GateKind::Cz, vec![vec![0, 1]]))
            .unwrap();
        let h = Hamiltonian::new(2, [(-1.0, PauliString::from_text("ZI").unwrap())]).unwrap();
        let cfg = SearchConfig { elimination_ratio: 0.9, tol_drop: TolDrop::Disabled, n_samples: 100, ..Default::default() };
        let (out, trace) = eliminate_redundancy(&c, &h, &cfg).unwrap();
        assert_eq!(out.param_count(), 1);
        assert_eq!(out.gate_count(), 1);
        assert_eq!(trace.stop, EliminationStop::NoCandidates);
    }

    #[test]
    fn scaling_changes_no_decision() {
        let h = build_hamiltonian(HamiltonianKind::Ising, 4, None, None).unwrap();
        let pool = build_layer_pool(GateSet::Rxyz2xyz, &interaction_graph(&h)).unwrap();
        let cfg = SearchConfig { l_max: 5, n_samples: 200, seed: 2, ..Default::default() };
        let (c1, t1) = layerwise_search(&h, &pool, &cfg).unwrap();
        let (c2, t2) = layerwise_search(&h.scaled(10.0), &pool, &cfg).unwrap();
        assert_eq!(t1, t2);
        let (e1, r1) = eliminate_redundancy(&c1, &h, &cfg).unwrap();
        let (e2, r2) = eliminate_redundancy(&c2, &h.scaled(10.0), &cfg).unwrap();
        assert_eq!((e1, r1), (e2, r2));
    }
}
