//! Landscape-fluctuation predictor.
//!
//! The loss `L(θ) = Σ λ_j ⟨h_j⟩ / ‖λ‖₁` is sampled at uniformly random
//! quarter-turn angles, where every circuit is Clifford and the tableau
//! simulator evaluates it exactly. Its spread `σ`, divided by the reference
//! `σ₀ = 1/√(2M)`, is the relative fluctuation `σ̃`.
//!
//! Two oracles live here as well: exhaustive enumeration of all `4^M`
//! assignments, and Monte Carlo over continuous angles on the dense backend.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::Rng;

use crate::circuit::Circuit;
use crate::math;
use crate::pauli::Hamiltonian;
use crate::rng;
use crate::stabilizer::{CliffordGate, StabilizerTableau};
use crate::vqe::{self, VqeError};

/// Bootstrap resamples behind every reported standard error.
pub const BOOTSTRAP_RESAMPLES: usize = 200;
/// Largest `4^M` the enumeration oracle accepts.
pub const MAX_ENUMERATION: u64 = 1_000_000;
/// Fewest samples the continuous oracle accepts.
pub const MIN_CONTINUOUS_SAMPLES: usize = 100;

const BOOTSTRAP_KEY: u64 = 0xB007_5724;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FluctuationError {
    #[error("circuit has no parameters")]
    NoParameters,
    #[error("Hamiltonian has no terms")]
    EmptyHamiltonian,
    #[error("circuit has {circuit} qubits, Hamiltonian has {hamiltonian}")]
    WidthMismatch { circuit: usize, hamiltonian: usize },
    #[error("{got} samples requested, at least {min} are required")]
    TooFewSamples { got: usize, min: usize },
    #[error("enumeration needs 4^{params} assignments, above the limit of {limit}")]
    EnumerationTooLarge { params: usize, limit: u64 },
    #[error(transparent)]
    Vqe(#[from] VqeError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FluctuationEstimate {
    /// Standard deviation of the `‖λ‖₁`-normalized loss.
    pub sigma: f64,
    /// `1/√(2M)`.
    pub sigma0: f64,
    /// `sigma / sigma0`.
    pub rf: f64,
    pub n_samples: usize,
    /// Bootstrap standard error of `rf`.
    pub stderr_rf: f64,
    pub seed: u64,
}

pub fn sigma0(param_count: usize) -> f64 {
    1.0 / math::sqrt(2.0 * param_count as f64)
}

enum Op {
    Rotation { x: Vec<u64>, z: Vec<u64>, param: usize },
    Cz([usize; 2]),
}

struct Term {
    weight: f64,
    x: Vec<u64>,
    z: Vec<u64>,
}

/// Circuit and Hamiltonian lowered for repeated tableau evaluation.
struct Compiled {
    n_qubits: usize,
    n_params: usize,
    ops: Vec<Op>,
    terms: Vec<Term>,
}

impl Compiled {
    fn new(c: &Circuit, h: &Hamiltonian) -> Result<Self, FluctuationError> {
        if c.param_count() == 0 {
            return Err(FluctuationError::NoParameters);
        }
        if h.is_empty() {
            return Err(FluctuationError::EmptyHamiltonian);
        }
        if c.n_qubits() != h.n_qubits() {
            return Err(FluctuationError::WidthMismatch { circuit: c.n_qubits(), hamiltonian: h.n_qubits() });
        }
        let ops = c
            .gates()
            .map(|(_, g)| match g.param {
                Some(param) => {
                    let p = g.kind.generator(c.n_qubits(), &g.qubits).expect("validated gate");
                    Op::Rotation { x: p.x_words().to_vec(), z: p.z_words().to_vec(), param }
                }
                None => Op::Cz([g.qubits[0], g.qubits[1]]),
            })
            .collect();
        let weights = h.normalized_coefficients();
        let terms = h
            .terms()
            .iter()
            .zip(weights)
            .map(|(t, weight)| Term { weight, x: t.pauli.x_words().to_vec(), z: t.pauli.z_words().to_vec() })
            .collect();
        Ok(Compiled { n_qubits: c.n_qubits(), n_params: c.param_count(), ops, terms })
    }

    fn apply(&self, op: &Op, k: u8, t: &mut StabilizerTableau) {
        match op {
            Op::Rotation { x, z, .. } => {
                if k != 0 {
                    t.rotate_unchecked(x, z, k);
                }
            }
            Op::Cz(q) => t.apply_clifford(CliffordGate::Cz, q).expect("validated gate"),
        }
    }

    fn loss(&self, t: &StabilizerTableau) -> f64 {
        self.terms.iter().map(|term| term.weight * f64::from(t.expectation_unchecked(&term.x, &term.z))).sum()
    }

    fn evaluate(&self, values: &[u8]) -> f64 {
        let mut t = StabilizerTableau::new_zero_state(self.n_qubits).expect("at least one qubit");
        for op in &self.ops {
            let k = match op {
                Op::Rotation { param, .. } => values[*param],
                Op::Cz(_) => 0,
            };
            self.apply(op, k, &mut t);
        }
        self.loss(&t)
    }

    fn sample(&self, seed: u64, index: usize) -> f64 {
        let mut r = rng::stream(seed, index as u64);
        let values: Vec<u8> = (0..self.n_params).map(|_| r.random_range(0..4u8)).collect();
        self.evaluate(&values)
    }

    /// Visits every assignment, sharing tableau prefixes between branches.
    fn enumerate(&self, idx: usize, t: &StabilizerTableau, out: &mut Vec<f64>) {
        let Some(op) = self.ops.get(idx) else {
            out.push(self.loss(t));
            return;
        };
        match op {
            Op::Rotation { .. } => {
                for k in 0..4 {
                    let mut next = t.clone();
                    self.apply(op, k, &mut next);
                    self.enumerate(idx + 1, &next, out);
                }
            }
            Op::Cz(_) => {
                let mut next = t.clone();
                self.apply(op, 0, &mut next);
                self.enumerate(idx + 1, &next, out);
            }
        }
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Two-pass variance with divisor `n - ddof`.
fn variance(xs: &[f64], ddof: usize) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - ddof) as f64
}

fn rf_from_variance(var: f64, param_count: usize) -> (f64, f64) {
    let sigma = math::sqrt(var);
    (sigma, sigma / sigma0(param_count))
}

/// Standard error of `rf` from resampling `losses` with replacement.
fn bootstrap_stderr(losses: &[f64], param_count: usize, seed: u64) -> f64 {
    let n = losses.len();
    let mut r = rng::stream(rng::derive_seed(seed, &[BOOTSTRAP_KEY]), 0);
    let mut resample = vec![0.0; n];
    let rfs: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| {
            for slot in resample.iter_mut() {
                *slot = losses[r.random_range(0..n)];
            }
            rf_from_variance(variance(&resample, 1), param_count).1
        })
        .collect();
    math::sqrt(variance(&rfs, 1))
}

fn collect<F: Fn(usize) -> f64 + Sync + Send>(n: usize, f: F) -> Vec<f64> {
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

/// Estimates `σ̃` from `n_samples` uniform quarter-turn assignments.
///
/// Sample `i` draws from counter stream `i` of `seed`, so the result is the
/// same for any evaluation order or worker count.
pub fn estimate_rf(c: &Circuit, h: &Hamiltonian, n_samples: usize, seed: u64) -> Result<FluctuationEstimate, FluctuationError> {
    if n_samples < 2 {
        return Err(FluctuationError::TooFewSamples { got: n_samples, min: 2 });
    }
    let compiled = Compiled::new(c, h)?;
    let losses = collect(n_samples, |i| compiled.sample(seed, i));
    let m = compiled.n_params;
    let (sigma, rf) = rf_from_variance(variance(&losses, 1), m);
    Ok(FluctuationEstimate {
        sigma,
        sigma0: sigma0(m),
        rf,
        n_samples,
        stderr_rf: bootstrap_stderr(&losses, m, seed),
        seed,
    })
}

/// Exact `σ̃` over all `4^M` quarter-turn assignments (population variance).
pub fn exact_rf_enumeration(c: &Circuit, h: &Hamiltonian) -> Result<f64, FluctuationError> {
    let compiled = Compiled::new(c, h)?;
    let m = compiled.n_params;
    if m >= 10 || 4u64.pow(m as u32) > MAX_ENUMERATION {
        return Err(FluctuationError::EnumerationTooLarge { params: m, limit: MAX_ENUMERATION });
    }
    let mut losses = Vec::with_capacity(1 << (2 * m));
    let t = StabilizerTableau::new_zero_state(compiled.n_qubits).expect("at least one qubit");
    compiled.enumerate(0, &t, &mut losses);
    Ok(rf_from_variance(variance(&losses, 0), m).1)
}

/// Monte Carlo `σ̃` over continuous angles in `[0, 2π)^M`, evaluated on the
/// dense backend. Returns `(rf, bootstrap stderr)`.
pub fn continuous_rf_montecarlo(c: &Circuit, h: &Hamiltonian, n_samples: usize, seed: u64) -> Result<(f64, f64), FluctuationError> {
    if n_samples < MIN_CONTINUOUS_SAMPLES {
        return Err(FluctuationError::TooFewSamples { got: n_samples, min: MIN_CONTINUOUS_SAMPLES });
    }
    // Validates parameters, terms and widths.
    Compiled::new(c, h)?;
    let m = c.param_count();
    let normalized = h.scaled(1.0 / h.l1_norm());
    let dense = vqe::DenseEvaluator::new(c, &normalized)?;
    let losses = collect(n_samples, |i| {
        let mut r = rng::stream(seed, i as u64);
        let params: Vec<f64> = (0..m).map(|_| r.random::<f64>() * TAU).collect();
        dense.energy(&params)
    });
    let (_, rf) = rf_from_variance(variance(&losses, 1), m);
    Ok((rf, bootstrap_stderr(&losses, m, seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{GateKind, LayerTemplate};
    use crate::pauli::PauliString;

    fn single(kind: GateKind) -> Circuit {
        Circuit::new(1).append_layer(&LayerTemplate::transversal("g", kind, 1)).unwrap()
    }

    fn minus_z() -> Hamiltonian {
        Hamiltonian::new(1, [(-1.0, PauliString::from_text("Z").unwrap())]).unwrap()
    }

    #[test]
    fn ry_on_minus_z_is_one() {
        let c = single(GateKind::Ry);
        assert!((exact_rf_enumeration(&c, &minus_z()).unwrap() - 1.0).abs() < 1e-12);
        let est = estimate_rf(&c, &minus_z(), 1000, 3).unwrap();
        assert!((est.rf - 1.0).abs() <= 3.0 * est.stderr_rf, "{est:?}");
        assert!((est.sigma0 - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let (rf, se) = continuous_rf_montecarlo(&c, &minus_z(), 2000, 3).unwrap();
        assert!((rf - 1.0).abs() <= 3.0 * se);
    }

    #[test]
    fn rz_on_minus_z_is_zero() {
        let c = single(GateKind::Rz);
        assert_eq!(exact_rf_enumeration(&c, &minus_z()).unwrap(), 0.0);
        let est = estimate_rf(&c, &minus_z(), 100, 0).unwrap();
        assert_eq!(est.rf, 0.0);
        assert_eq!(est.stderr_rf, 0.0);
        let (rf, se) = continuous_rf_montecarlo(&c, &minus_z(), 100, 0).unwrap();
        assert!(rf < 1e-7 && rf <= se + 1e-7);
    }

    #[test]
    fn sample_count_guards() {
        let c = single(GateKind::Ry);
        assert!(matches!(estimate_rf(&c, &minus_z(), 1, 0), Err(FluctuationError::TooFewSamples { .. })));
        assert!(matches!(continuous_rf_montecarlo(&c, &minus_z(), 99, 0), Err(FluctuationError::TooFewSamples { .. })));
    }

    #[test]
    fn no_parameters_and_width_errors() {
        let cz = Circuit::new(2).append_layer(&LayerTemplate::new("cz", GateKind::Cz, vec![vec![0, 1]])).unwrap();
        let h2 = Hamiltonian::new(2, [(1.0, PauliString::from_text("ZZ").unwrap())]).unwrap();
        assert_eq!(estimate_rf(&cz, &h2, 10, 0), Err(FluctuationError::NoParameters));
        let c = single(GateKind::Ry);
        assert!(matches!(estimate_rf(&c, &h2, 10, 0), Err(FluctuationError::WidthMismatch { .. })));
    }

    #[test]
    fn enumeration_guard() {
        let c = Circuit::new(10).append_layer(&LayerTemplate::transversal("ry", GateKind::Ry, 10)).unwrap();
        let h = Hamiltonian::new(10, [(1.0, PauliString::from_text("ZZZZZZZZZZ").unwrap())]).unwrap();
        assert!(matches!(exact_rf_enumeration(&c, &h), Err(FluctuationError::EnumerationTooLarge { params: 10, .. })));
    }

    #[test]
    fn scaling_hamiltonian_leaves_estimate_unchanged() {
        let c = Circuit::new(2)
            .append_layer(&LayerTemplate::transversal("ry", GateKind::Ry, 2))
            .unwrap()
            .append_layer(&LayerTemplate::new("rzz", GateKind::Rzz, vec![vec![0, 1]]))
            .unwrap();
        let h = Hamiltonian::new(2, [(-1.0, "ZZ"), (-1.0, "XI"), (-1.0, "IX")].map(|(c, s)| (c, PauliString::from_text(s).unwrap()))).unwrap();
        let a = estimate_rf(&c, &h, 500, 11).unwrap();
        let b = estimate_rf(&c, &h.scaled(10.0), 500, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn deterministic_and_consistent() {
        let c = single(GateKind::Rx);
        let a = estimate_rf(&c, &minus_z(), 300, 5).unwrap();
        assert_eq!(a, estimate_rf(&c, &minus_z(), 300, 5).unwrap());
        assert!((a.rf * a.sigma0 - a.sigma).abs() <= 1e-15 * a.sigma.max(1.0));
    }
}
