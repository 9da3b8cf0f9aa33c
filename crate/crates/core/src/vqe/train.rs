use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::Rng;

use super::ground::exact_ground_energy;
use super::gradient::{check_pair, energy_and_gradient};
use super::statevector::{DenseCircuit, DenseHamiltonian};
use super::VqeError;
use crate::budget::{Budget, Unlimited};
use crate::circuit::Circuit;
use crate::math;
use crate::pauli::Hamiltonian;
use crate::rng;

const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;
/// Consecutive small loss changes that count as converged.
const PLATEAU_PATIENCE: usize = 10;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub max_iters: usize,
    pub n_restarts: usize,
    /// Absolute loss-change threshold for the plateau stop.
    pub tol: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig { learning_rate: 0.1, max_iters: 500, n_restarts: 100, tol: 1e-7, seed: 0 }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<(), VqeError> {
        if self.n_restarts == 0 {
            return Err(VqeError::InvalidConfig("n_restarts must be at least 1"));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(VqeError::InvalidConfig("learning_rate must be positive"));
        }
        if !(self.tol >= 0.0) {
            return Err(VqeError::InvalidConfig("tol must be non-negative"));
        }
        Ok(())
    }
}

/// One Adam run from a random start.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RestartOutcome {
    pub final_energy: f64,
    pub iterations: usize,
    pub params: Vec<f64>,
    /// Loss before each update, followed by the final loss.
    pub curve: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainResult {
    pub best_energy: f64,
    pub mean_energy: f64,
    pub exact_energy: f64,
    /// `best_energy / exact_energy`.
    pub e_ratio: f64,
    /// `mean_energy / exact_energy`.
    pub mean_e_ratio: f64,
    pub best_restart: usize,
    /// Restarts in seed order. Shorter than `n_restarts` if the budget ran out.
    pub restarts: Vec<RestartOutcome>,
    /// True when the budget expired before every restart finished.
    pub interrupted: bool,
}

impl TrainResult {
    pub fn final_energies(&self) -> Vec<f64> {
        self.restarts.iter().map(|r| r.final_energy).collect()
    }

    pub fn best_params(&self) -> &[f64] {
        &self.restarts[self.best_restart].params
    }

    /// Loss averaged across restarts at each iteration, with finished runs
    /// holding their final value.
    pub fn mean_curve(&self) -> Vec<f64> {
        let len = self.restarts.iter().map(|r| r.curve.len()).max().unwrap_or(0);
        (0..len)
            .map(|i| {
                let s: f64 = self.restarts.iter().map(|r| r.curve.get(i).or(r.curve.last()).copied().unwrap_or(0.0)).sum();
                s / self.restarts.len() as f64
            })
            .collect()
    }
}

/// Runs `cfg.n_restarts` independent Adam optimizations.
pub fn train(c: &Circuit, h: &Hamiltonian, cfg: &TrainConfig) -> Result<TrainResult, VqeError> {
    train_with_budget(c, h, cfg, &Unlimited)
}

/// [`train`] that stops starting and advancing restarts once `budget` expires.
pub fn train_with_budget(c: &Circuit, h: &Hamiltonian, cfg: &TrainConfig, budget: &dyn Budget) -> Result<TrainResult, VqeError> {
    cfg.validate()?;
    let dc = DenseCircuit::new(c)?;
    let dh = DenseHamiltonian::new(h)?;
    check_pair(&dc, &dh)?;
    let exact = exact_ground_energy(h)?;

    let run = |r: usize| -> Option<RestartOutcome> {
        if budget.expired() {
            return None;
        }
        Some(adam_run(&dc, &dh, cfg, r as u64, budget))
    };
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Option<RestartOutcome>> = {
        use rayon::prelude::*;
        (0..cfg.n_restarts).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Option<RestartOutcome>> = (0..cfg.n_restarts).map(run).collect();

    let interrupted = outcomes.iter().any(Option::is_none) || budget.expired();
    let restarts: Vec<RestartOutcome> = outcomes.into_iter().flatten().collect();
    if restarts.is_empty() {
        return Err(VqeError::BudgetExpired);
    }
    let (best_restart, best_energy) = restarts
        .iter()
        .map(|r| r.final_energy)
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, e)| if e < acc.1 { (i, e) } else { acc });
    let mean_energy = restarts.iter().map(|r| r.final_energy).sum::<f64>() / restarts.len() as f64;
    Ok(TrainResult {
        best_energy,
        mean_energy,
        exact_energy: exact,
        e_ratio: best_energy / exact,
        mean_e_ratio: mean_energy / exact,
        best_restart,
        restarts,
        interrupted,
    })
}

fn adam_run(dc: &DenseCircuit, dh: &DenseHamiltonian, cfg: &TrainConfig, restart: u64, budget: &dyn Budget) -> RestartOutcome {
    let m_params = dc.n_params;
    let mut r = rng::stream(cfg.seed, restart);
    let mut params: Vec<f64> = (0..m_params).map(|_| r.random::<f64>() * TAU).collect();
    let mut grad = vec![0.0; m_params];
    let mut m1 = vec![0.0; m_params];
    let mut m2 = vec![0.0; m_params];
    let mut curve = Vec::new();
    let mut calm = 0;
    let mut iterations = 0;
    let mut prev = f64::NAN;
    for t in 1..=cfg.max_iters {
        if budget.expired() {
            break;
        }
        let loss = energy_and_gradient(dc, dh, &params, &mut grad).expect("validated lengths");
        curve.push(loss);
        if (loss - prev).abs() < cfg.tol {
            calm += 1;
            if calm >= PLATEAU_PATIENCE {
                break;
            }
        } else {
            calm = 0;
        }
        prev = loss;
        let (c1, c2) = (1.0 - math::powi(BETA1, t as u32), 1.0 - math::powi(BETA2, t as u32));
        for i in 0..m_params {
            m1[i] = BETA1 * m1[i] + (1.0 - BETA1) * grad[i];
            m2[i] = BETA2 * m2[i] + (1.0 - BETA2) * grad[i] * grad[i];
            params[i] -= cfg.learning_rate * (m1[i] / c1) / (math::sqrt(m2[i] / c2) + ADAM_EPS);
        }
        iterations = t;
    }
    let final_energy = dh.energy(&dc.run(&params).expect("validated lengths"));
    curve.push(final_energy);
    RestartOutcome { final_energy, iterations, params, curve }
}
