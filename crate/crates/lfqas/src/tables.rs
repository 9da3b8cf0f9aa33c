//! CSV views of search traces, elimination logs and training curves.

use std::io::Write;

use lfqas_core::search::{EliminationTrace, SearchTrace};
use lfqas_core::vqe::TrainResult;
use serde::Serialize;

#[derive(Serialize)]
struct SearchRow<'a> {
    step: usize,
    index: usize,
    label: &'a str,
    rf: Option<f64>,
    stderr_rf: Option<f64>,
    alpha: f64,
    score: Option<f64>,
    penalized: Option<f64>,
    chosen: bool,
}

/// One row per scored candidate: `step,index,label,rf,stderr_rf,alpha,score,penalized,chosen`.
pub fn write_search_trace<W: Write>(trace: &SearchTrace, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for s in &trace.steps {
        for (i, c) in s.candidates.iter().enumerate() {
            out.serialize(SearchRow {
                step: s.step,
                index: i,
                label: &c.label,
                rf: c.rf,
                stderr_rf: c.stderr_rf,
                alpha: c.alpha,
                score: c.score,
                penalized: c.penalized,
                chosen: i == s.chosen,
            })?;
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct EliminationRow<'a> {
    round: usize,
    layer: usize,
    index: usize,
    kind: &'a str,
    qubits: String,
    rf: f64,
    penalized: f64,
    current_rf: f64,
    removed: bool,
}

/// One row per removal candidate:
/// `round,layer,index,kind,qubits,rf,penalized,current_rf,removed`, with
/// qubits joined by `-`.
pub fn write_elimination_trace<W: Write>(trace: &EliminationTrace, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in &trace.rounds {
        for (i, c) in r.candidates.iter().enumerate() {
            out.serialize(EliminationRow {
                round: r.round,
                layer: c.position.layer,
                index: c.position.index,
                kind: c.kind.name(),
                qubits: c.qubits.iter().map(usize::to_string).collect::<Vec<_>>().join("-"),
                rf: c.rf,
                penalized: c.penalized,
                current_rf: r.current_rf,
                removed: r.removed == Some(i),
            })?;
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CurveRow {
    restart: usize,
    iteration: usize,
    energy: f64,
}

/// `restart,iteration,energy`, one row per recorded loss value.
pub fn write_training_curves<W: Write>(result: &TrainResult, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for (restart, r) in result.restarts.iter().enumerate() {
        for (iteration, &energy) in r.curve.iter().enumerate() {
            out.serialize(CurveRow { restart, iteration, energy })?;
        }
    }
    out.flush()?;
    Ok(())
}
