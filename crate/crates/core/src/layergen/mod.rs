//! Candidate layer pool: a weighted qubit interaction graph derived from the
//! Hamiltonian, two rounds of maximum-weight matching over it, and the
//! transversal and two-qubit layer templates built from those matchings.

mod blossom;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::{GateSet, LayerTemplate};
use crate::pauli::Hamiltonian;

/// Weights are mapped to integers below this bound before matching.
const WEIGHT_BITS: i32 = 40;
/// Per-edge bonus, relative to the lightest edge, that makes the first-round
/// matchings prefer more edges among near-equal weights.
const CARDINALITY_BONUS: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LayerGenError {
    #[error("self-loop on qubit {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) listed twice")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) is out of range for {n_nodes} nodes")]
    NodeOutOfRange { u: usize, v: usize, n_nodes: usize },
    #[error("edge ({u}, {v}) has non-positive or non-finite weight {weight}")]
    InvalidWeight { u: usize, v: usize, weight: f64 },
    #[error("layer pool is empty: the interaction graph has no edges and the gate set has no single-qubit gates")]
    EmptyPool,
    #[error("no two-qubit layers could be built for {kinds}: the interaction graph has no edges")]
    MissingTwoQubitLayers { kinds: String },
}

/// Simple undirected graph on the qubits with positive edge weights.
/// Edges are stored as `(u, v, w)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionGraph {
    n_nodes: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl InteractionGraph {
    pub fn new(n_nodes: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self, LayerGenError> {
        let mut out: Vec<(usize, usize, f64)> = Vec::new();
        for (a, b, w) in edges {
            if a == b {
                return Err(LayerGenError::SelfLoop(a));
            }
            if a >= n_nodes || b >= n_nodes {
                return Err(LayerGenError::NodeOutOfRange { u: a, v: b, n_nodes });
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(LayerGenError::InvalidWeight { u: a, v: b, weight: w });
            }
            out.push((a.min(b), a.max(b), w));
        }
        out.sort_by_key(|x| (x.0, x.1));
        if let Some(w) = out.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(LayerGenError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(InteractionGraph { n_nodes, edges: out })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().find(|e| (e.0, e.1) == key).map(|e| e.2)
    }

    /// The graph with the given pairs' edges deleted.
    pub fn without_edges(&self, pairs: &[(usize, usize)]) -> Self {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| !pairs.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (e.0, e.1)))
            .collect();
        InteractionGraph { n_nodes: self.n_nodes, edges }
    }

    /// Total weight of `pairs`; pairs that are not edges count zero.
    pub fn matching_weight(&self, pairs: &[(usize, usize)]) -> f64 {
        pairs.iter().filter_map(|&(a, b)| self.weight(a, b)).sum()
    }
}

/// Edge `(q1, q2)` carries `Σ |λ_j|` over the terms acting nontrivially on
/// both qubits; a term on `k` qubits feeds all `k(k-1)/2` pairs.
pub fn interaction_graph(h: &Hamiltonian) -> InteractionGraph {
    let n = h.n_qubits();
    let mut w = vec![0.0; n * n];
    for t in h.terms() {
        let support = t.pauli.support();
        for (i, &a) in support.iter().enumerate() {
            for &b in &support[i + 1..] {
                w[a * n + b] += t.coeff.abs();
            }
        }
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter_map(|(a, b)| {
        let x = w[a * n + b];
        (x > 0.0).then_some((a, b, x))
    });
    InteractionGraph::new(n, edges).expect("edges built from valid supports")
}

/// Maps weights to even integers with a shared power-of-two scale, so dyadic
/// weights convert exactly and ordering is preserved.
fn integer_weights(g: &InteractionGraph) -> Vec<(usize, usize, i64)> {
    let max = g.edges.iter().map(|e| e.2).fold(0.0, f64::max);
    if max == 0.0 {
        return Vec::new();
    }
    let (_, exp) = libm::frexp(max);
    g.edges
        .iter()
        .map(|&(u, v, w)| (u, v, 2 * (libm::round(libm::ldexp(w, WEIGHT_BITS - exp)) as i64).max(1)))
        .collect()
}

fn optimum(n: usize, edges: &[(usize, usize, i64)]) -> i64 {
    let mates = blossom::max_weight_mates(n, edges);
    edges.iter().filter(|&&(u, v, _)| mates[u] == Some(v)).map(|e| e.2).sum()
}

/// Among all maximum-weight matchings, the one whose sorted edge list is
/// lexicographically smallest. Edges are fixed greedily in sorted order,
/// keeping each one only if an optimal matching still contains all fixed
/// edges.
fn lexicographic_optimum(n: usize, edges: &[(usize, usize, i64)]) -> Vec<(usize, usize)> {
    let target = optimum(n, edges);
    let mut used = vec![false; n];
    let mut fixed_weight = 0;
    let mut fixed = Vec::new();
    for &(u, v, w) in edges {
        if used[u] || used[v] || fixed_weight + w > target {
            continue;
        }
        used[u] = true;
        used[v] = true;
        let rest: Vec<_> = edges.iter().copied().filter(|e| !used[e.0] && !used[e.1]).collect();
        if fixed_weight + w + optimum(n, &rest) == target {
            fixed_weight += w;
            fixed.push((u, v));
            if fixed_weight == target {
                break;
            }
        } else {
            used[u] = false;
            used[v] = false;
        }
    }
    fixed
}

/// Maximum-weight matching, ties broken toward the lexicographically
/// smallest sorted edge list. Pairs are returned as `(u, v)` with `u < v`.
pub fn max_weight_matching(g: &InteractionGraph) -> Vec<(usize, usize)> {
    lexicographic_optimum(g.n_nodes, &integer_weights(g))
}

/// Matching that maximizes weight plus a small per-edge bonus, so that among
/// near-equal weights the one covering more qubits wins.
fn cardinality_biased_matching(g: &InteractionGraph) -> Vec<(usize, usize)> {
    let mut edges = integer_weights(g);
    let Some(min) = edges.iter().map(|e| e.2).min() else {
        return Vec::new();
    };
    let bonus = 2 * (libm::round(min as f64 * CARDINALITY_BONUS / 2.0) as i64).max(1);
    edges.iter_mut().for_each(|e| e.2 += bonus);
    lexicographic_optimum(g.n_nodes, &edges)
}

/// Two edge-disjoint matchings: the first over the whole graph, the second
/// over the graph with the first one's edges removed.
pub fn two_layer_pairs(g: &InteractionGraph) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let first = cardinality_biased_matching(g);
    let second = cardinality_biased_matching(&g.without_edges(&first));
    (first, second)
}

/// Ordered candidate templates with unique labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerPool {
    templates: Vec<LayerTemplate>,
    pairs: (Vec<(usize, usize)>, Vec<(usize, usize)>),
}

impl LayerPool {
    /// A pool from explicit templates. Labels must be unique.
    pub fn from_templates(templates: Vec<LayerTemplate>) -> Self {
        debug_assert!(templates.iter().enumerate().all(|(i, t)| templates[..i].iter().all(|u| u.label != t.label)));
        LayerPool { templates, pairs: (Vec::new(), Vec::new()) }
    }

    pub fn templates(&self) -> &[LayerTemplate] {
        &self.templates
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&LayerTemplate> {
        self.templates.iter().find(|t| t.label == label)
    }

    /// The two matchings the two-qubit templates were built from.
    pub fn pairs(&self) -> (&[(usize, usize)], &[(usize, usize)]) {
        (&self.pairs.0, &self.pairs.1)
    }

    /// Fails if some two-qubit kind of `gate_set` has no template, which
    /// happens when the interaction graph is edgeless.
    pub fn require_two_qubit_layers(&self, gate_set: GateSet) -> Result<(), LayerGenError> {
        let missing: Vec<&str> = gate_set
            .kinds()
            .iter()
            .filter(|k| k.arity() == 2 && !self.templates.iter().any(|t| t.kind == **k))
            .map(|k| k.name())
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(LayerGenError::MissingTwoQubitLayers { kinds: missing.join(", ") })
        }
    }
}

/// One transversal template per single-qubit kind (labelled by kind name),
/// then for each two-qubit kind a template over each non-empty matching
/// (labelled `<kind>-1`, `<kind>-2`).
pub fn build_layer_pool(gate_set: GateSet, g: &InteractionGraph) -> Result<LayerPool, LayerGenError> {
    let (first, second) = two_layer_pairs(g);
    let mut templates = Vec::new();
    for &kind in gate_set.kinds().iter().filter(|k| k.arity() == 1) {
        templates.push(LayerTemplate::transversal(kind.name(), kind, g.n_nodes));
    }
    for &kind in gate_set.kinds().iter().filter(|k| k.arity() == 2) {
        for (i, pairs) in [&first, &second].into_iter().enumerate() {
            if pairs.is_empty() {
                continue;
            }
            let supports = pairs.iter().map(|&(a, b)| vec![a, b]).collect();
            templates.push(LayerTemplate::new(format!("{}-{}", kind.name(), i + 1), kind, supports));
        }
    }
    if templates.is_empty() {
        return Err(LayerGenError::EmptyPool);
    }
    Ok(LayerPool { templates, pairs: (first, second) })
}
