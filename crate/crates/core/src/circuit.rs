//! Parameterized circuit model: gates, layers, parameter indexing, native
//! gate sets, and conversion of a discrete angle assignment into tableau
//! operations.
//!
//! Circuits are values. Every edit returns a new circuit and leaves the
//! original untouched.

use alloc::string::String;
use alloc::vec::Vec;

use crate::pauli::{Pauli, PauliString};
use crate::stabilizer::{CliffordGate, StabilizerError, StabilizerTableau};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("{kind:?} acts on {expected} qubits, got {got}")]
    Arity { kind: GateKind, expected: usize, got: usize },
    #[error("gate qubits must be distinct, got {0} twice")]
    DuplicateQubit(usize),
    #[error("layer {label:?} has overlapping gate supports on qubit {qubit}")]
    OverlappingSupports { label: String, qubit: usize },
    #[error("layer {label:?} mixes gate kinds")]
    MixedKinds { label: String },
    #[error("{kind:?} gate has a wrong parameter binding")]
    ParameterBinding { kind: GateKind },
    #[error("parameter indices must be 0..{count} with each used exactly once")]
    ParameterIndices { count: usize },
    #[error("no gate at layer {layer}, index {index}")]
    InvalidPosition { layer: usize, index: usize },
    #[error("cannot remove the last parameterized gate")]
    LastParameter,
    #[error("assignment has {got} values, circuit has {expected} parameters")]
    AssignmentLength { expected: usize, got: usize },
    #[error("assignment value {0} is outside 0..4")]
    AssignmentValue(u8),
    #[error("unknown gate kind {0:?}")]
    UnknownKind(String),
    #[error("circuit needs at least one qubit")]
    NoQubits,
}

/// Native gate kinds. Every kind except `Cz` is a Pauli rotation
/// `exp(-iθP/2)` with one angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    Rxx,
    Ryy,
    Rzz,
    Cz,
}

impl GateKind {
    pub const ALL: [GateKind; 7] =
        [GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::Rxx, GateKind::Ryy, GateKind::Rzz, GateKind::Cz];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            _ => 2,
        }
    }

    pub fn is_parameterized(self) -> bool {
        self != GateKind::Cz
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Rxx => "rxx",
            GateKind::Ryy => "ryy",
            GateKind::Rzz => "rzz",
            GateKind::Cz => "cz",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, CircuitError> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| CircuitError::UnknownKind(name.into()))
    }

    /// Single-qubit Pauli of the rotation generator; `None` for `Cz`.
    pub fn axis(self) -> Option<Pauli> {
        match self {
            GateKind::Rx | GateKind::Rxx => Some(Pauli::X),
            GateKind::Ry | GateKind::Ryy => Some(Pauli::Y),
            GateKind::Rz | GateKind::Rzz => Some(Pauli::Z),
            GateKind::Cz => None,
        }
    }

    /// Rotation generator on `qubits` within an `n`-qubit register.
    pub fn generator(self, n: usize, qubits: &[usize]) -> Option<PauliString> {
        let axis = self.axis()?;
        let ops: Vec<(usize, Pauli)> = qubits.iter().map(|&q| (q, axis)).collect();
        PauliString::from_ops(n, &ops).ok()
    }
}

/// Native gate sets a search can draw its layers from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GateSet {
    /// `{Rx, Ry, Rz, Rxx, Ryy, Rzz, CZ}`
    Rxyz2xyz,
    /// `{Rx, Ry, Rz, CZ}`
    Rxyz,
    /// `{Rzz, Ry}`
    ZzRy,
}

impl GateSet {
    pub fn kinds(self) -> &'static [GateKind] {
        match self {
            GateSet::Rxyz2xyz => &GateKind::ALL,
            GateSet::Rxyz => &[GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::Cz],
            GateSet::ZzRy => &[GateKind::Rzz, GateKind::Ry],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateSet::Rxyz2xyz => "rxyz2xyz",
            GateSet::Rxyz => "rxyz",
            GateSet::ZzRy => "zz_ry",
        }
    }

    /// Kind of the initial transversal layer: `Ry` when available, otherwise
    /// the first single-qubit kind of the set.
    pub fn seed_kind(self) -> Option<GateKind> {
        let kinds = self.kinds();
        if kinds.contains(&GateKind::Ry) {
            return Some(GateKind::Ry);
        }
        kinds.iter().copied().find(|k| k.arity() == 1)
    }
}

impl core::str::FromStr for GateSet {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "rxyz2xyz" => Ok(GateSet::Rxyz2xyz),
            "rxyz" => Ok(GateSet::Rxyz),
            "zz_ry" => Ok(GateSet::ZzRy),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    /// Index into the circuit's parameter vector; `None` exactly for `Cz`.
    pub param: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layer {
    pub label: String,
    pub gates: Vec<Gate>,
}

/// A layer shape without parameter bindings. Appending it to a circuit
/// binds fresh parameter indices in gate order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayerTemplate {
    pub label: String,
    pub kind: GateKind,
    pub supports: Vec<Vec<usize>>,
}

impl LayerTemplate {
    pub fn new(label: impl Into<String>, kind: GateKind, supports: Vec<Vec<usize>>) -> Self {
        LayerTemplate { label: label.into(), kind, supports }
    }

    /// One `kind` gate on every qubit.
    pub fn transversal(label: impl Into<String>, kind: GateKind, n: usize) -> Self {
        LayerTemplate::new(label, kind, (0..n).map(|q| alloc::vec![q]).collect())
    }

    pub fn param_count(&self) -> usize {
        if self.kind.is_parameterized() {
            self.supports.len()
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GatePosition {
    pub layer: usize,
    pub index: usize,
}

/// Operation emitted by [`Circuit::clifford_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilizerOp {
    Rotation { generator: PauliString, k: u8 },
    Clifford { gate: CliffordGate, qubits: Vec<usize> },
}

impl StabilizerOp {
    pub fn apply(&self, t: &mut StabilizerTableau) -> Result<(), StabilizerError> {
        match self {
            StabilizerOp::Rotation { generator, k } => t.apply_pauli_rotation(generator, *k),
            StabilizerOp::Clifford { gate, qubits } => t.apply_clifford(*gate, qubits),
        }
    }
}

/// One integer in `0..4` per parameter; angle = value · π/2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteAssignment {
    values: Vec<u8>,
}

impl DiscreteAssignment {
    pub fn new(values: Vec<u8>) -> Result<Self, CircuitError> {
        if let Some(&v) = values.iter().find(|&&v| v >= 4) {
            return Err(CircuitError::AssignmentValue(v));
        }
        Ok(DiscreteAssignment { values })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn angles(&self) -> Vec<f64> {
        self.values.iter().map(|&v| f64::from(v) * core::f64::consts::FRAC_PI_2).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    n_qubits: usize,
    layers: Vec<Layer>,
    param_count: usize,
}

fn validate_gate(n: usize, kind: GateKind, qubits: &[usize]) -> Result<(), CircuitError> {
    if qubits.len() != kind.arity() {
        return Err(CircuitError::Arity { kind, expected: kind.arity(), got: qubits.len() });
    }
    for &q in qubits {
        if q >= n {
            return Err(CircuitError::QubitOutOfRange { qubit: q, n_qubits: n });
        }
    }
    if qubits.len() == 2 && qubits[0] == qubits[1] {
        return Err(CircuitError::DuplicateQubit(qubits[0]));
    }
    Ok(())
}

fn check_disjoint<'a>(
    n: usize,
    label: &str,
    supports: impl Iterator<Item = &'a [usize]>,
) -> Result<(), CircuitError> {
    let mut used = alloc::vec![false; n];
    for s in supports {
        for &q in s {
            if core::mem::replace(&mut used[q], true) {
                return Err(CircuitError::OverlappingSupports { label: label.into(), qubit: q });
            }
        }
    }
    Ok(())
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, layers: Vec::new(), param_count: 0 }
    }

    /// Validates an explicit layer list: arities, ranges, disjoint supports,
    /// one kind per layer, and parameter indices forming `0..M` exactly once.
    /// Empty layers are dropped.
    pub fn from_layers(n_qubits: usize, layers: Vec<Layer>) -> Result<Self, CircuitError> {
        if n_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        let mut params = Vec::new();
        for layer in &layers {
            if let Some(first) = layer.gates.first() {
                if layer.gates.iter().any(|g| g.kind != first.kind) {
                    return Err(CircuitError::MixedKinds { label: layer.label.clone() });
                }
            }
            for g in &layer.gates {
                validate_gate(n_qubits, g.kind, &g.qubits)?;
                match (g.kind.is_parameterized(), g.param) {
                    (true, Some(p)) => params.push(p),
                    (false, None) => {}
                    _ => return Err(CircuitError::ParameterBinding { kind: g.kind }),
                }
            }
            check_disjoint(n_qubits, &layer.label, layer.gates.iter().map(|g| g.qubits.as_slice()))?;
        }
        params.sort_unstable();
        if params.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(CircuitError::ParameterIndices { count: params.len() });
        }
        let layers = layers.into_iter().filter(|l| !l.gates.is_empty()).collect();
        Ok(Circuit { n_qubits, layers, param_count: params.len() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Number of tunable parameters `M`.
    pub fn param_count(&self) -> usize {
        self.param_count
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Every gate, `Cz` included.
    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(|l| l.gates.len()).sum()
    }

    /// Gates in circuit order with their positions.
    pub fn gates(&self) -> impl Iterator<Item = (GatePosition, &Gate)> {
        self.layers.iter().enumerate().flat_map(|(li, l)| {
            l.gates.iter().enumerate().map(move |(gi, g)| (GatePosition { layer: li, index: gi }, g))
        })
    }

    pub fn gate(&self, pos: GatePosition) -> Option<&Gate> {
        self.layers.get(pos.layer)?.gates.get(pos.index)
    }

    /// Labels of the layers in order.
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.layers.iter().map(|l| l.label.as_str())
    }

    /// `self + template` with fresh parameter indices `M, M+1, …`.
    pub fn append_layer(&self, template: &LayerTemplate) -> Result<Circuit, CircuitError> {
        for s in &template.supports {
            validate_gate(self.n_qubits, template.kind, s)?;
        }
        check_disjoint(self.n_qubits, &template.label, template.supports.iter().map(Vec::as_slice))?;
        let mut next = self.param_count;
        let gates = template
            .supports
            .iter()
            .map(|s| {
                let param = template.kind.is_parameterized().then(|| {
                    next += 1;
                    next - 1
                });
                Gate { kind: template.kind, qubits: s.clone(), param }
            })
            .collect::<Vec<_>>();
        let mut out = self.clone();
        if !gates.is_empty() {
            out.layers.push(Layer { label: template.label.clone(), gates });
        }
        out.param_count = next;
        Ok(out)
    }

    /// Removes one gate, compacts parameter indices preserving their order,
    /// and drops the layer if it becomes empty.
    pub fn remove_gate(&self, pos: GatePosition) -> Result<Circuit, CircuitError> {
        let gate = self
            .gate(pos)
            .ok_or(CircuitError::InvalidPosition { layer: pos.layer, index: pos.index })?;
        let removed = gate.param;
        if removed.is_some() && self.param_count == 1 {
            return Err(CircuitError::LastParameter);
        }
        let mut out = self.clone();
        out.layers[pos.layer].gates.remove(pos.index);
        if out.layers[pos.layer].gates.is_empty() {
            out.layers.remove(pos.layer);
        }
        if let Some(r) = removed {
            for g in out.layers.iter_mut().flat_map(|l| l.gates.iter_mut()) {
                if let Some(p) = g.param.as_mut() {
                    if *p > r {
                        *p -= 1;
                    }
                }
            }
            out.param_count -= 1;
        }
        Ok(out)
    }

    /// Maps each parameterized gate to a Pauli rotation with its assigned
    /// quarter-turn count and each `Cz` to the Clifford gate, in circuit order.
    pub fn clifford_instance(&self, a: &DiscreteAssignment) -> Result<Vec<StabilizerOp>, CircuitError> {
        if a.values().len() != self.param_count {
            return Err(CircuitError::AssignmentLength { expected: self.param_count, got: a.values().len() });
        }
        Ok(self
            .gates()
            .map(|(_, g)| match g.param {
                Some(p) => StabilizerOp::Rotation {
                    generator: g.kind.generator(self.n_qubits, &g.qubits).expect("validated gate"),
                    k: a.values()[p],
                },
                None => StabilizerOp::Clifford { gate: CliffordGate::Cz, qubits: g.qubits.clone() },
            })
            .collect())
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    //! JSON shape: `{"n_qubits": 2, "layers": [{"label": "rzz-1",
    //! "gates": [{"kind": "rzz", "qubits": [0, 1], "param": 3}]}]}`.

    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct GateRepr {
        kind: GateKind,
        qubits: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param: Option<usize>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct LayerRepr {
        label: String,
        gates: Vec<GateRepr>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct CircuitRepr {
        n_qubits: usize,
        layers: Vec<LayerRepr>,
    }

    impl Serialize for Circuit {
        fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            CircuitRepr {
                n_qubits: self.n_qubits,
                layers: self
                    .layers
                    .iter()
                    .map(|l| LayerRepr {
                        label: l.label.clone(),
                        gates: l
                            .gates
                            .iter()
                            .map(|g| GateRepr { kind: g.kind, qubits: g.qubits.clone(), param: g.param })
                            .collect(),
                    })
                    .collect(),
            }
            .serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Circuit {
        fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let repr = CircuitRepr::deserialize(d)?;
            let layers = repr
                .layers
                .into_iter()
                .map(|l| Layer {
                    label: l.label,
                    gates: l
                        .gates
                        .into_iter()
                        .map(|g| Gate { kind: g.kind, qubits: g.qubits, param: g.param })
                        .collect(),
                })
                .collect();
            Circuit::from_layers(repr.n_qubits, layers).map_err(serde::de::Error::custom)
        }
    }

    impl Serialize for LayerTemplate {
        fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            LayerRepr {
                label: self.label.clone(),
                gates: self
                    .supports
                    .iter()
                    .map(|q| GateRepr { kind: self.kind, qubits: q.clone(), param: None })
                    .collect(),
            }
            .serialize(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ry(n: usize) -> LayerTemplate {
        LayerTemplate::transversal("ry", GateKind::Ry, n)
    }

    #[test]
    fn append_counts_parameters() {
        let c = Circuit::new(2).append_layer(&ry(2)).unwrap();
        assert_eq!(c.param_count(), 2);
        let c = c.append_layer(&LayerTemplate::new("rzz-1", GateKind::Rzz, vec![vec![0, 1]])).unwrap();
        assert_eq!(c.param_count(), 3);
        let c2 = c.append_layer(&LayerTemplate::new("cz-1", GateKind::Cz, vec![vec![0, 1]])).unwrap();
        assert_eq!(c2.param_count(), 3);
        assert_eq!(c2.gate_count(), 4);
        // value semantics
        assert_eq!(c.depth(), 2);
    }

    #[test]
    fn append_rejects_overlap_and_range() {
        let bad = LayerTemplate::new("rxx", GateKind::Rxx, vec![vec![0, 1], vec![1, 2]]);
        assert!(matches!(
            Circuit::new(3).append_layer(&bad),
            Err(CircuitError::OverlappingSupports { qubit: 1, .. })
        ));
        let oob = LayerTemplate::new("rxx", GateKind::Rxx, vec![vec![0, 3]]);
        assert!(matches!(Circuit::new(3).append_layer(&oob), Err(CircuitError::QubitOutOfRange { .. })));
        let arity = LayerTemplate::new("rx", GateKind::Rx, vec![vec![0, 1]]);
        assert!(matches!(Circuit::new(3).append_layer(&arity), Err(CircuitError::Arity { .. })));
    }

    #[test]
    fn removing_only_cz_drops_layer() {
        let c = Circuit::new(2)
            .append_layer(&ry(2))
            .unwrap()
            .append_layer(&LayerTemplate::new("cz-1", GateKind::Cz, vec![vec![0, 1]]))
            .unwrap();
        let r = c.remove_gate(GatePosition { layer: 1, index: 0 }).unwrap();
        assert_eq!(r.depth(), 1);
        assert_eq!(r.param_count(), 2);
    }

    #[test]
    fn removal_compacts_indices() {
        let c = Circuit::new(3).append_layer(&ry(3)).unwrap();
        let r = c.remove_gate(GatePosition { layer: 0, index: 1 }).unwrap();
        assert_eq!(r.param_count(), 2);
        let params: Vec<_> = r.gates().map(|(_, g)| g.param.unwrap()).collect();
        assert_eq!(params, [0, 1]);
        assert_eq!(r.gates().map(|(_, g)| g.qubits[0]).collect::<Vec<_>>(), [0, 2]);
    }

    #[test]
    fn cannot_remove_last_parameter() {
        let c = Circuit::new(1).append_layer(&ry(1)).unwrap();
        assert_eq!(c.remove_gate(GatePosition { layer: 0, index: 0 }), Err(CircuitError::LastParameter));
        assert!(matches!(
            c.remove_gate(GatePosition { layer: 3, index: 0 }),
            Err(CircuitError::InvalidPosition { .. })
        ));
    }

    #[test]
    fn clifford_instance_maps_gates() {
        let c = Circuit::new(2)
            .append_layer(&LayerTemplate::new("ry", GateKind::Ry, vec![vec![0]]))
            .unwrap()
            .append_layer(&LayerTemplate::new("rzz-1", GateKind::Rzz, vec![vec![0, 1]]))
            .unwrap()
            .append_layer(&LayerTemplate::new("cz-1", GateKind::Cz, vec![vec![0, 1]]))
            .unwrap();
        let ops = c.clifford_instance(&DiscreteAssignment::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(
            ops,
            vec![
                StabilizerOp::Rotation { generator: PauliString::from_text("YI").unwrap(), k: 2 },
                StabilizerOp::Rotation { generator: PauliString::from_text("ZZ").unwrap(), k: 1 },
                StabilizerOp::Clifford { gate: CliffordGate::Cz, qubits: vec![0, 1] },
            ]
        );
        assert!(matches!(
            c.clifford_instance(&DiscreteAssignment::new(vec![0]).unwrap()),
            Err(CircuitError::AssignmentLength { .. })
        ));
        assert_eq!(DiscreteAssignment::new(vec![4]), Err(CircuitError::AssignmentValue(4)));
    }

    #[test]
    fn from_layers_validation() {
        let gate = |kind, qubits: Vec<usize>, param| Gate { kind, qubits, param };
        let ok = Circuit::from_layers(
            2,
            vec![Layer { label: "ry".into(), gates: vec![gate(GateKind::Ry, vec![0], Some(1)), gate(GateKind::Ry, vec![1], Some(0))] }],
        );
        assert_eq!(ok.unwrap().param_count(), 2);
        let gap = Circuit::from_layers(
            2,
            vec![Layer { label: "ry".into(), gates: vec![gate(GateKind::Ry, vec![0], Some(0)), gate(GateKind::Ry, vec![1], Some(2))] }],
        );
        assert_eq!(gap, Err(CircuitError::ParameterIndices { count: 2 }));
        let cz_param = Circuit::from_layers(
            2,
            vec![Layer { label: "cz".into(), gates: vec![gate(GateKind::Cz, vec![0, 1], Some(0))] }],
        );
        assert_eq!(cz_param, Err(CircuitError::ParameterBinding { kind: GateKind::Cz }));
        let mixed = Circuit::from_layers(
            2,
            vec![Layer { label: "m".into(), gates: vec![gate(GateKind::Rx, vec![0], Some(0)), gate(GateKind::Ry, vec![1], Some(1))] }],
        );
        assert!(matches!(mixed, Err(CircuitError::MixedKinds { .. })));
        assert_eq!(Circuit::new(3).gate_count(), 0);
    }

    #[test]
    fn gate_sets() {
        assert_eq!(GateSet::Rxyz2xyz.kinds().len(), 7);
        assert_eq!(GateSet::ZzRy.seed_kind(), Some(GateKind::Ry));
        assert_eq!("zz_ry".parse::<GateSet>(), Ok(GateSet::ZzRy));
        assert_eq!(GateKind::from_name("rzz"), Ok(GateKind::Rzz));
    }
}
