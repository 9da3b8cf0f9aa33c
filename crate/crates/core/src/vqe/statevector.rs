//! Dense statevector simulation. Qubit `q` is bit `q` of the basis index.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::VqeError;
use crate::circuit::{Circuit, GateKind};
use crate::math;
use crate::pauli::Hamiltonian;

/// Largest register the dense backend accepts.
pub const MAX_DENSE_QUBITS: usize = 12;

pub type State = Vec<Complex64>;

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// A Pauli string as bit masks over basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct DensePauli {
    pub x: usize,
    pub z: usize,
    /// Number of `Y` factors.
    pub ny: u32,
}

impl DensePauli {
    fn from_words(x: &[u64], z: &[u64]) -> Self {
        let (x, z) = (x[0] as usize, z[0] as usize);
        DensePauli { x, z, ny: (x & z).count_ones() }
    }

    #[inline]
    fn sign(&self, b: usize) -> f64 {
        if (b & self.z).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// `out += coeff · P ψ`.
    pub fn accumulate(&self, coeff: f64, psi: &[Complex64], out: &mut [Complex64]) {
        let f = I_POWERS[(self.ny & 3) as usize] * coeff;
        for (b, amp) in psi.iter().enumerate() {
            out[b ^ self.x] += f * self.sign(b) * amp;
        }
    }

    /// `⟨φ|P|ψ⟩`.
    pub fn matrix_element(&self, phi: &[Complex64], psi: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, amp) in psi.iter().enumerate() {
            acc += phi[b ^ self.x].conj() * amp * self.sign(b);
        }
        acc * I_POWERS[(self.ny & 3) as usize]
    }

    /// `ψ ← exp(-iθP/2) ψ`.
    pub fn rotate(&self, theta: f64, psi: &mut [Complex64]) {
        let (c, s) = (math::cos(theta / 2.0), math::sin(theta / 2.0));
        if self.x == 0 {
            let plus = Complex64::new(c, -s);
            let minus = Complex64::new(c, s);
            for (b, amp) in psi.iter_mut().enumerate() {
                *amp *= if self.sign(b) > 0.0 { plus } else { minus };
            }
            return;
        }
        // -i · i^ny · s
        let f = I_POWERS[((self.ny + 3) & 3) as usize] * s;
        let top = 1usize << (usize::BITS - 1 - self.x.leading_zeros());
        for b in 0..psi.len() {
            if b & top != 0 {
                continue;
            }
            let a = b ^ self.x;
            let (pb, pa) = (psi[b], psi[a]);
            psi[b] = pb * c + f * self.sign(a) * pa;
            psi[a] = pa * c + f * self.sign(b) * pb;
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum DenseOp {
    Rotation { pauli: DensePauli, param: usize },
    Cz { mask: usize },
}

/// A circuit lowered to bit masks for repeated dense simulation.
#[derive(Debug, Clone)]
pub(crate) struct DenseCircuit {
    pub n_qubits: usize,
    pub n_params: usize,
    pub ops: Vec<DenseOp>,
}

impl DenseCircuit {
    pub fn new(c: &Circuit) -> Result<Self, VqeError> {
        check_width(c.n_qubits())?;
        let ops = c
            .gates()
            .map(|(_, g)| match g.param {
                Some(param) => {
                    let p = g.kind.generator(c.n_qubits(), &g.qubits).expect("validated gate");
                    DenseOp::Rotation { pauli: DensePauli::from_words(p.x_words(), p.z_words()), param }
                }
                None => {
                    debug_assert_eq!(g.kind, GateKind::Cz);
                    DenseOp::Cz { mask: (1 << g.qubits[0]) | (1 << g.qubits[1]) }
                }
            })
            .collect();
        Ok(DenseCircuit { n_qubits: c.n_qubits(), n_params: c.param_count(), ops })
    }

    pub fn zero_state(&self) -> State {
        let mut s = vec![Complex64::new(0.0, 0.0); 1 << self.n_qubits];
        s[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn apply_op(op: &DenseOp, params: &[f64], psi: &mut [Complex64], inverse: bool) {
        match *op {
            DenseOp::Rotation { pauli, param } => {
                let t = params[param];
                pauli.rotate(if inverse { -t } else { t }, psi);
            }
            DenseOp::Cz { mask } => {
                for (b, amp) in psi.iter_mut().enumerate() {
                    if b & mask == mask {
                        *amp = -*amp;
                    }
                }
            }
        }
    }

    pub fn run(&self, params: &[f64]) -> Result<State, VqeError> {
        if params.len() != self.n_params {
            return Err(VqeError::ParamLength { expected: self.n_params, got: params.len() });
        }
        let mut psi = self.zero_state();
        for op in &self.ops {
            Self::apply_op(op, params, &mut psi, false);
        }
        Ok(psi)
    }
}

/// A Hamiltonian lowered to dense masks.
#[derive(Debug, Clone)]
pub(crate) struct DenseHamiltonian {
    pub n_qubits: usize,
    pub terms: Vec<(f64, DensePauli)>,
}

impl DenseHamiltonian {
    pub fn new(h: &Hamiltonian) -> Result<Self, VqeError> {
        check_width(h.n_qubits())?;
        let terms = h
            .terms()
            .iter()
            .map(|t| (t.coeff, DensePauli::from_words(t.pauli.x_words(), t.pauli.z_words())))
            .collect();
        Ok(DenseHamiltonian { n_qubits: h.n_qubits(), terms })
    }

    pub fn apply(&self, psi: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        for (c, p) in &self.terms {
            p.accumulate(*c, psi, out);
        }
    }

    pub fn energy(&self, psi: &[Complex64]) -> f64 {
        self.terms.iter().map(|(c, p)| c * p.matrix_element(psi, psi).re).sum()
    }
}

pub(crate) fn check_width(n: usize) -> Result<(), VqeError> {
    if n > MAX_DENSE_QUBITS {
        return Err(VqeError::TooWide { n_qubits: n, max: MAX_DENSE_QUBITS });
    }
    Ok(())
}

/// `|ψ(θ)⟩ = U(θ)|0…0⟩` with each rotation gate applied as `exp(-iθP/2)`.
pub fn simulate(c: &Circuit, params: &[f64]) -> Result<State, VqeError> {
    DenseCircuit::new(c)?.run(params)
}

/// `⟨ψ|H|ψ⟩`. The imaginary residue is discarded.
pub fn energy(state: &[Complex64], h: &Hamiltonian) -> Result<f64, VqeError> {
    let dh = DenseHamiltonian::new(h)?;
    if state.len() != 1 << h.n_qubits() {
        return Err(VqeError::DimensionMismatch { expected: 1 << h.n_qubits(), got: state.len() });
    }
    Ok(dh.energy(state))
}

/// `⟨ψ|P|ψ⟩` of a single Pauli string.
pub fn pauli_expectation(state: &[Complex64], p: &crate::pauli::PauliString) -> Result<f64, VqeError> {
    check_width(p.n_qubits())?;
    if state.len() != 1 << p.n_qubits() {
        return Err(VqeError::DimensionMismatch { expected: 1 << p.n_qubits(), got: state.len() });
    }
    let dp = DensePauli::from_words(p.x_words(), p.z_words());
    let phase = p.phase().sign().unwrap_or(0.0);
    Ok(phase * dp.matrix_element(state, state).re)
}
