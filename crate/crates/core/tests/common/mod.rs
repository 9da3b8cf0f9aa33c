//! Dense-matrix oracle built from literal 2×2 matrices and Kronecker
//! products. Shares no code with the library's simulators.

#![allow(dead_code)]

use lfqas_core::circuit::{Circuit, GateKind, GateSet, LayerTemplate};
use lfqas_core::pauli::{Hamiltonian, Pauli, PauliString};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Mat = DMatrix<Complex64>;
pub type Vector = DVector<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single(p: Pauli) -> Mat {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let v = match p {
        Pauli::I => [one, z, z, one],
        Pauli::X => [z, one, one, z],
        Pauli::Y => [z, c(0.0, -1.0), c(0.0, 1.0), z],
        Pauli::Z => [one, z, z, -one],
    };
    DMatrix::from_row_slice(2, 2, &v)
}

pub fn hadamard() -> Mat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

pub fn phase_gate() -> Mat {
    DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)])
}

fn projector(bit: usize) -> Mat {
    let mut m = Mat::zeros(2, 2);
    m[(bit, bit)] = c(1.0, 0.0);
    m
}

/// Tensor product with `factors[q]` on qubit `q` and identity elsewhere.
/// Qubit 0 is the least significant bit of the basis index, so it is the
/// rightmost Kronecker factor.
pub fn embed(n: usize, factors: &[(usize, Mat)]) -> Mat {
    let mut out = Mat::identity(1, 1);
    for q in (0..n).rev() {
        let f = factors.iter().find(|(k, _)| *k == q).map(|(_, m)| m.clone()).unwrap_or_else(|| Mat::identity(2, 2));
        out = out.kronecker(&f);
    }
    out
}

pub fn pauli_matrix(p: &PauliString) -> Mat {
    let n = p.n_qubits();
    let factors: Vec<(usize, Mat)> = (0..n).map(|q| (q, single(p.get(q)))).collect();
    let phase = match p.phase().exponent() {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    };
    embed(n, &factors) * phase
}

pub fn cnot(n: usize, control: usize, target: usize) -> Mat {
    embed(n, &[(control, projector(0))]) + embed(n, &[(control, projector(1)), (target, single(Pauli::X))])
}

pub fn cz(n: usize, a: usize, b: usize) -> Mat {
    embed(n, &[(a, projector(0))]) + embed(n, &[(a, projector(1)), (b, single(Pauli::Z))])
}

/// `exp(-iθP/2) = cos(θ/2) I - i sin(θ/2) P` for a Hermitian Pauli `P`.
pub fn rotation(p: &PauliString, theta: f64) -> Mat {
    let dim = 1 << p.n_qubits();
    Mat::identity(dim, dim) * c((theta / 2.0).cos(), 0.0) + pauli_matrix(p) * c(0.0, -(theta / 2.0).sin())
}

pub fn zero_state(n: usize) -> Vector {
    let mut v = Vector::zeros(1 << n);
    v[0] = c(1.0, 0.0);
    v
}

pub fn expectation(psi: &Vector, m: &Mat) -> Complex64 {
    psi.dotc(&(m * psi))
}

pub fn hamiltonian_matrix(h: &Hamiltonian) -> Mat {
    let dim = 1 << h.n_qubits();
    h.terms().iter().fold(Mat::zeros(dim, dim), |acc, t| acc + pauli_matrix(&t.pauli) * c(t.coeff, 0.0))
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigenvalues(m: &Mat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// The circuit's unitary applied to `|0…0⟩`, gate by gate.
pub fn run_circuit(c: &Circuit, params: &[f64]) -> Vector {
    let n = c.n_qubits();
    let mut psi = zero_state(n);
    for (_, g) in c.gates() {
        let u = match g.param {
            Some(p) => rotation(&g.kind.generator(n, &g.qubits).unwrap(), params[p]),
            None => cz(n, g.qubits[0], g.qubits[1]),
        };
        psi = u * psi;
    }
    psi
}

pub fn random_pauli(n: usize, r: &mut impl Rng) -> PauliString {
    let s: String = (0..n).map(|_| ['I', 'X', 'Y', 'Z'][r.random_range(0..4)]).collect();
    PauliString::from_text(&s).unwrap()
}

pub fn random_nonidentity_pauli(n: usize, r: &mut impl Rng) -> PauliString {
    loop {
        let p = random_pauli(n, r);
        if !p.is_identity() {
            return p;
        }
    }
}

/// Random circuit of `depth` layers drawn from `set`, each layer on a
/// random subset of qubits with random disjoint pairs.
pub fn random_circuit(n: usize, depth: usize, set: GateSet, r: &mut impl Rng) -> Circuit {
    let mut c = Circuit::new(n);
    for i in 0..depth {
        let kinds: Vec<GateKind> = set.kinds().iter().copied().filter(|k| n >= 2 || k.arity() == 1).collect();
        let kind = kinds[r.random_range(0..kinds.len())];
        let mut qubits: Vec<usize> = (0..n).collect();
        qubits.shuffle(r);
        let supports: Vec<Vec<usize>> = if kind.arity() == 1 {
            qubits.into_iter().filter(|_| r.random_bool(0.7)).map(|q| vec![q]).collect()
        } else {
            qubits.chunks_exact(2).filter(|_| r.random_bool(0.8)).map(|p| p.to_vec()).collect()
        };
        c = c.append_layer(&LayerTemplate::new(format!("l{i}"), kind, supports)).unwrap();
    }
    c
}

/// Like [`random_circuit`] but guaranteed to have at least one parameter.
pub fn random_parameterized_circuit(n: usize, depth: usize, set: GateSet, r: &mut impl Rng) -> Circuit {
    loop {
        let c = random_circuit(n, depth, set, r);
        if c.param_count() > 0 {
            return c;
        }
    }
}
