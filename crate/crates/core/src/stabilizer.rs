//! Destabilizer/stabilizer tableau for pure stabilizer states.
//!
//! Besides the usual Clifford gates, the tableau accepts Pauli rotations
//! `exp(-iθP/2)` at `θ = kπ/2`, which are Clifford for every integer `k`.
//! This is what turns a parameterized circuit with a discrete angle
//! assignment into something the tableau can run.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits;
use crate::pauli::{PauliString, Phase};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilizerError {
    #[error("a tableau needs at least one qubit")]
    NoQubits,
    #[error("operator acts on {got} qubits, tableau has {expected}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("identity rotation generator only contributes a global phase")]
    IdentityGenerator,
    #[error("rotation generator must be phase-free")]
    PhasedGenerator,
    #[error("qubit {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("gate qubits must be distinct, got {0} twice")]
    DuplicateQubit(usize),
    #[error("{gate:?} takes {expected} qubits, got {got}")]
    Arity { gate: CliffordGate, expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H,
    S,
    /// Control first, target second.
    Cnot,
    Cz,
}

impl CliffordGate {
    pub fn arity(self) -> usize {
        match self {
            CliffordGate::H | CliffordGate::S => 1,
            CliffordGate::Cnot | CliffordGate::Cz => 2,
        }
    }
}

/// Rows `0..n` are destabilizers, rows `n..2n` stabilizers. Each row is a
/// Hermitian Pauli string, so its stored phase exponent is always 0 or 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Vec<u8>,
}

impl StabilizerTableau {
    /// Tableau of `|0…0⟩`: stabilizer `i` is `+Z_i`, destabilizer `i` is `X_i`.
    pub fn new_zero_state(n: usize) -> Result<Self, StabilizerError> {
        if n == 0 {
            return Err(StabilizerError::NoQubits);
        }
        let words = bits::words_for(n);
        let mut t = StabilizerTableau {
            n,
            words,
            x: vec![0; 2 * n * words],
            z: vec![0; 2 * n * words],
            phase: vec![0; 2 * n],
        };
        for i in 0..n {
            bits::set(&mut t.x[i * words..(i + 1) * words], i, true);
            bits::set(&mut t.z[(n + i) * words..(n + i + 1) * words], i, true);
        }
        Ok(t)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    fn row(&self, r: usize) -> PauliString {
        let span = r * self.words..(r + 1) * self.words;
        PauliString::from_raw(
            self.n,
            self.x[span.clone()].to_vec(),
            self.z[span].to_vec(),
            Phase::from_exponent(self.phase[r]),
        )
    }

    pub fn stabilizer(&self, i: usize) -> PauliString {
        self.row(self.n + i)
    }

    pub fn destabilizer(&self, i: usize) -> PauliString {
        self.row(i)
    }

    pub fn stabilizers(&self) -> Vec<PauliString> {
        (0..self.n).map(|i| self.stabilizer(i)).collect()
    }

    fn check_operator(&self, p: &PauliString) -> Result<(), StabilizerError> {
        if p.n_qubits() != self.n {
            return Err(StabilizerError::WidthMismatch { expected: self.n, got: p.n_qubits() });
        }
        Ok(())
    }

    /// Conjugates every row by `exp(-i (kπ/2) P / 2)`.
    ///
    /// Rows commuting with `P` are untouched. Anticommuting rows `Q` become
    /// `Q` (k=0), `-Q` (k=2), `-i·P·Q` (k=1) or `+i·P·Q` (k=3).
    pub fn apply_pauli_rotation(&mut self, generator: &PauliString, k: u8) -> Result<(), StabilizerError> {
        self.check_operator(generator)?;
        if generator.phase() != Phase::ONE {
            return Err(StabilizerError::PhasedGenerator);
        }
        if generator.is_identity() {
            return Err(StabilizerError::IdentityGenerator);
        }
        self.rotate_unchecked(generator.x_words(), generator.z_words(), k);
        Ok(())
    }

    /// [`Self::apply_pauli_rotation`] without validation; `px`/`pz` must
    /// have this tableau's word count.
    pub(crate) fn rotate_unchecked(&mut self, px: &[u64], pz: &[u64], k: u8) {
        let k = k & 3;
        if k == 0 {
            return;
        }
        let w = self.words;
        for r in 0..2 * self.n {
            let rx = &mut self.x[r * w..(r + 1) * w];
            let rz = &mut self.z[r * w..(r + 1) * w];
            if !bits::anticommute(px, pz, rx, rz) {
                continue;
            }
            match k {
                2 => self.phase[r] ^= 2,
                _ => {
                    let e = bits::product_exponent(px, pz, rx, rz);
                    // -i = i³ for k = 1, +i for k = 3
                    let pre = if k == 1 { 3 } else { 1 };
                    self.phase[r] = (self.phase[r] + pre + e) & 3;
                    for i in 0..w {
                        rx[i] ^= px[i];
                        rz[i] ^= pz[i];
                    }
                    debug_assert!(self.phase[r] & 1 == 0);
                }
            }
        }
    }

    pub fn apply_clifford(&mut self, gate: CliffordGate, qubits: &[usize]) -> Result<(), StabilizerError> {
        if qubits.len() != gate.arity() {
            return Err(StabilizerError::Arity { gate, expected: gate.arity(), got: qubits.len() });
        }
        for &q in qubits {
            if q >= self.n {
                return Err(StabilizerError::QubitOutOfRange { qubit: q, n_qubits: self.n });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(StabilizerError::DuplicateQubit(qubits[0]));
        }
        match gate {
            CliffordGate::H => self.h(qubits[0]),
            CliffordGate::S => self.s(qubits[0]),
            CliffordGate::Cnot => self.cnot(qubits[0], qubits[1]),
            CliffordGate::Cz => self.cz(qubits[0], qubits[1]),
        }
        Ok(())
    }

    #[inline]
    fn bit(&self, words: &[u64], r: usize, q: usize) -> bool {
        bits::get(&words[r * self.words..], q)
    }

    fn h(&mut self, a: usize) {
        let w = self.words;
        for r in 0..2 * self.n {
            let (xa, za) = (self.bit(&self.x, r, a), self.bit(&self.z, r, a));
            if xa && za {
                self.phase[r] ^= 2;
            }
            bits::set(&mut self.x[r * w..], a, za);
            bits::set(&mut self.z[r * w..], a, xa);
        }
    }

    fn s(&mut self, a: usize) {
        let w = self.words;
        for r in 0..2 * self.n {
            let (xa, za) = (self.bit(&self.x, r, a), self.bit(&self.z, r, a));
            if xa && za {
                self.phase[r] ^= 2;
            }
            bits::set(&mut self.z[r * w..], a, za ^ xa);
        }
    }

    fn cnot(&mut self, a: usize, b: usize) {
        let w = self.words;
        for r in 0..2 * self.n {
            let (xa, za) = (self.bit(&self.x, r, a), self.bit(&self.z, r, a));
            let (xb, zb) = (self.bit(&self.x, r, b), self.bit(&self.z, r, b));
            if xa && zb && !(xb ^ za) {
                self.phase[r] ^= 2;
            }
            bits::set(&mut self.x[r * w..], b, xb ^ xa);
            bits::set(&mut self.z[r * w..], a, za ^ zb);
        }
    }

    fn cz(&mut self, a: usize, b: usize) {
        let w = self.words;
        for r in 0..2 * self.n {
            let (xa, za) = (self.bit(&self.x, r, a), self.bit(&self.z, r, a));
            let (xb, zb) = (self.bit(&self.x, r, b), self.bit(&self.z, r, b));
            if xa && xb && (za ^ zb) {
                self.phase[r] ^= 2;
            }
            bits::set(&mut self.z[r * w..], a, za ^ xb);
            bits::set(&mut self.z[r * w..], b, zb ^ xa);
        }
    }

    /// `⟨ψ|p|ψ⟩ ∈ {-1, 0, +1}` for a phase-free Pauli string `p`.
    pub fn expectation(&self, p: &PauliString) -> Result<i8, StabilizerError> {
        self.check_operator(p)?;
        if p.phase() != Phase::ONE {
            return Err(StabilizerError::PhasedGenerator);
        }
        Ok(self.expectation_unchecked(p.x_words(), p.z_words()))
    }

    pub(crate) fn expectation_unchecked(&self, px: &[u64], pz: &[u64]) -> i8 {
        let (n, w) = (self.n, self.words);
        for i in 0..n {
            let r = n + i;
            if bits::anticommute(px, pz, &self.x[r * w..(r + 1) * w], &self.z[r * w..(r + 1) * w]) {
                return 0;
            }
        }
        // p = ± Π S_i over the i whose destabilizer anticommutes with p.
        let mut ax = vec![0u64; w];
        let mut az = vec![0u64; w];
        let mut phase = 0u8;
        for i in 0..n {
            if !bits::anticommute(px, pz, &self.x[i * w..(i + 1) * w], &self.z[i * w..(i + 1) * w]) {
                continue;
            }
            let r = n + i;
            let (sx, sz) = (&self.x[r * w..(r + 1) * w], &self.z[r * w..(r + 1) * w]);
            phase = (phase + self.phase[r] + bits::product_exponent(&ax, &az, sx, sz)) & 3;
            for j in 0..w {
                ax[j] ^= sx[j];
                az[j] ^= sz[j];
            }
        }
        debug_assert!(ax == px && az == pz);
        match phase {
            0 => 1,
            2 => -1,
            _ => unreachable!("product of commuting Hermitian stabilizers is Hermitian"),
        }
    }

    /// Checks the symplectic structure: stabilizers commute pairwise,
    /// destabilizer `i` anticommutes only with stabilizer `i`, and every row
    /// carries a real sign.
    pub fn is_consistent(&self) -> bool {
        let rows: Vec<PauliString> = (0..2 * self.n).map(|r| self.row(r)).collect();
        let (destab, stab) = rows.split_at(self.n);
        for i in 0..self.n {
            if !stab[i].phase().is_real() || !destab[i].phase().is_real() {
                return false;
            }
            for j in 0..self.n {
                if !stab[i].commutes(&stab[j]).unwrap() {
                    return false;
                }
                let anti = !destab[i].commutes(&stab[j]).unwrap();
                if anti != (i == j) {
                    return false;
                }
            }
        }
        true
    }
}
