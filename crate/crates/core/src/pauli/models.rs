//! Benchmark Hamiltonians on open 1D chains.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Hamiltonian, Pauli, PauliError, PauliString, Phase, COEFF_DROP_THRESHOLD};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum HamiltonianKind {
    /// `-X₀Z₁ - Σ Z_{j-1} X_j Z_{j+1} - Z_{n-2} X_{n-1}`
    Cluster,
    /// `-Σ (X_jX_{j+1} + Y_jY_{j+1} + Z_jZ_{j+1}) - Σ Z_j`
    Heisenberg,
    /// `-Σ Z_jZ_{j+1} - Σ X_j`
    Ising,
    /// `V† (-Σ Z_j) V` for a random reversed brickwall `V`.
    Scrambled,
}

impl HamiltonianKind {
    pub fn name(self) -> &'static str {
        match self {
            HamiltonianKind::Cluster => "cluster",
            HamiltonianKind::Heisenberg => "heisenberg",
            HamiltonianKind::Ising => "ising",
            HamiltonianKind::Scrambled => "scrambled",
        }
    }
}

impl core::str::FromStr for HamiltonianKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "cluster" => Ok(HamiltonianKind::Cluster),
            "heisenberg" => Ok(HamiltonianKind::Heisenberg),
            "ising" => Ok(HamiltonianKind::Ising),
            "scrambled" => Ok(HamiltonianKind::Scrambled),
            _ => Err(()),
        }
    }
}

/// Builds one of the benchmark Hamiltonians on `n` qubits.
///
/// `seed` and `depth` are required for [`HamiltonianKind::Scrambled`] and
/// rejected for every other kind.
pub fn build_hamiltonian(
    kind: HamiltonianKind,
    n: usize,
    seed: Option<u64>,
    depth: Option<usize>,
) -> Result<Hamiltonian, PauliError> {
    if n < 2 {
        return Err(PauliError::TooFewQubits(n));
    }
    if kind != HamiltonianKind::Scrambled && (seed.is_some() || depth.is_some()) {
        return Err(PauliError::UnexpectedScrambleParameters);
    }
    let ops = |ops: &[(usize, Pauli)]| PauliString::from_ops(n, ops);
    let mut terms: Vec<(f64, PauliString)> = Vec::new();
    match kind {
        HamiltonianKind::Cluster => {
            terms.push((-1.0, ops(&[(0, Pauli::X), (1, Pauli::Z)])?));
            for j in 1..n - 1 {
                terms.push((-1.0, ops(&[(j - 1, Pauli::Z), (j, Pauli::X), (j + 1, Pauli::Z)])?));
            }
            terms.push((-1.0, ops(&[(n - 2, Pauli::Z), (n - 1, Pauli::X)])?));
        }
        HamiltonianKind::Heisenberg => {
            for j in 0..n - 1 {
                for op in [Pauli::X, Pauli::Y, Pauli::Z] {
                    terms.push((-1.0, ops(&[(j, op), (j + 1, op)])?));
                }
            }
            for j in 0..n {
                terms.push((-1.0, ops(&[(j, Pauli::Z)])?));
            }
        }
        HamiltonianKind::Ising => {
            for j in 0..n - 1 {
                terms.push((-1.0, ops(&[(j, Pauli::Z), (j + 1, Pauli::Z)])?));
            }
            for j in 0..n {
                terms.push((-1.0, ops(&[(j, Pauli::X)])?));
            }
        }
        HamiltonianKind::Scrambled => {
            let seed = seed.ok_or(PauliError::MissingSeed)?;
            let depth = depth.ok_or(PauliError::MissingDepth)?;
            return Ok(scrambled(n, seed, depth));
        }
    }
    Hamiltonian::new(n, terms)
}

/// One Pauli rotation `exp(-iθP/2)` of the scrambling circuit.
struct Rotation {
    generator: PauliString,
    angle: f64,
}

/// Gate content of one two-qubit scrambling block, in circuit order:
/// Z and Y rotations on both qubits, XX/YY/ZZ couplings, Z and Y rotations.
fn block(n: usize, a: usize, b: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Rotation>) {
    let mut push = |ops: &[(usize, Pauli)], rng: &mut ChaCha8Rng| {
        let generator = PauliString::from_ops(n, ops).expect("block qubits in range");
        out.push(Rotation { generator, angle: rng.random::<f64>() * TAU });
    };
    for q in [a, b] {
        push(&[(q, Pauli::Z)], rng);
        push(&[(q, Pauli::Y)], rng);
    }
    for op in [Pauli::X, Pauli::Y, Pauli::Z] {
        push(&[(a, op), (b, op)], rng);
    }
    for q in [a, b] {
        push(&[(q, Pauli::Z)], rng);
        push(&[(q, Pauli::Y)], rng);
    }
}

/// Reversed brickwall in circuit order: each depth unit applies the odd-bond
/// layer `(1,2), (3,4), …` and then the even-bond layer `(0,1), (2,3), …`.
fn reversed_brickwall(n: usize, seed: u64, depth: usize) -> Vec<Rotation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rotations = Vec::new();
    for _ in 0..depth {
        for start in [1, 0] {
            for a in (start..n.saturating_sub(1)).step_by(2) {
                block(n, a, a + 1, &mut rng, &mut rotations);
            }
        }
    }
    rotations
}

fn scrambled(n: usize, seed: u64, depth: usize) -> Hamiltonian {
    let mut current: BTreeMap<PauliString, f64> = BTreeMap::new();
    for j in 0..n {
        let z = PauliString::from_ops(n, &[(j, Pauli::Z)]).expect("in range");
        current.insert(z, -1.0);
    }
    // V† H V = R₁† ⋯ R_K† H R_K ⋯ R₁: conjugate by the last rotation first.
    for rot in reversed_brickwall(n, seed, depth).iter().rev() {
        current = conjugate(current, rot);
    }
    Hamiltonian::from_merged(n, current)
}

/// `R† Q R` for `R = exp(-iθP/2)`: `Q` when `[P, Q] = 0`, otherwise
/// `cos θ · Q + i sin θ · P Q`.
fn conjugate(terms: BTreeMap<PauliString, f64>, rot: &Rotation) -> BTreeMap<PauliString, f64> {
    let (s, c) = (math::sin(rot.angle), math::cos(rot.angle));
    let mut out: BTreeMap<PauliString, f64> = BTreeMap::new();
    for (q, coeff) in terms {
        if q.commutes(&rot.generator).expect("same width") {
            *out.entry(q).or_insert(0.0) += coeff;
            continue;
        }
        let pq = rot.generator.multiply(&q).expect("same width");
        // i · i^e is real because P and Q anticommute.
        let sign = (Phase::I * pq.phase()).sign().expect("anticommuting product is imaginary");
        *out.entry(q).or_insert(0.0) += c * coeff;
        *out.entry(pq.phase_free()).or_insert(0.0) += sign * s * coeff;
    }
    out.retain(|_, v| v.abs() >= COEFF_DROP_THRESHOLD);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn listing(h: &Hamiltonian) -> Vec<(f64, String)> {
        h.terms().iter().map(|t| (t.coeff, t.pauli.symbols())).collect()
    }

    #[test]
    fn cluster_three() {
        let h = build_hamiltonian(HamiltonianKind::Cluster, 3, None, None).unwrap();
        let mut got = listing(&h);
        got.sort_by(|a, b| a.1.cmp(&b.1));
        let want: Vec<(f64, String)> =
            [(-1.0, "XZI"), (-1.0, "ZXZ"), (-1.0, "IZX")].iter().map(|(c, s)| (*c, String::from(*s))).collect();
        let mut want = want;
        want.sort_by(|a, b| a.1.cmp(&b.1));
        assert_eq!(got, want);
        assert_eq!(h.l1_norm(), 3.0);
    }

    #[test]
    fn ising_three() {
        let h = build_hamiltonian(HamiltonianKind::Ising, 3, None, None).unwrap();
        let mut got: Vec<String> = h.terms().iter().map(|t| t.pauli.symbols()).collect();
        got.sort();
        assert_eq!(got, ["IIX", "IXI", "IZZ", "XII", "ZZI"]);
        assert!(h.terms().iter().all(|t| t.coeff == -1.0));
        assert_eq!(h.l1_norm(), 5.0);
    }

    #[test]
    fn heisenberg_counts() {
        let h = build_hamiltonian(HamiltonianKind::Heisenberg, 6, None, None).unwrap();
        assert_eq!(h.len(), 3 * 5 + 6);
        assert_eq!(h.l1_norm(), 21.0);
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(
            build_hamiltonian(HamiltonianKind::Ising, 1, None, None),
            Err(PauliError::TooFewQubits(1))
        );
        assert_eq!(
            build_hamiltonian(HamiltonianKind::Scrambled, 6, None, Some(1)),
            Err(PauliError::MissingSeed)
        );
        assert_eq!(
            build_hamiltonian(HamiltonianKind::Scrambled, 6, Some(3), None),
            Err(PauliError::MissingDepth)
        );
        assert_eq!(
            build_hamiltonian(HamiltonianKind::Cluster, 6, Some(3), None),
            Err(PauliError::UnexpectedScrambleParameters)
        );
    }

    #[test]
    fn scrambled_term_count_in_range() {
        for seed in 0..5 {
            let h = build_hamiltonian(HamiltonianKind::Scrambled, 6, Some(seed), Some(1)).unwrap();
            assert!((300..=800).contains(&h.len()), "seed {seed}: {} terms", h.len());
        }
    }

    #[test]
    fn scrambled_is_deterministic() {
        let a = build_hamiltonian(HamiltonianKind::Scrambled, 5, Some(9), Some(1)).unwrap();
        let b = build_hamiltonian(HamiltonianKind::Scrambled, 5, Some(9), Some(1)).unwrap();
        let c = build_hamiltonian(HamiltonianKind::Scrambled, 5, Some(10), Some(1)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn scrambling_preserves_the_frobenius_norm() {
        // Tr(H²)/2ⁿ = Σλ² is unitarily invariant; H_Z has Σλ² = n.
        let h = build_hamiltonian(HamiltonianKind::Scrambled, 6, Some(1), Some(2)).unwrap();
        let sq: f64 = h.terms().iter().map(|t| t.coeff * t.coeff).sum();
        assert!((sq - 6.0).abs() < 1e-9, "{sq}");
    }
}
