use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::statevector::{DenseCircuit, DenseHamiltonian, DenseOp};
use super::VqeError;
use crate::circuit::Circuit;
use crate::pauli::Hamiltonian;

/// Parameter-shift gradient `∂L/∂θ_i = [L(θ_i + π/2) - L(θ_i - π/2)] / 2`,
/// exact for gates of the form `exp(-iθP/2)`.
pub fn gradient(c: &Circuit, params: &[f64], h: &Hamiltonian) -> Result<Vec<f64>, VqeError> {
    let dc = DenseCircuit::new(c)?;
    let dh = DenseHamiltonian::new(h)?;
    check_pair(&dc, &dh)?;
    parameter_shift(&dc, &dh, params)
}

pub(crate) fn check_pair(dc: &DenseCircuit, dh: &DenseHamiltonian) -> Result<(), VqeError> {
    if dc.n_qubits != dh.n_qubits {
        return Err(VqeError::DimensionMismatch { expected: 1 << dh.n_qubits, got: 1 << dc.n_qubits });
    }
    Ok(())
}

pub(crate) fn parameter_shift(dc: &DenseCircuit, dh: &DenseHamiltonian, params: &[f64]) -> Result<Vec<f64>, VqeError> {
    dc.run(params)?;
    let mut shifted = params.to_vec();
    let mut grad = vec![0.0; params.len()];
    for i in 0..params.len() {
        shifted[i] = params[i] + FRAC_PI_2;
        let plus = dh.energy(&dc.run(&shifted)?);
        shifted[i] = params[i] - FRAC_PI_2;
        let minus = dh.energy(&dc.run(&shifted)?);
        shifted[i] = params[i];
        grad[i] = 0.5 * (plus - minus);
    }
    Ok(grad)
}

/// Energy and gradient in one forward and one backward sweep.
///
/// Produces the same derivative as [`gradient`] (both are exact), at the cost
/// of three circuit passes instead of `2M + 1`.
pub(crate) fn energy_and_gradient(
    dc: &DenseCircuit,
    dh: &DenseHamiltonian,
    params: &[f64],
    grad: &mut [f64],
) -> Result<f64, VqeError> {
    let mut psi = dc.run(params)?;
    let mut lambda = vec![Complex64::new(0.0, 0.0); psi.len()];
    dh.apply(&psi, &mut lambda);
    let energy: f64 = lambda.iter().zip(&psi).map(|(l, p)| (p.conj() * l).re).sum();
    grad.iter_mut().for_each(|g| *g = 0.0);
    for op in dc.ops.iter().rev() {
        if let DenseOp::Rotation { pauli, param } = *op {
            // dL/dθ = 2 Re⟨λ|(-i/2)P|ψ⟩ = Im⟨λ|P|ψ⟩ with ψ the state after the gate.
            grad[param] = pauli.matrix_element(&lambda, &psi).im;
        }
        DenseCircuit::apply_op(op, params, &mut psi, true);
        DenseCircuit::apply_op(op, params, &mut lambda, true);
    }
    Ok(energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{GateKind, LayerTemplate};
    use crate::pauli::PauliString;

    #[test]
    fn single_ry_on_minus_z() {
        let c = Circuit::new(1).append_layer(&LayerTemplate::transversal("ry", GateKind::Ry, 1)).unwrap();
        let h = Hamiltonian::new(1, [(-1.0, PauliString::from_text("Z").unwrap())]).unwrap();
        assert!(gradient(&c, &[0.0], &h).unwrap()[0].abs() < 1e-14);
        // L = -cos θ → dL/dθ = sin θ
        let g = gradient(&c, &[FRAC_PI_2], &h).unwrap()[0];
        assert!((g - 1.0).abs() < 1e-14);
    }

    #[test]
    fn adjoint_matches_parameter_shift() {
        let c = Circuit::new(3)
            .append_layer(&LayerTemplate::transversal("ry", GateKind::Ry, 3))
            .unwrap()
            .append_layer(&LayerTemplate::new("cz", GateKind::Cz, vec![vec![0, 1]]))
            .unwrap()
            .append_layer(&LayerTemplate::new("ryy", GateKind::Ryy, vec![vec![1, 2]]))
            .unwrap()
            .append_layer(&LayerTemplate::transversal("rx", GateKind::Rx, 3))
            .unwrap();
        let h = Hamiltonian::new(
            3,
            [(0.3, "XYZ"), (-1.1, "ZZI"), (0.7, "IYX")].map(|(c, s)| (c, PauliString::from_text(s).unwrap())),
        )
        .unwrap();
        let params: Vec<f64> = (0..c.param_count()).map(|i| 0.37 * i as f64 + 0.1).collect();
        let dc = DenseCircuit::new(&c).unwrap();
        let dh = DenseHamiltonian::new(&h).unwrap();
        let ps = parameter_shift(&dc, &dh, &params).unwrap();
        let mut adj = vec![0.0; params.len()];
        let e = energy_and_gradient(&dc, &dh, &params, &mut adj).unwrap();
        assert!((e - dh.energy(&dc.run(&params).unwrap())).abs() < 1e-12);
        for (a, b) in adj.iter().zip(&ps) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
}
