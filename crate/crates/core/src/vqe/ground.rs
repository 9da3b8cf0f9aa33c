//! Lowest eigenvalue by restarted Lanczos with full reorthogonalization.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use super::statevector::DenseHamiltonian;
use super::VqeError;
use crate::math;
use crate::pauli::Hamiltonian;
use crate::rng;

/// Residual `‖Hx - E₀x‖` the returned eigenpair must satisfy.
pub const GROUND_RESIDUAL_TOL: f64 = 1e-9;

const KRYLOV_DIM: usize = 120;
const MAX_RESTARTS: usize = 50;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    math::sqrt(a.iter().map(|x| x.norm_sqr()).sum())
}

fn scale(a: &mut [Complex64], s: f64) {
    a.iter_mut().for_each(|x| *x *= s);
}

/// Minimum eigenvalue of `h`.
pub fn exact_ground_energy(h: &Hamiltonian) -> Result<f64, VqeError> {
    let dh = DenseHamiltonian::new(h)?;
    let dim = 1usize << h.n_qubits();
    let mut r = rng::stream(0x006c_616e_637a_6f73, 0);
    let mut start: Vec<Complex64> = (0..dim).map(|_| Complex64::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)).collect();
    let n0 = norm(&start);
    scale(&mut start, 1.0 / n0);

    let mut best = (f64::INFINITY, f64::INFINITY);
    for _ in 0..MAX_RESTARTS {
        let (theta, x) = lanczos_pass(&dh, &start, KRYLOV_DIM.min(dim));
        let mut hx = vec![Complex64::new(0.0, 0.0); dim];
        dh.apply(&x, &mut hx);
        let residual = norm(&hx.iter().zip(&x).map(|(a, b)| a - b * theta).collect::<Vec<_>>());
        if residual < best.1 {
            best = (theta, residual);
        }
        if residual < GROUND_RESIDUAL_TOL {
            return Ok(theta);
        }
        start = x;
    }
    Err(VqeError::NotConverged { residual: best.1 })
}

/// One Krylov sweep from `v0`; returns the lowest Ritz pair.
fn lanczos_pass(dh: &DenseHamiltonian, v0: &[Complex64], m: usize) -> (f64, Vec<Complex64>) {
    let dim = v0.len();
    let mut basis: Vec<Vec<Complex64>> = vec![v0.to_vec()];
    let mut alpha = Vec::with_capacity(m);
    let mut beta: Vec<f64> = Vec::with_capacity(m);
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    loop {
        let v = basis.last().unwrap();
        dh.apply(v, &mut w);
        alpha.push(dot(v, &w).re);
        // Two rounds of classical Gram-Schmidt against the whole basis.
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let bnorm = norm(&w);
        if basis.len() == m || bnorm < 1e-12 {
            break;
        }
        beta.push(bnorm);
        let mut next = w.clone();
        scale(&mut next, 1.0 / bnorm);
        basis.push(next);
    }

    let k = alpha.len();
    let mut t = vec![0.0; k * k];
    for i in 0..k {
        t[i * k + i] = alpha[i];
        if i + 1 < k {
            t[i * k + i + 1] = beta[i];
            t[(i + 1) * k + i] = beta[i];
        }
    }
    let (evals, evecs) = symmetric_eigen(&mut t, k);
    let (imin, &theta) = evals.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let mut x = vec![Complex64::new(0.0, 0.0); dim];
    for (j, b) in basis.iter().enumerate() {
        let s = evecs[j * k + imin];
        x.iter_mut().zip(b).for_each(|(a, y)| *a += y * s);
    }
    let nx = norm(&x);
    scale(&mut x, 1.0 / nx);
    (theta, x)
}

/// Cyclic Jacobi eigensolver for a dense symmetric `k × k` matrix (row-major).
/// Returns eigenvalues and the eigenvector matrix with vectors as columns.
pub(crate) fn symmetric_eigen(a: &mut [f64], k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; k * k];
    for i in 0..k {
        v[i * k + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i * k + j] * a[i * k + j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                let apq = a[p * k + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * k + q] - a[p * k + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + math::sqrt(theta * theta + 1.0));
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                for r in 0..k {
                    let (arp, arq) = (a[r * k + p], a[r * k + q]);
                    a[r * k + p] = c * arp - s * arq;
                    a[r * k + q] = s * arp + c * arq;
                }
                for r in 0..k {
                    let (apr, aqr) = (a[p * k + r], a[q * k + r]);
                    a[p * k + r] = c * apr - s * aqr;
                    a[q * k + r] = s * apr + c * aqr;
                }
                for r in 0..k {
                    let (vrp, vrq) = (v[r * k + p], v[r * k + q]);
                    v[r * k + p] = c * vrp - s * vrq;
                    v[r * k + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    ((0..k).map(|i| a[i * k + i]).collect(), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;

    #[test]
    fn jacobi_two_by_two() {
        let mut a = vec![2.0, 1.0, 1.0, 2.0];
        let (mut e, _) = symmetric_eigen(&mut a, 2);
        e.sort_by(f64::total_cmp);
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn ising_two_qubits() {
        let h = Hamiltonian::new(2, [(-1.0, "ZZ"), (-1.0, "XI"), (-1.0, "IX")].map(|(c, s)| (c, PauliString::from_text(s).unwrap()))).unwrap();
        let e = exact_ground_energy(&h).unwrap();
        assert!((e + math::sqrt(5.0)).abs() < 1e-10, "{e}");
    }

    #[test]
    fn one_local_field() {
        let h = Hamiltonian::new(3, ["ZII", "IZI", "IIZ"].map(|s| (-1.0, PauliString::from_text(s).unwrap()))).unwrap();
        assert!((exact_ground_energy(&h).unwrap() + 3.0).abs() < 1e-10);
        let one = Hamiltonian::new(1, [(-1.0, PauliString::from_text("Z").unwrap())]).unwrap();
        assert!((exact_ground_energy(&one).unwrap() + 1.0).abs() < 1e-10);
    }

    #[test]
    fn width_guard() {
        let h = Hamiltonian::new(13, [(1.0, PauliString::identity(13))]).unwrap();
        assert!(matches!(exact_ground_energy(&h), Err(VqeError::TooWide { .. })));
    }
}
