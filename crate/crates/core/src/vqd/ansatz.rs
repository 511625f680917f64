//! Particle-conserving A-gate brick-wall ansatz.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use super::statevector::Statevector;
use crate::error::{Error, Result};
use crate::model::{SpinOrdering, ALPHA, BETA};

/// Two-qubit A gate in the basis `|00⟩, |01⟩, |10⟩, |11⟩` (first digit is
/// the lower qubit). Identity on `|00⟩` and `|11⟩`; on `|01⟩, |10⟩` it is
/// `[[cos θ, e^{iφ} sin θ], [e^{−iφ} sin θ, −cos θ]]`.
pub fn a_gate(theta: f64, phi: f64) -> Matrix4<Complex64> {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        one, zero, zero, zero,
        zero, c.into(), e * s, zero,
        zero, e.conj() * s, (-c).into(), zero,
        zero, zero, zero, one,
    );
    m
}

/// Brick-wall circuit of A gates on nearest-neighbour qubit pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnsatzCircuit {
    pub n_qubits: usize,
    pub n_orbitals: usize,
    pub ordering: SpinOrdering,
    /// Initial computational basis state.
    pub initial: u64,
    pub layers: usize,
    /// Lower qubit of each gate, in application order; the gate acts on
    /// `(q, q + 1)`.
    pub gates: Vec<usize>,
}

impl AnsatzCircuit {
    /// Two angles `(θ, φ)` per gate, laid out gate by gate.
    pub fn n_parameters(&self) -> usize {
        2 * self.gates.len()
    }

    pub fn initial_state(&self) -> Statevector {
        Statevector::basis_state(self.n_qubits, self.initial)
    }
}

/// `layers` alternating sublayers of gates on pairs `(0,1), (2,3), …` and
/// `(1,2), (3,4), …`, starting from the closed-shell reference string.
pub fn build_ansatz(
    n_orbitals: usize,
    n_electrons: usize,
    layers: usize,
    ordering: SpinOrdering,
) -> Result<AnsatzCircuit> {
    if layers == 0 {
        return Err(Error::InvalidArgument("ansatz needs at least one layer".into()));
    }
    if n_orbitals == 0 || n_electrons > 2 * n_orbitals {
        return Err(Error::InvalidArgument(format!(
            "{n_electrons} electrons do not fit in {n_orbitals} orbitals"
        )));
    }
    let n_qubits = 2 * n_orbitals;
    let n_beta = n_electrons / 2;
    let n_alpha = n_electrons - n_beta;
    let mut initial = 0u64;
    for i in 0..n_alpha {
        initial |= 1 << ordering.mode(i, ALPHA, n_orbitals);
    }
    for i in 0..n_beta {
        initial |= 1 << ordering.mode(i, BETA, n_orbitals);
    }
    let gates = (0..layers).flat_map(|l| (l % 2..n_qubits - 1).step_by(2)).collect();
    Ok(AnsatzCircuit {
        n_qubits,
        n_orbitals,
        ordering,
        initial,
        layers,
        gates,
    })
}

/// Applies `A(θ, φ)` on qubits `(q, q + 1)` in place.
pub(crate) fn apply_gate(amps: &mut [Complex64], q: usize, theta: f64, phi: f64) {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    apply_block(amps, q, [c.into(), e * s, e.conj() * s, (-c).into()]);
}

/// Applies a 2×2 block `[[m0, m1], [m2, m3]]` on `(|01⟩, |10⟩)` of qubits
/// `(q, q + 1)`, leaving `|00⟩` and `|11⟩` untouched.
#[inline]
fn apply_block(amps: &mut [Complex64], q: usize, m: [Complex64; 4]) {
    let lo = 1usize << q;
    let hi = 1usize << (q + 1);
    for b in 0..amps.len() {
        // visit each pair once, from its |01⟩ member (lower qubit 0, upper 1)
        if b & lo == 0 && b & hi != 0 {
            let i01 = b;
            let i10 = b ^ lo ^ hi;
            let (a, d) = (amps[i01], amps[i10]);
            amps[i01] = m[0] * a + m[1] * d;
            amps[i10] = m[2] * a + m[3] * d;
        }
    }
}

/// `∂A/∂θ` and `∂A/∂φ` applied to `amps`, returning new vectors.
pub(crate) fn gate_derivatives(amps: &[Complex64], q: usize, theta: f64, phi: f64) -> [Vec<Complex64>; 2] {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    let lo = 1usize << q;
    let hi = 1usize << (q + 1);
    let blocks = [
        [(-s).into(), e * c, e.conj() * c, s.into()],
        [zero, i * e * s, -i * e.conj() * s, zero],
    ];
    blocks.map(|m| {
        let mut out = vec![zero; amps.len()];
        for b in 0..amps.len() {
            if b & lo == 0 && b & hi != 0 {
                let i10 = b ^ lo ^ hi;
                let (a, d) = (amps[b], amps[i10]);
                out[b] = m[0] * a + m[1] * d;
                out[i10] = m[2] * a + m[3] * d;
            }
        }
        out
    })
}

/// Exact output state for the given parameters.
pub fn apply_circuit(circuit: &AnsatzCircuit, params: &[f64]) -> Result<Statevector> {
    if params.len() != circuit.n_parameters() {
        return Err(Error::DimensionMismatch {
            expected: circuit.n_parameters(),
            got: params.len(),
        });
    }
    let mut sv = circuit.initial_state();
    for (g, &q) in circuit.gates.iter().enumerate() {
        apply_gate(sv.amplitudes_mut(), q, params[2 * g], params[2 * g + 1]);
    }
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn a_gate_is_unitary_and_hermitian() {
        for (t, p) in [(0.0, 0.0), (0.3, 1.1), (-2.0, 0.7), (1.5, -3.0)] {
            let a = a_gate(t, p);
            let id = Matrix4::<Complex64>::identity();
            assert!((a.adjoint() * a - id).norm() < 1e-12);
            assert!((a.adjoint() - a).norm() < 1e-15);
        }
        let a = a_gate(0.0, 0.0);
        assert_eq!(a[(1, 1)], c(1.0));
        assert_eq!(a[(2, 2)], c(-1.0));
    }

    #[test]
    fn pi_over_four_mixes_evenly() {
        // |01⟩: lower qubit empty, upper occupied → bit pattern 0b10
        let mut amps = vec![c(0.0); 4];
        amps[0b10] = c(1.0);
        apply_gate(&mut amps, 0, std::f64::consts::FRAC_PI_4, 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((amps[0b10] - c(h)).norm() < 1e-15);
        assert!((amps[0b01] - c(h)).norm() < 1e-15);
        // in-place update agrees with the 4×4 matrix
        let m = a_gate(0.4, 0.9);
        let mut amps = vec![c(0.1), c(0.2), Complex64::new(0.3, 0.4), c(-0.5)];
        let v = nalgebra::Vector4::new(amps[0b00], amps[0b10], amps[0b01], amps[0b11]);
        apply_gate(&mut amps, 0, 0.4, 0.9);
        let w = m * v;
        for (k, b) in [0b00, 0b10, 0b01, 0b11].into_iter().enumerate() {
            assert!((w[k] - amps[b]).norm() < 1e-15);
        }
    }

    #[test]
    fn brick_wall_placement() {
        let a = build_ansatz(2, 2, 2, SpinOrdering::Interleaved).unwrap();
        assert_eq!(a.gates, vec![0, 2, 1]);
        assert_eq!(a.n_parameters(), 6);
        let a = build_ansatz(1, 1, 1, SpinOrdering::Interleaved).unwrap();
        assert_eq!(a.gates, vec![0]);
        let a = build_ansatz(4, 4, 8, SpinOrdering::Blocked).unwrap();
        assert_eq!(a.gates.len(), 28);
        assert_eq!(a.initial, 0b0011_0011);
        assert!(build_ansatz(2, 2, 0, SpinOrdering::Interleaved).is_err());
    }

    #[test]
    fn circuit_conserves_particles() {
        let a = build_ansatz(3, 4, 5, SpinOrdering::Interleaved).unwrap();
        let params: Vec<f64> = (0..a.n_parameters()).map(|i| (i as f64 * 0.77).sin() * 2.0).collect();
        let sv = apply_circuit(&a, &params).unwrap();
        assert!((sv.norm() - 1.0).abs() < 1e-12);
        assert_eq!(sv.particle_numbers(1e-30), vec![4]);
        assert!(apply_circuit(&a, &params[1..]).is_err());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let mut base = vec![c(0.0); 8];
        for (i, a) in base.iter_mut().enumerate() {
            *a = Complex64::new(0.1 * i as f64, 0.05 * (i as f64).cos());
        }
        let (t, p, h) = (0.7, -0.4, 1e-6);
        let [dt, dp] = gate_derivatives(&base, 1, t, p);
        let fd = |dtheta: f64, dphi: f64| {
            let mut plus = base.clone();
            apply_gate(&mut plus, 1, t + dtheta, p + dphi);
            let mut minus = base.clone();
            apply_gate(&mut minus, 1, t - dtheta, p - dphi);
            plus.iter()
                .zip(&minus)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect::<Vec<_>>()
        };
        // untouched |00⟩/|11⟩ components have zero derivative
        for (x, y) in dt.iter().zip(fd(h, 0.0)) {
            assert!((x - y).norm() < 1e-8);
        }
        for (x, y) in dp.iter().zip(fd(0.0, h)) {
            assert!((x - y).norm() < 1e-8);
        }
    }
}
