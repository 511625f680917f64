//! Statevectors over computational basis states and sparse operator action.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::PauliSum;

/// Amplitudes over `2^n` basis states; qubit 0 is the least significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// The computational basis state `|det⟩`.
    pub fn basis_state(n_qubits: usize, det: u64) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[det as usize] = Complex64::new(1.0, 0.0);
        Statevector { n_qubits, amplitudes }
    }

    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_qubits,
                got: amplitudes.len(),
            });
        }
        Ok(Statevector { n_qubits, amplitudes })
    }

    /// Embeds real sector coefficients into the full space.
    pub fn from_sector(n_qubits: usize, determinants: &[u64], coefficients: &[f64]) -> Self {
        let mut sv = Statevector::basis_state(n_qubits, 0);
        sv.amplitudes[0] = Complex64::new(0.0, 0.0);
        for (&d, &c) in determinants.iter().zip(coefficients) {
            sv.amplitudes[d as usize] = Complex64::new(c, 0.0);
        }
        sv
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Distinct popcounts of basis states with weight above `tol`.
    pub fn particle_numbers(&self, tol: f64) -> Vec<u32> {
        let mut n: Vec<u32> = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > tol)
            .map(|(b, _)| b.count_ones())
            .collect();
        n.sort_unstable();
        n.dedup();
        n
    }
}

/// `⟨sv|H|sv⟩` (eV).
pub fn expectation(psum: &PauliSum, sv: &Statevector) -> Result<f64> {
    if psum.n_qubits() != sv.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: psum.n_qubits(),
            got: sv.n_qubits(),
        });
    }
    Ok(psum.expectation(sv.amplitudes()))
}

/// Row-compressed matrix of a Hermitian Pauli sum, for repeated application.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    row_start: Vec<usize>,
    columns: Vec<u32>,
    values: Vec<Complex64>,
}

impl SparseOperator {
    pub fn from_pauli_sum(psum: &PauliSum) -> Self {
        let dim = 1usize << psum.n_qubits();
        let mut row_start = Vec::with_capacity(dim + 1);
        let mut columns = Vec::new();
        let mut values = Vec::new();
        row_start.push(0);
        for i in 0..dim {
            // Hermitian: row i is the conjugate of column i
            for (j, v) in psum.column(i as u64) {
                if v.norm() > 0.0 {
                    columns.push(j as u32);
                    values.push(v.conj());
                }
            }
            row_start.push(columns.len());
        }
        SparseOperator {
            row_start,
            columns,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.row_start.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim())
            .map(|i| {
                (self.row_start[i]..self.row_start[i + 1])
                    .map(|k| self.values[k] * x[self.columns[k] as usize])
                    .sum()
            })
            .collect()
    }

    pub fn expectation(&self, x: &[Complex64]) -> f64 {
        let y = self.apply(x);
        x.iter().zip(&y).map(|(a, b)| (a.conj() * b).re).sum()
    }
}
