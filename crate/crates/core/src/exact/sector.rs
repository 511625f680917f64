//! Fixed-(N_α, N_β) determinant bases and operator matrices restricted to them.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fermion::FermionOperator;
use crate::model::{SpinOrbitalHamiltonian, SpinOrdering, ALPHA, BETA};
use crate::qubit::PauliSum;

/// Determinants with fixed α and β electron counts, in ascending bitmask
/// order (mode 0 is the least significant bit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorBasis {
    pub n_orbitals: usize,
    pub n_alpha: usize,
    pub n_beta: usize,
    pub ordering: SpinOrdering,
    pub determinants: Vec<u64>,
}

impl SectorBasis {
    pub fn new(n_orbitals: usize, n_alpha: usize, n_beta: usize, ordering: SpinOrdering) -> Result<Self> {
        if n_alpha > n_orbitals || n_beta > n_orbitals {
            return Err(Error::InvalidArgument(format!(
                "sector ({n_alpha}, {n_beta}) does not fit in {n_orbitals} orbitals"
            )));
        }
        if 2 * n_orbitals > 32 {
            return Err(Error::InvalidArgument(format!(
                "{n_orbitals} orbitals exceed the enumerable range"
            )));
        }
        let alpha = ordering.spin_mask(ALPHA, n_orbitals);
        let beta = ordering.spin_mask(BETA, n_orbitals);
        let determinants = (0u64..1 << (2 * n_orbitals))
            .filter(|d| (d & alpha).count_ones() as usize == n_alpha && (d & beta).count_ones() as usize == n_beta)
            .collect();
        Ok(SectorBasis {
            n_orbitals,
            n_alpha,
            n_beta,
            ordering,
            determinants,
        })
    }

    pub fn len(&self) -> usize {
        self.determinants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.determinants.is_empty()
    }

    pub fn n_modes(&self) -> usize {
        2 * self.n_orbitals
    }

    /// Position of `det` in the basis, if it belongs to the sector.
    pub fn index_of(&self, det: u64) -> Option<usize> {
        self.determinants.binary_search(&det).ok()
    }

    /// Closed-shell reference with the lowest `n_electrons / 2` orbitals doubly occupied.
    pub fn closed_shell_reference(&self) -> u64 {
        debug_assert_eq!(self.n_alpha, self.n_beta);
        (0..self.n_alpha).fold(0u64, |d, i| {
            d | 1 << self.ordering.mode(i, ALPHA, self.n_orbitals) | 1 << self.ordering.mode(i, BETA, self.n_orbitals)
        })
    }
}

/// Interleaved-order sector basis.
pub fn sector_basis(n_orbitals: usize, n_alpha: usize, n_beta: usize) -> Result<SectorBasis> {
    SectorBasis::new(n_orbitals, n_alpha, n_beta, SpinOrdering::Interleaved)
}

/// Occupation string with mode 0 on the left, e.g. `1100`.
pub fn occupation_string(det: u64, n_modes: usize) -> String {
    (0..n_modes)
        .map(|q| if det >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Matrix of a sector-preserving operator. Amplitudes leaving the sector
/// are dropped, so `op` must conserve `N_α` and `N_β`.
pub fn build_sector_operator(op: &FermionOperator, basis: &SectorBasis) -> DMatrix<f64> {
    let n = basis.len();
    let columns: Vec<Vec<(usize, f64)>> = basis
        .determinants
        .par_iter()
        .map(|&det| {
            op.apply(det)
                .into_iter()
                .filter_map(|(d, v)| basis.index_of(d).map(|i| (i, v)))
                .collect()
        })
        .collect();
    let mut m = DMatrix::zeros(n, n);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col {
            m[(i, j)] += v;
        }
    }
    m
}

/// Hamiltonian matrix in the sector, built from the fermionic operator.
pub fn build_sector_matrix(ham: &SpinOrbitalHamiltonian, basis: &SectorBasis) -> DMatrix<f64> {
    build_sector_operator(&ham.fermion_operator(basis.ordering), basis)
}

/// Restriction of a qubit operator to the sector, plus the largest
/// magnitude of any amplitude it sends outside the sector.
pub fn pauli_sector_matrix(psum: &PauliSum, basis: &SectorBasis) -> (DMatrix<f64>, f64) {
    let n = basis.len();
    let mut m = DMatrix::zeros(n, n);
    let mut leak: f64 = 0.0;
    for (j, &det) in basis.determinants.iter().enumerate() {
        for (d, amp) in psum.column(det) {
            match basis.index_of(d) {
                Some(i) => {
                    m[(i, j)] += amp.re;
                    leak = leak.max(amp.im.abs());
                }
                None => leak = leak.max(amp.norm()),
            }
        }
    }
    (m, leak)
}

/// Largest `|M_ij − M_ji|`.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..i {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}
