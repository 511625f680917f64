//! Exact diagonalization in fixed particle-number sectors, the closed-shell
//! SCF rotation and CI-coefficient characterization of the low-lying states.

mod character;
mod eigen;
mod scf;
mod sector;

use nalgebra::DMatrix;

pub use character::{
    characterize, excitation_energies, CharacterTable, Coefficient, ExcitationEnergies, StateCharacter, StateLabel,
    DISPLAY_CUTOFF, LABEL_MIN_COEFFICIENT, SINGLET_S2_THRESHOLD,
};
pub use eigen::{diagonalize, EigenReport};
pub use scf::{scf_rhf, ScfResult, SCF_COMMUTATOR_TOL, SCF_DENSITY_TOL, SCF_MAX_ITERATIONS, SCF_MIXING};
pub use sector::{
    asymmetry, build_sector_matrix, build_sector_operator, occupation_string, pauli_sector_matrix, sector_basis,
    SectorBasis,
};

use crate::error::{Error, Result};
use crate::fermion::s_squared_operator;
use crate::model::{rotate_basis, SpinOrbitalHamiltonian, SpinOrdering};

/// `⟨ψ_i|S²|ψ_i⟩` for every state of `report`.
pub fn s_squared_expectations(report: &EigenReport, basis: &SectorBasis) -> Vec<f64> {
    let s2 = build_sector_operator(&s_squared_operator(basis.n_orbitals, basis.ordering), basis);
    let s2_states = &s2 * &report.states;
    (0..report.len())
        .map(|i| report.states.column(i).dot(&s2_states.column(i)))
        .collect()
}

/// Full analysis of the `S_z = 0` sector of a closed-shell molecule.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub scf: ScfResult,
    /// Hamiltonian in the SCF orbital basis.
    pub hamiltonian: SpinOrbitalHamiltonian,
    pub basis: SectorBasis,
    /// Every eigenpair of the sector, ascending.
    pub report: EigenReport,
    pub table: CharacterTable,
}

impl Spectrum {
    pub fn excitation_energies(&self) -> Result<ExcitationEnergies> {
        excitation_energies(&self.table)
    }
}

/// SCF rotation, full sector diagonalization and characterization in the
/// interleaved spin ordering.
pub fn solve_spectrum(ham: &SpinOrbitalHamiltonian, n_electrons: usize) -> Result<Spectrum> {
    let scf = scf_rhf(ham, n_electrons)?;
    let rotated = rotate_basis(ham, &scf.coefficients)?;
    let half = n_electrons / 2;
    let basis = SectorBasis::new(ham.n_orbitals(), half, half, SpinOrdering::Interleaved)?;
    let matrix = build_sector_matrix(&rotated, &basis);
    let report = diagonalize(&matrix, basis.len())?;
    let s2 = s_squared_expectations(&report, &basis);
    let table = characterize(&report, &basis, &s2)?;
    Ok(Spectrum {
        scf,
        hamiltonian: rotated,
        basis,
        report,
        table,
    })
}

/// Lowest sector eigenvalue, used as the reference ground energy.
pub fn ground_energy(ham: &SpinOrbitalHamiltonian, n_alpha: usize, n_beta: usize) -> Result<f64> {
    let basis = SectorBasis::new(ham.n_orbitals(), n_alpha, n_beta, SpinOrdering::Interleaved)?;
    Ok(diagonalize(&build_sector_matrix(ham, &basis), 1)?.energies[0])
}

/// Eigenvalues of every `(N_α, N_β)` sector, merged and sorted: the full
/// Fock-space spectrum without building the `4^K` matrix.
pub fn full_spectrum(ham: &SpinOrbitalHamiltonian, ordering: SpinOrdering) -> Result<Vec<f64>> {
    let k = ham.n_orbitals();
    let mut all = Vec::with_capacity(1 << (2 * k));
    for na in 0..=k {
        for nb in 0..=k {
            let basis = SectorBasis::new(k, na, nb, ordering)?;
            all.extend(diagonalize(&build_sector_matrix(ham, &basis), basis.len())?.energies);
        }
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Lowest `n` singlet energies of the `S_z = 0` sector for `n_electrons`.
pub fn singlet_energies(ham: &SpinOrbitalHamiltonian, n_electrons: usize, n: usize) -> Result<Vec<f64>> {
    let half = n_electrons / 2;
    let basis = SectorBasis::new(ham.n_orbitals(), half, n_electrons - half, SpinOrdering::Interleaved)?;
    let report = diagonalize(&build_sector_matrix(ham, &basis), basis.len())?;
    let s2 = s_squared_expectations(&report, &basis);
    let singlets: Vec<f64> = report
        .energies
        .iter()
        .zip(&s2)
        .filter(|(_, &s)| s < SINGLET_S2_THRESHOLD)
        .map(|(&e, _)| e)
        .take(n)
        .collect();
    if singlets.len() < n {
        return Err(Error::InvalidArgument(format!(
            "sector holds only {} singlets, {n} requested",
            singlets.len()
        )));
    }
    Ok(singlets)
}

/// Dense matrix of an operator over all `2^n` determinants.
pub fn occupation_basis_matrix(op: &crate::fermion::FermionOperator) -> DMatrix<f64> {
    let dim = 1usize << op.n_modes;
    let mut m = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        for (i, v) in op.apply(j as u64) {
            m[(i as usize, j)] += v;
        }
    }
    m
}
