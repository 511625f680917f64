//! Closed-shell restricted Hartree–Fock in the model orbital space.

use nalgebra::DMatrix;
use serde::Serialize;

use super::eigen::sorted_eigen;
use crate::error::{Error, Result};
use crate::model::SpinOrbitalHamiltonian;

pub const SCF_MAX_ITERATIONS: usize = 200;
pub const SCF_DENSITY_TOL: f64 = 1e-10;
pub const SCF_COMMUTATOR_TOL: f64 = 1e-9;
pub const SCF_MIXING: f64 = 0.5;

#[derive(Debug, Clone, Serialize)]
pub struct ScfResult {
    /// Orbital coefficients, one column per orbital, ascending energy.
    #[serde(skip)]
    pub coefficients: DMatrix<f64>,
    pub orbital_energies: Vec<f64>,
    /// Total energy including the constant shift (eV).
    pub energy: f64,
    pub iterations: usize,
}

/// `F = h + Σ_rs P_rs [(pq|rs) − ½ (pr|sq)]`.
fn fock(h: &DMatrix<f64>, eri: &[f64], p: &DMatrix<f64>) -> DMatrix<f64> {
    let k = h.nrows();
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * k + b) * k + c) * k + d;
    DMatrix::from_fn(k, k, |i, j| {
        let mut g = 0.0;
        for r in 0..k {
            for s in 0..k {
                g += p[(r, s)] * (eri[idx(i, j, r, s)] - 0.5 * eri[idx(i, r, s, j)]);
            }
        }
        h[(i, j)] + g
    })
}

fn fix_column_phases(c: &mut DMatrix<f64>) {
    for mut col in c.column_iter_mut() {
        let max = col.amax();
        // first entry within rounding of the largest magnitude decides the sign
        let lead = col.iter().copied().find(|v| v.abs() >= max - 1e-12).unwrap_or(0.0);
        if lead < 0.0 {
            col.neg_mut();
        }
    }
}

fn density(c: &DMatrix<f64>, n_occ: usize) -> DMatrix<f64> {
    let occ = c.columns(0, n_occ);
    occ * occ.transpose() * 2.0
}

/// Restricted closed-shell SCF. Starts from the core-Hamiltonian guess and
/// switches on density mixing if the density change stops shrinking.
pub fn scf_rhf(ham: &SpinOrbitalHamiltonian, n_electrons: usize) -> Result<ScfResult> {
    let k = ham.n_orbitals();
    if !n_electrons.is_multiple_of(2) || n_electrons > 2 * k {
        return Err(Error::InvalidArgument(format!(
            "closed-shell SCF needs an even electron count ≤ {}, got {n_electrons}",
            2 * k
        )));
    }
    let n_occ = n_electrons / 2;
    let h = &ham.one_body;
    let eri = ham.two_body.to_dense();

    let (_, mut c) = sorted_eigen(h);
    let mut p = density(&c, n_occ);
    let mut mixing = 0.0;
    let mut last_change = f64::INFINITY;
    let mut residual = f64::INFINITY;

    for iteration in 1..=SCF_MAX_ITERATIONS {
        let f = fock(h, &eri, &p);
        let (_, vectors) = sorted_eigen(&f);
        c = vectors;
        let p_new = density(&c, n_occ);
        let change = (&p_new - &p).amax();
        if change > last_change && mixing == 0.0 {
            mixing = SCF_MIXING;
        }
        last_change = change;
        p = &p_new * (1.0 - mixing) + &p * mixing;

        let f = fock(h, &eri, &p);
        let commutator = (&f * &p - &p * &f).amax();
        residual = change.max(commutator);
        if change < SCF_DENSITY_TOL && commutator < SCF_COMMUTATOR_TOL {
            let (orbital_energies, mut c) = sorted_eigen(&f);
            fix_column_phases(&mut c);
            let energy = 0.5 * p.component_mul(&(h + &f)).sum() + ham.constant;
            return Ok(ScfResult {
                coefficients: c,
                orbital_energies,
                energy,
                iterations: iteration,
            });
        }
    }
    Err(Error::NotConverged {
        what: "SCF",
        iterations: SCF_MAX_ITERATIONS,
        residual,
    })
}
