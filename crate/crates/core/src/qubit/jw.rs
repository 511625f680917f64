//! Jordan–Wigner mapping: `a_p = Z_0 ⋯ Z_{p−1} (X_p + iY_p)/2`.

use std::collections::HashMap;

use num_complex::Complex64;

use super::pauli::{PauliString, PauliSum, I_POW};
use crate::fermion::{FermionOperator, Ladder};
use crate::model::{SpinOrbitalHamiltonian, SpinOrdering};

/// Imaginary residue tolerated when collapsing to real coefficients (eV).
const IMAG_TOL: f64 = 1e-9;

type Poly = Vec<(PauliString, Complex64)>;

fn ladder_poly(op: Ladder, n: usize) -> Poly {
    let bit = 1u64 << op.mode;
    let zs = bit - 1;
    let half = Complex64::new(0.5, 0.0);
    // X_p with the Z string below, and Y_p with the same string
    let x = PauliString::new(n, bit, zs);
    let y = PauliString::new(n, bit, zs | bit);
    let y_coef = if op.dagger {
        Complex64::new(0.0, -0.5)
    } else {
        Complex64::new(0.0, 0.5)
    };
    vec![(x, half), (y, y_coef)]
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut acc: HashMap<PauliString, Complex64> = HashMap::with_capacity(a.len() * b.len());
    for (pa, ca) in a {
        for (pb, cb) in b {
            let (k, p) = pa.mul(pb);
            *acc.entry(p).or_default() += ca * cb * I_POW[k as usize];
        }
    }
    acc.into_iter().filter(|(_, c)| c.norm() > 0.0).collect()
}

/// Maps a real fermionic operator to a Pauli sum. Panics if the image is not
/// Hermitian-real to within a small tolerance.
pub fn jordan_wigner_operator(op: &FermionOperator) -> PauliSum {
    let n = op.n_modes;
    let mut acc: HashMap<PauliString, Complex64> = HashMap::new();
    for (coef, ladders) in &op.terms {
        let mut poly: Poly = vec![(PauliString::identity(n), Complex64::new(*coef, 0.0))];
        for l in ladders {
            poly = poly_mul(&poly, &ladder_poly(*l, n));
        }
        for (p, c) in poly {
            *acc.entry(p).or_default() += c;
        }
    }
    let mut entries: Vec<_> = acc.into_iter().collect();
    entries.sort_by_key(|a| a.0);
    let mut sum = PauliSum::new(n);
    for (p, c) in entries {
        assert!(
            c.im.abs() < IMAG_TOL,
            "non-Hermitian image: {p} has imaginary coefficient {}",
            c.im
        );
        sum.add_term(p, c.re);
    }
    sum
}

/// Jordan–Wigner image of the Hamiltonian in interleaved ordering.
pub fn jordan_wigner(ham: &SpinOrbitalHamiltonian) -> PauliSum {
    jordan_wigner_with(ham, SpinOrdering::Interleaved)
}

pub fn jordan_wigner_with(ham: &SpinOrbitalHamiltonian, ordering: SpinOrdering) -> PauliSum {
    jordan_wigner_operator(&ham.fermion_operator(ordering))
}
